"""Language-preserving rewrites of rank-one presentations.

All rewrites return a new ``RankOneSpec`` whose stage rule is computed
from the original one, so the result is exact at every stage, not only on
a window.  Where a hypothesis quantifies over all large n it is checked
eagerly on a finite window and again lazily whenever a later row is built.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .complexity import language_sample
from .construction import DEFAULT_CAP, RankOneSpec, SpacerRow
from .errors import NormalizationError, PreconditionError
from .words import Word


def compose_rows(rows: Sequence[SpacerRow]) -> SpacerRow:
    """One row equivalent to applying ``rows[0]``, then ``rows[1]``, ...

    The spacer at mixed-radix index i_0 + i_1 (r_0+1) + ... is
    s_{0,i_0}, plus s_{1,i_1} if i_0 = r_0, plus s_{2,i_2} if also
    i_1 = r_1, and so on.
    """
    if not rows:
        raise ValueError("nothing to compose")
    acc = list(rows[0].s)
    for row in rows[1:]:
        # every copy of the accumulated block ends with its own last spacer,
        # which absorbs the next stage's spacer for that copy
        merged = []
        for s in row.s:
            merged.extend(acc[:-1])
            merged.append(acc[-1] + s)
        acc = merged
    return SpacerRow(acc)


@dataclass(frozen=True)
class MergeSchedule:
    """Stages n_1 = 1 < n_2 < ... < n_T; after n_T the schedule continues
    one stage at a time (n_{T+k} = n_T + k).

    ``horizon`` is the number of merged stages the schedule was built to
    certify, when it came from a search.
    """

    points: tuple
    horizon: Optional[int] = None

    def __post_init__(self):
        pts = tuple(int(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts or pts[0] != 1:
            raise ValueError("a merge schedule starts at n_1 = 1")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("a merge schedule is strictly increasing")

    def n(self, t: int) -> int:
        if t < 1:
            raise ValueError("schedule indices start at 1")
        T = len(self.points)
        return self.points[t - 1] if t <= T else self.points[-1] + (t - T)

    @classmethod
    def identity(cls) -> "MergeSchedule":
        return cls((1,))


def merge_stages(spec: RankOneSpec, sched: MergeSchedule) -> RankOneSpec:
    """Presentation with B~_t = B_{n_t}: stage t composes rows n_t..n_{t+1}-1."""

    def stage(t):
        return compose_rows(spec.rows(sched.n(t), sched.n(t + 1)))

    out = RankOneSpec(stage, "custom")
    out.derivation = ("merge", spec, sched)
    return out


def merge_stage(spec: RankOneSpec, N: int) -> RankOneSpec:
    """Fuse stages N and N+1 into one; stages above N shift down by one."""
    if N < 1:
        raise ValueError("N >= 1 required")
    return merge_stages(spec, MergeSchedule(tuple(range(1, N + 1)) + (N + 2,)))


def _check_two_valued(row: SpacerRow, n: int, c: int, d: int) -> None:
    for i, s in enumerate(row.inner):
        if s not in (c, d):
            raise PreconditionError(f"spacer {s} at stage {n} is neither {c} nor {d}", (n, i))
    if row.s[-1] != 0:
        raise NormalizationError(f"last spacer at stage {n} is {row.s[-1]}, not 0", (n, row.r))


def shift_constant(spec: RankOneSpec, N: int, c: int, d: int, window: int = 8) -> RankOneSpec:
    """Move the common spacer c out of every inner slot above stage N.

    Needs s_{n,i} in {c, d} for i < r_n and s_{n,r_n} = 0 for all n >= N.
    Row N gets last spacer c and rows above N lose c on every inner slot,
    which gives B~_n = B_n 1^c for n > N.
    """
    if not 0 <= c < d:
        raise ValueError("need 0 <= c < d")
    if N < 1:
        raise ValueError("N >= 1 required")
    for n in range(N, N + window):
        _check_two_valued(spec.row(n), n, c, d)

    def stage(n):
        row = spec.row(n)
        if n < N:
            return row
        _check_two_valued(row, n, c, d)
        if n == N:
            return SpacerRow(row.inner + (c,))
        return SpacerRow(tuple(s - c for s in row.inner) + (0,))

    out = RankOneSpec(stage, "custom")
    out.derivation = ("shift-c", spec, (N, c, d))
    return out


def _constant_inner(row: SpacerRow) -> bool:
    return len(set(row.inner)) == 1


def nonconstant_schedule(spec: RankOneSpec, horizon: int) -> MergeSchedule:
    """Greedy blocks of consecutive stages, each merging to a row whose
    inner spacers are not all equal.

    Only stages below ``horizon`` are inspected.  A trailing block that never
    becomes nonconstant is left unmerged; the schedule's ``horizon`` is the
    number of certified merged stages.
    """
    if horizon < 2:
        raise ValueError("horizon >= 2 required")
    for n in range(1, horizon):
        row = spec.row(n)
        if row.s[-1] != 0:
            raise NormalizationError(
                f"last spacer at stage {n} is {row.s[-1]}; rows must end in 0 "
                "(normalizing the presentation first is not provided here)", (n, row.r))
    points, start = [1], 1
    while start < horizon:
        stop = start + 1
        while stop <= horizon and _constant_inner(compose_rows(spec.rows(start, stop))):
            stop += 1
        if stop > horizon:
            break
        points.append(stop)
        start = stop
    certified = len(points) - 1
    if certified == 0:
        raise PreconditionError(
            f"every block of stages below {horizon} merges to constant spacers (odometer-like window)")
    return MergeSchedule(tuple(points), horizon=certified)


@dataclass(frozen=True)
class RunDecomposition:
    """B_{n+1} = (prod_{j<z} B_n^{a_j} 1^d) B_n^{a_z}."""

    d: int
    a: tuple

    @property
    def z(self) -> int:
        return len(self.a)

    def reassemble(self, block) -> Word:
        b = Word(block).data
        sep = b"1" * self.d
        return Word._trusted(sep.join(b * k for k in self.a))


def run_decomposition(spec: RankOneSpec, n: int, d: int) -> RunDecomposition:
    row = spec.row(n)
    if d < 1:
        raise ValueError("d >= 1 required")
    for i, s in enumerate(row.inner):
        if s not in (0, d):
            raise PreconditionError(f"spacer {s} is neither 0 nor {d}", (n, i))
    if row.s[-1] != 0:
        raise NormalizationError(f"last spacer at stage {n} is {row.s[-1]}, not 0", (n, row.r))
    if 0 not in row.inner or d not in row.inner:
        raise PreconditionError(f"stage {n} does not use both spacer values 0 and {d}", (n, 0))
    runs, k = [], 0
    for s in row.s:
        k += 1
        if s == d:
            runs.append(k)
            k = 0
    runs.append(k)
    return RunDecomposition(d, tuple(runs))


def _factors(data: bytes, q: int) -> set:
    return {data[i:i + q] for i in range(len(data) - q + 1)}


def verify_same_language(specA: RankOneSpec, specB: RankOneSpec, Q: int, cap: int = DEFAULT_CAP) -> bool:
    """Whether the two subshifts have the same factors of every length <= Q.

    Every factor extends to a longer one inside a subshift language, so
    equal length-Q factor sets imply equality below Q as well.
    """
    a = language_sample(specA, Q, cap)
    b = language_sample(specB, Q, cap)
    if a.table != b.table:
        return False
    return _factors(a.index.word.data, Q) == _factors(b.index.word.data, Q)
