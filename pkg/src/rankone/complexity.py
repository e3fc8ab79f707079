"""Word complexity, right-special census and the detectors built on them.

The language of a rank-one subshift is read off a single defining word
B_M.  Nothing bounds in closed form how deep M must be for every factor of
length <= Q to have shown up, so the depth is chosen as
``min{m : h_m >= Q} + 2`` and checked against ``M + 1``: if any count for a
length <= Q changes, ``StabilizationError`` is raised rather than returning
a possibly short table.

When every row ends in a zero spacer, a factor of length <= Q sits inside
some B_m 1^v B_m with h_m >= Q, where v is an inner spacer of a stage
n >= m, and that block first occurs in B_{n+1}.  For specs whose tail is
known (explicit rows, named families, the (gamma, L) family) the depth is
pushed past the first stage using each such v, which makes the table exact.
Nonzero final spacers can pile up into ever longer runs of 1s; there the
recheck catches problems in practice but is not a proof.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .construction import DEFAULT_CAP, RankOneSpec
from .errors import CapacityError, PreconditionError, StabilizationError
from .factor_index import FactorIndex
from .words import Word

RS_FAMILIES = ("suffix-of-B_{n+1}", "middle-family", "third-family", "unclassified")


@dataclass(frozen=True)
class ComplexityTable:
    """p(1..Q) for one language."""

    values: tuple

    def __post_init__(self):
        if not self.values:
            raise ValueError("a complexity table needs Q >= 1")

    @property
    def max_q(self) -> int:
        return len(self.values)

    def p(self, q: int) -> int:
        if not 1 <= q <= self.max_q:
            raise IndexError(f"q={q} outside [1, {self.max_q}]")
        return self.values[q - 1]

    def delta(self, q: int) -> int:
        """p(q+1) - p(q), defined for 1 <= q < Q."""
        return self.p(q + 1) - self.p(q)

    @property
    def deltas(self) -> tuple:
        v = self.values
        return tuple(v[i + 1] - v[i] for i in range(len(v) - 1))

    def ratio(self, q: int) -> Fraction:
        return Fraction(self.p(q), q)


@dataclass(frozen=True)
class RSRecord:
    word: Word
    family: Optional[str] = None
    stage: Optional[int] = None

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class LanguageSample:
    """Stabilized view of the length-<=Q language: the table, the
    right-special counts for lengths 1..Q-1 and the index of B_M."""

    depth: int
    table: ComplexityTable
    rs_counts: dict
    index: FactorIndex

    @property
    def max_q(self) -> int:
        return self.table.max_q


def _tail_stages(spec: RankOneSpec, start: int) -> Optional[range]:
    """Stages from ``start`` on that already show every row used at or after ``start``."""
    src = spec.source or {}
    if src.get("family") in ("ferenczi", "chacon"):
        return range(start, start + 1)
    if src.get("family") == "explicit":
        k = len(src["stages"])
        if src.get("tail") == "repeat_cycle":
            return range(start, start + k)
        return range(start, max(start, k) + 1)
    return None


def stabilization_depth(spec: RankOneSpec, max_q: int) -> int:
    m = spec.first_stage_reaching(max_q)
    depth = m + 2
    if spec.the_ts is not None:
        # every stage uses both inner values 0 and 1
        return depth
    stages = _tail_stages(spec, m)
    if stages is not None:
        first_seen = {}
        for n in stages:
            for v in spec.row(n).inner:
                first_seen.setdefault(v, n)
        depth = max(depth, max(first_seen.values()) + 1)
    return depth


def language_sample(spec: RankOneSpec, max_q: int, cap: int = DEFAULT_CAP) -> LanguageSample:
    if max_q < 1:
        raise ValueError("Q >= 1 required")
    key = (max_q, cap)
    cached = spec._analysis.get(key)
    if cached is not None:
        return cached
    depth = stabilization_depth(spec, max_q)
    if spec.height(depth + 1) > cap:
        raise CapacityError(spec.height(depth + 1), cap, what=f"B_{depth + 1} (stabilization recheck)")
    index = FactorIndex(spec.word(depth, cap))
    counts = index.count_by_length(max_q)
    rs = index.right_special_counts(max_q - 1)
    check = FactorIndex(spec.word(depth + 1, cap))
    if check.count_by_length(max_q) != counts or check.right_special_counts(max_q - 1) != rs:
        raise StabilizationError(
            f"factor counts up to length {max_q} differ between B_{depth} and B_{depth + 1}")
    sample = LanguageSample(depth=depth, table=ComplexityTable(tuple(counts)),
                            rs_counts={q: rs[q - 1] for q in range(1, max_q)}, index=index)
    spec._analysis[key] = sample
    return sample


def subshift_complexity(spec: RankOneSpec, max_q: int, cap: int = DEFAULT_CAP) -> ComplexityTable:
    """Exact p(q) of the subshift for q = 1..max_q."""
    return language_sample(spec, max_q, cap).table


def right_special(spec: RankOneSpec, max_q: int, cap: int = DEFAULT_CAP) -> dict:
    """Right-special words of each length q < max_q, as ``{q: [RSRecord, ...]}``."""
    sample = language_sample(spec, max_q, cap)
    if max_q < 2:
        return {}
    words = sample.index.right_special_words(max_q - 1)
    return {q: [RSRecord(w) for w in ws] for q, ws in words.items()}


def cassaigne_check(table: ComplexityTable, rs_counts: Union[Mapping[int, int], Sequence[int]]) -> bool:
    """Whether p(q) = p(m) + sum_{m <= l < q} rs(l) for every m < q <= Q.

    ``m`` is the smallest length present in ``rs_counts``; a plain sequence
    is read as counts for lengths 1, 2, ...
    """
    if not isinstance(rs_counts, Mapping):
        rs_counts = {q: c for q, c in enumerate(rs_counts, start=1)}
    if not rs_counts:
        raise ValueError("rs_counts is empty")
    m = min(rs_counts)
    missing = [q for q in range(m, table.max_q) if q not in rs_counts]
    if missing:
        raise ValueError(f"rs_counts does not cover length {missing[0]}")
    running = table.p(m)
    for q in range(m + 1, table.max_q + 1):
        running += rs_counts[q - 1]
        if running != table.p(q):
            return False
    return True


def detect_quasi_sturmian(table: ComplexityTable, start: int) -> Optional[int]:
    """The constant c if p(q) - q == c for every q in [start, Q], else None.

    Only a finite-horizon detector: a constant tail on the table is evidence,
    not proof, of a quasi-Sturmian language.
    """
    if not 1 <= start < table.max_q:
        raise ValueError("the tail window [start, Q] needs at least two lengths")
    gaps = {table.p(q) - q for q in range(start, table.max_q + 1)}
    return gaps.pop() if len(gaps) == 1 else None


@dataclass(frozen=True)
class RatioProfile:
    max_ratio: Fraction
    argmax_ratio: int
    min_ratio: Fraction
    argmin_ratio: int
    max_excess: Fraction
    argmax_excess: int


def ratio_profile(table: ComplexityTable, start: int, stop: int) -> RatioProfile:
    """Exact extrema of p(q)/q and p(q) - 3q/2 over ``start <= q <= stop``.

    Ties go to the smallest q.
    """
    if not 1 <= start <= stop <= table.max_q:
        raise ValueError(f"window [{start}, {stop}] not inside [1, {table.max_q}]")
    best_hi = best_lo = best_ex = None
    for q in range(start, stop + 1):
        r = table.ratio(q)
        ex = table.p(q) - Fraction(3 * q, 2)
        if best_hi is None or r > best_hi[0]:
            best_hi = (r, q)
        if best_lo is None or r < best_lo[0]:
            best_lo = (r, q)
        if best_ex is None or ex > best_ex[0]:
            best_ex = (ex, q)
    return RatioProfile(best_hi[0], best_hi[1], best_lo[0], best_lo[1], best_ex[0], best_ex[1])


def lower_bound_witness(spec: RankOneSpec, n: int, C: int, cap: int = DEFAULT_CAP) -> Optional[int]:
    """Smallest q in [h_n, h_{n+1}] with p(q) >= 3q/2 + (p(h_n) - h_n) - C."""
    h_n, h_next = spec.height(n), spec.height(n + 1)
    table = subshift_complexity(spec, h_next, cap)
    offset = table.p(h_n) - h_n
    for q in range(h_n, h_next + 1):
        # doubled to stay in integers
        if 2 * table.p(q) >= 3 * q + 2 * (offset - C):
            return q
    return None


def split_constant(spec: RankOneSpec, N: int, cap: int = DEFAULT_CAP) -> int:
    """Minimal c >= 1 such that B_N ends in 0 1^{c-1}."""
    data = spec.word(N, cap).data
    stripped = data.rstrip(b"1")
    if not stripped:
        raise PreconditionError("B_N contains no 0", (N, 0))
    return len(data) - len(stripped) + 1


def three_value_ratio_witness(spec: RankOneSpec, targets: Sequence[int],
                              cap: int = DEFAULT_CAP) -> list:
    """p(h_n)/h_n at each target stage n.

    Requires at least three distinct inner spacer values among the stages
    from each target up to the last target.
    """
    targets = sorted(targets)
    if not targets:
        raise ValueError("no target stages")
    last = targets[-1]
    for n in targets:
        seen = set()
        for row in spec.rows(n, last + 1):
            seen.update(row.inner)
        if len(seen) < 3:
            raise PreconditionError(
                f"only {len(seen)} distinct spacer values on stages {n}..{last}", (n, 0))
    table = subshift_complexity(spec, spec.height(last), cap)
    return [Fraction(table.p(spec.height(n)), spec.height(n)) for n in targets]
