"""Exact cutting-and-stacking model of a rank-one map.

Measures are unnormalized: the base level has mu(I_1) = 1, each cut divides
the level width by r_n + 1, and mu(C_n) = h_n mu(I_n).  Sets are unions of
levels of one column.  T moves a level up by one; on the top level of C_n
it is only defined after cutting, so T^t of a level is resolved by going
deeper until every copy stays below the top.  Whatever is still unresolved
at the depth cap is carried as mass, which turns every intersection into a
certified interval [lo, hi].
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .construction import DEFAULT_CAP, RankOneSpec
from .words import Word, WordLike

Rational = Fraction


def _offsets(spec: RankOneSpec, n: int) -> tuple:
    """Start heights of the subcolumns of C_n inside C_{n+1}."""
    cache = spec._analysis.setdefault("offsets", {})
    if n not in cache:
        h, out, pos = spec.height(n), [], 0
        for s in spec.row(n).s:
            out.append(pos)
            pos += h + s
        cache[n] = tuple(out)
    return cache[n]


def level_width(spec: RankOneSpec, n: int) -> Fraction:
    w = Fraction(1)
    for k in range(1, n):
        w /= spec.copies(k)
    return w


@dataclass(frozen=True)
class ColumnView:
    n: int
    height: int
    level_width: Fraction
    column_measure: Fraction


def column_view(spec: RankOneSpec, n: int) -> ColumnView:
    w = level_width(spec, n)
    return ColumnView(n, spec.height(n), w, spec.height(n) * w)


@dataclass(frozen=True)
class LevelSet:
    """A union of levels I_{depth, j} of the column C_depth."""

    depth: int
    indices: frozenset

    def __init__(self, depth: int, indices: Iterable[int]):
        object.__setattr__(self, "depth", int(depth))
        object.__setattr__(self, "indices", frozenset(int(j) for j in indices))

    def validate(self, spec: RankOneSpec) -> "LevelSet":
        h = spec.height(self.depth)
        bad = [j for j in self.indices if not 0 <= j < h]
        if bad:
            raise ValueError(f"level {min(bad)} outside [0, {h}) at depth {self.depth}")
        return self

    def mass(self, spec: RankOneSpec) -> Fraction:
        return len(self.indices) * level_width(spec, self.depth)

    @classmethod
    def column(cls, spec: RankOneSpec, n: int) -> "LevelSet":
        return cls(n, range(spec.height(n)))


@dataclass(frozen=True)
class ImageResult:
    resolved: LevelSet
    unresolved_mass: Fraction


def _refine_positions(spec: RankOneSpec, positions: Iterable[int], n: int, m: int) -> list:
    cur = list(positions)
    for k in range(n, m):
        offs = _offsets(spec, k)
        cur = [o + p for o in offs for p in cur]
    return sorted(cur)


def refine(spec: RankOneSpec, level, m: int) -> list:
    """Heights in C_m of the copies of I_{n,j}, for ``level = (n, j)``."""
    n, j = level
    if m < n:
        raise ValueError("refinement goes to a deeper stage (m >= n)")
    if not 0 <= j < spec.height(n):
        raise ValueError(f"level {j} outside [0, {spec.height(n)})")
    return _refine_positions(spec, [j], n, m)


def refine_set(spec: RankOneSpec, A: LevelSet, m: int) -> LevelSet:
    return LevelSet(m, _refine_positions(spec, A.indices, A.depth, m))


def ancestor(spec: RankOneSpec, k: int, q: int, b: int) -> Optional[int]:
    """The level of C_b containing I_{k,q} (b <= k), or None for a spacer added above stage b."""
    while k > b:
        offs = _offsets(spec, k - 1)
        i = bisect_right(offs, q) - 1
        q -= offs[i]
        if q >= spec.height(k - 1):
            return None
        k -= 1
    return q


def _image_pieces(spec: RankOneSpec, A: LevelSet, t: int, depth_cap: int):
    """T^t A as ``(depth, index)`` levels plus the number of unresolved levels at the cap."""
    if t < 0:
        raise ValueError("t >= 0 required")
    pieces, pending, k = [], sorted(A.indices), A.depth
    while True:
        h = spec.height(k)
        rest = []
        for p in pending:
            if p + t < h:
                pieces.append((k, p + t))
            else:
                rest.append(p)
        if not rest or k >= depth_cap:
            return pieces, rest, k
        pending = _refine_positions(spec, rest, k, k + 1)
        k += 1


def apply_T_power(spec: RankOneSpec, A: LevelSet, t: int, depth_cap: Optional[int] = None) -> ImageResult:
    """T^t A, as a level set at the deepest stage needed, plus unresolved mass."""
    A.validate(spec)
    if depth_cap is None:
        depth_cap = A.depth + 4
    pieces, rest, k = _image_pieces(spec, A, t, depth_cap)
    unresolved = len(rest) * level_width(spec, k)
    m = max((d for d, _ in pieces), default=A.depth)
    out = []
    for d, q in pieces:
        out.extend(_refine_positions(spec, [q], d, m))
    return ImageResult(LevelSet(m, out), unresolved)


def measure_intersection(spec: RankOneSpec, A: LevelSet, B: LevelSet, t: int,
                         depth_cap: Optional[int] = None) -> tuple:
    """Certified bounds ``(lo, hi)`` on mu(T^t A intersect B)."""
    A.validate(spec)
    B.validate(spec)
    if depth_cap is None:
        depth_cap = max(A.depth, B.depth) + 4
    pieces, rest, k = _image_pieces(spec, A, t, depth_cap)
    b, targets = B.depth, B.indices
    lo = Fraction(0)
    for d, q in pieces:
        if d <= b:
            hits = sum(1 for p in _refine_positions(spec, [q], d, b) if p in targets)
            lo += hits * level_width(spec, b)
        elif ancestor(spec, d, q, b) in targets:
            lo += level_width(spec, d)
    return lo, lo + len(rest) * level_width(spec, k)


def spacer_fractions(spec: RankOneSpec, n: int) -> tuple:
    """Share of inner spacers equal to 0 and to 1, each over r_n + 1."""
    row = spec.row(n)
    return (Fraction(row.inner.count(0), row.r + 1), Fraction(row.inner.count(1), row.r + 1))


def window_kappa(spec: RankOneSpec, n: int, ell: int) -> Fraction:
    if ell == 0:
        return Fraction(1)
    return min(min(spacer_fractions(spec, k)) for k in range(n, n + ell))


@dataclass(frozen=True)
class KappaCheck:
    target: str
    t: int
    kappa: Fraction
    bound: Fraction
    measured_lo: Fraction
    measured_hi: Fraction
    holds: Optional[bool]


def kappa_check(spec: RankOneSpec, n: int, ell: int, j: int, depth_cap: Optional[int] = None) -> list:
    """mu(T^t I cap I) and mu(T^t I cap J) against kappa^ell mu(I_n).

    I = I_{n,j}, J = I_{n,j-ell} and t = h_n + ... + h_{n+ell-1}.  ``holds``
    is None when the depth cap leaves the comparison undecided.
    """
    if ell < 0 or not ell <= j < spec.height(n):
        raise ValueError("need 0 <= ell <= j < h_n")
    if depth_cap is None:
        depth_cap = n + max(4, ell + 2)
    kappa = window_kappa(spec, n, ell)
    t = sum(spec.height(n + k) for k in range(ell))
    bound = kappa**ell * level_width(spec, n)
    I = LevelSet(n, [j])
    out = []
    for name, target in (("self", I), ("below", LevelSet(n, [j - ell]))):
        lo, hi = measure_intersection(spec, I, target, t, depth_cap)
        holds = True if lo >= bound else (False if hi < bound else None)
        out.append(KappaCheck(name, t, kappa, bound, lo, hi, holds))
    return out


@dataclass(frozen=True)
class FiniteMeasureReport:
    partial_sums: tuple
    column_measures: tuple
    spacer_bound: int
    product_bound: Fraction
    bounded: bool


def finite_measure_report(spec: RankOneSpec, N: int) -> FiniteMeasureReport:
    """Partial sums of sum_n (1/(r_n h_n)) sum_i s_{n,i} and mu(C_n) for n <= N.

    ``bounded`` compares mu(C_N) with mu(C_1) prod_{n<N} (1 + k/2^{n-1}),
    k the declared spacer bound or, failing that, the largest spacer seen.
    """
    if N < 1:
        raise ValueError("N >= 1 required")
    sums, run = [], Fraction(0)
    for n in range(1, N + 1):
        row = spec.row(n)
        run += Fraction(sum(row.s), row.r * spec.height(n))
        sums.append(run)
    measures = tuple(column_view(spec, n).column_measure for n in range(1, N + 1))
    k = spec.spacer_bound
    if k is None:
        k = max(max(spec.row(n).s) for n in range(1, N + 1))
    bound = measures[0]
    for n in range(1, N):
        bound *= 1 + Fraction(k, 2 ** (n - 1))
    return FiniteMeasureReport(tuple(sums), measures, k, bound, measures[-1] <= bound)


def empirical_measure(spec: RankOneSpec, w: WordLike, n: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Occurrences of w in B_n (overlaps counted) over h_n - len(w)."""
    w = Word(w)
    h = spec.height(n)
    if not 0 < len(w) < h:
        raise ValueError("need 0 < len(w) < h_n")
    return Fraction(spec.word(n, cap).count(w), h - len(w))


def level_coding(spec: RankOneSpec, n: int) -> Word:
    """Name of each level of C_n: 0 for copies of the base level, 1 for spacers."""
    h = spec.height(n)
    code = bytearray(b"1" * h)
    for p in refine(spec, (1, 0), n):
        code[p] = 48
    return Word._trusted(bytes(code))


@dataclass(frozen=True)
class CylinderCheck:
    empirical: Fraction
    tower: Fraction
    gap: Fraction
    bound: Fraction

    @property
    def ok(self) -> bool:
        return self.gap <= self.bound


def cylinder_cross_check(spec: RankOneSpec, w: WordLike, n: int, cap: int = DEFAULT_CAP) -> CylinderCheck:
    """Empirical frequency against the tower mass of the cylinder [w] inside C_n.

    The tower side reads symbols off the level coding built by refinement,
    not off B_n, and normalizes by mu(C_n).
    """
    w = Word(w)
    h = spec.height(n)
    if h > cap:
        from .errors import CapacityError
        raise CapacityError(h, cap)
    empirical = empirical_measure(spec, w, n, cap)
    view = column_view(spec, n)
    hits = level_coding(spec, n).count(w)
    tower = hits * view.level_width / view.column_measure
    return CylinderCheck(empirical, tower, abs(empirical - tower), Fraction(len(w), h))


@dataclass(frozen=True)
class WMPoint:
    t: int
    lo: Fraction
    hi: Fraction

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2


def correlation_gap(lo: Fraction, hi: Fraction, target: Fraction) -> tuple:
    """Bounds on |x - target| over x in [lo, hi]."""
    if lo <= target <= hi:
        near = Fraction(0)
    else:
        near = min(abs(lo - target), abs(hi - target))
    return near, max(abs(lo - target), abs(hi - target))


def wm_diagnostic(spec: RankOneSpec, A: LevelSet, B: LevelSet, T_max: int, depth_cap: int) -> list:
    """Cesaro averages c_T = (1/T) sum_{t=1..T} |mu(T^t A cap B) - mu(A)mu(B)/mu(C_cap)|.

    Each c_T is an exact interval.  This is a diagnostic curve; it does not
    decide weak mixing.
    """
    if T_max < 1:
        raise ValueError("T_max >= 1 required")
    total = column_view(spec, depth_cap).column_measure
    target = A.mass(spec) * B.mass(spec) / total
    out, lo_sum, hi_sum = [], Fraction(0), Fraction(0)
    for t in range(1, T_max + 1):
        lo, hi = measure_intersection(spec, A, B, t, depth_cap)
        near, far = correlation_gap(lo, hi, target)
        lo_sum += near
        hi_sum += far
        out.append(WMPoint(t, lo_sum / t, hi_sum / t))
    return out
