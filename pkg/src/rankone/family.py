"""Closed-form analytics for the family B_{n+1} = ((B_n 1)^{gamma_n} B_n)^{L_n}.

For this family the complexity increments are 1 or 2 on four bands per
stage, p(h_n) = (1 + 1/L_{n-1}) h_n exactly, and the limit ratios are
explicit in gamma and L.  The parameter recipes pick gamma_n, L_n so that
those closed forms meet a target, always taking the smallest admissible
integer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .construction import DEFAULT_CAP, IntRule, RankOneSpec, make_the_ts
from .errors import CapacityError, ClassificationError, TableExhaustedError
from .words import Word, WordLike


class TheTsParams:
    """The two sequences gamma_n > 1 and L_n > 1.

    Heights follow h_{n+1} = L_n ((gamma_n + 1) h_n + gamma_n) without
    building any word, so parameters with factorial-size L_n stay usable.
    """

    def __init__(self, gamma, L, tail: str = "repeat_last"):
        self.gamma = IntRule.coerce(gamma, tail)
        self.L = IntRule.coerce(L, tail)
        self._h = [None, 1]
        self._spec = None

    def height(self, n: int) -> int:
        while len(self._h) <= n:
            k = len(self._h) - 1
            g, L = self.gamma(k), self.L(k)
            if g <= 1 or L <= 1:
                raise ValueError(f"need gamma_n > 1 and L_n > 1 at n={k}")
            self._h.append(L * ((g + 1) * self._h[k] + g))
        return self._h[n]

    def stage_of(self, q: int) -> int:
        """The n with h_n < q <= h_{n+1} (n = 1 also covers q = 1)."""
        n = 1
        while self.height(n + 1) < q:
            n += 1
        return n

    def spec(self) -> RankOneSpec:
        if self._spec is None:
            self._spec = make_the_ts(self.gamma, self.L)
        return self._spec

    def to_json(self, horizon: Optional[int] = None) -> dict:
        out = {"family": "the_ts", "gamma": self.gamma.to_json(horizon), "L": self.L.to_json(horizon)}
        tails = {r.tail for r in (self.gamma, self.L) if r.values is not None and len(r.values) > 1}
        if len(tails) > 1:
            raise ValueError("gamma and L use different tail policies")
        out["tail"] = tails.pop() if tails else "repeat_last"
        return out

    @classmethod
    def from_spec(cls, spec: RankOneSpec) -> "TheTsParams":
        if spec.the_ts is None:
            raise ValueError("spec is not a (gamma, L) family spec")
        out = cls(*spec.the_ts)
        out._spec = spec
        return out

    def __repr__(self):
        return f"TheTsParams(gamma={self.gamma!r}, L={self.L!r})"


@dataclass(frozen=True)
class BreakpointProfile:
    """Thresholds h_n, (2 - 1/L_{n-1})h_n, (gamma_n+1)h_n + gamma_n,
    (2gamma_n+1)h_n + 2gamma_n, h_{n+1} and the increment on each band.

    Bands are ``(lo, hi, increment)`` with ``lo < q <= hi``.  At n = 1 the
    first band is empty and is left out.
    """

    stage: int
    thresholds: tuple
    bands: tuple

    def increment(self, q: int) -> int:
        for lo, hi, inc in self.bands:
            if lo < q <= hi:
                return inc
        raise ValueError(f"q={q} outside stage {self.stage}")


def breakpoint_profile(params: TheTsParams, n: int) -> BreakpointProfile:
    h, g = params.height(n), params.gamma(n)
    h_next = params.height(n + 1)
    third_hi = 2 * h - h // params.L(n - 1) if n > 1 else h
    mid_lo = (g + 1) * h + g
    mid_hi = (2 * g + 1) * h + 2 * g
    bands = [(third_hi, mid_lo, 1), (mid_lo, mid_hi, 2), (mid_hi, h_next, 1)]
    if n > 1:
        bands.insert(0, (h, third_hi, 2))
    return BreakpointProfile(n, (h, third_hi, mid_lo, mid_hi, h_next), tuple(bands))


def predicted_increment(params: TheTsParams, q: int) -> int:
    """p(q+1) - p(q) from the band structure."""
    if q == 1:
        return 1
    return breakpoint_profile(params, params.stage_of(q)).increment(q)


def predicted_height_complexity(params: TheTsParams, n: int) -> int:
    """p(h_n) = (1 + 1/L_{n-1}) h_n; p(h_1) = p(1) = 2."""
    h = params.height(n)
    if n == 1:
        return 2
    return h + h // params.L(n - 1)


def predicted_complexity(params: TheTsParams, q: int) -> int:
    """Exact p(q), anchored at p(h_n) and integrated over the stage-n bands."""
    if q < 1:
        raise ValueError("q >= 1 required")
    if q == 1:
        return 2
    n = params.stage_of(q)
    h = params.height(n)
    # increment at l = h_n is the last (unit) band of the stage below
    total = predicted_height_complexity(params, n) + 1
    for lo, hi, inc in breakpoint_profile(params, n).bands:
        top = min(hi, q - 1)
        if top > lo:
            total += inc * (top - lo)
    return total


@dataclass(frozen=True)
class Limits:
    liminf: Fraction
    limsup: Fraction


def _tail_pairs(params: TheTsParams):
    """(L_{n-1}, gamma_n) over one full period of the eventual behaviour."""
    lengths = [1]
    for rule in (params.gamma, params.L):
        kind, data = rule.behavior()
        if kind == "cycle":
            lengths.append(len(data[1]))
    period = math.lcm(*lengths)
    base = 2 + max(len(r.values) if r.values is not None else 0 for r in (params.gamma, params.L))
    return [(params.L(n - 1), params.gamma(n)) for n in range(base, base + period)]


def predicted_limits(params: TheTsParams, window: int = 12) -> Limits:
    """liminf and limsup of p(q)/q.

    liminf = 1 + liminf 1/max(L_{n-1}, gamma_n + 1) and
    limsup = 3/2 + limsup 1/(4 min(L_{n-1}, gamma_n + 1) - 2), valid when
    gamma_n/h_n -> 0.  Handles eventually-constant and eventually-periodic
    rules and rules flagged divergent; anything else is rejected.
    """
    gk, _ = params.gamma.behavior()
    lk, _ = params.L.behavior()
    if "unknown" in (gk, lk):
        raise ValueError("cannot determine the limits of a rule with unknown tail behaviour")
    if gk == "divergent":
        ratios = [Fraction(params.gamma(n), params.height(n)) for n in range(2, window)]
        if any(b >= a for a, b in zip(ratios, ratios[1:])):
            raise ValueError("gamma_n/h_n is not decreasing on the checked window")
    if gk != "divergent" and lk != "divergent":
        pairs = _tail_pairs(params)
        liminf = 1 + min(Fraction(1, max(L, g + 1)) for L, g in pairs)
        limsup = Fraction(3, 2) + max(Fraction(1, 4 * min(L, g + 1) - 2) for L, g in pairs)
        return Limits(liminf, limsup)
    if gk == "divergent" and lk == "divergent":
        return Limits(Fraction(1), Fraction(3, 2))
    # one side diverges: max(...) -> infinity, min(...) is the bounded side
    bounded = params.L if gk == "divergent" else params.gamma
    kind, data = bounded.behavior()
    tail = [data] if kind == "constant" else list(data[1])
    if gk == "divergent":
        worst = max(Fraction(1, 4 * L - 2) for L in tail)
    else:
        worst = max(Fraction(1, 4 * (g + 1) - 2) for g in tail)
    return Limits(Fraction(1), Fraction(3, 2) + worst)


class GrowthFunction:
    """A function f(q) -> infinity, from a finite table or a named family.

    Named families (``identity``, ``ceil-log``, ``ceil-sqrt``) are
    nondecreasing, so their running infimum f* equals f.  For a table,
    ``f*`` is the running minimum taken from the right over the horizon.
    """

    NAMES = ("identity", "ceil-log", "ceil-sqrt")
    MAX_BITS = 1 << 20

    def __init__(self, table: Optional[Sequence[int]] = None, name: Optional[str] = None):
        if (table is None) == (name is None):
            raise ValueError("give exactly one of table or name")
        self.name = name
        if name is not None and name not in self.NAMES:
            raise ValueError(f"unknown growth family {name!r}")
        self.table = tuple(int(v) for v in table) if table is not None else None
        if self.table is not None:
            star, run = [], None
            for v in reversed(self.table):
                run = v if run is None else min(run, v)
                star.append(run)
            self._star = tuple(reversed(star))

    @classmethod
    def named(cls, name: str) -> "GrowthFunction":
        return cls(name=name)

    @property
    def horizon(self) -> Optional[int]:
        return None if self.table is None else len(self.table)

    def _named_value(self, q: int) -> int:
        if self.name == "identity":
            return q
        if self.name == "ceil-log":
            return (q - 1).bit_length()
        return math.isqrt(q - 1) + 1

    def __call__(self, q: int) -> int:
        if q < 1:
            raise ValueError("growth functions are defined for q >= 1")
        if self.table is None:
            return self._named_value(q)
        if q > len(self.table):
            raise TableExhaustedError(f"f({q}) is past the table horizon {len(self.table)}")
        return self.table[q - 1]

    def star(self, q: int) -> int:
        """f*(q) = inf{f(q') : q' >= q}, over the table horizon for tables."""
        if self.table is None:
            return self._named_value(q)
        if q > len(self.table):
            raise TableExhaustedError(f"f*({q}) is past the table horizon {len(self.table)}")
        return self._star[q - 1]

    def first_above(self, x, lo: int = 1) -> int:
        """Smallest q >= lo with f*(q) > x."""
        if self.table is not None:
            for q in range(lo, len(self.table) + 1):
                if self._star[q - 1] > x:
                    return q
            raise TableExhaustedError(f"no q <= {len(self.table)} with f*(q) > {x}")
        k = math.floor(x)
        if k < 0:
            return lo
        if self.name == "identity":
            q = k + 1
        elif self.name == "ceil-sqrt":
            q = k * k + 1
        else:
            if k > self.MAX_BITS:
                raise CapacityError(k, self.MAX_BITS, what="bit length of the growth-function preimage")
            q = 2**k + 1
        return max(q, lo)

    def to_json(self):
        return {"name": self.name} if self.name else {"table": list(self.table)}

    @classmethod
    def from_json(cls, obj) -> "GrowthFunction":
        if isinstance(obj, str):
            return cls(name=obj)
        if isinstance(obj, list):
            return cls(table=obj)
        if "name" in obj:
            return cls(name=obj["name"])
        return cls(table=obj["table"])


@dataclass(frozen=True)
class Certificate:
    name: str
    lhs: object
    rhs: object
    holds: Optional[bool]


def _strict(name, lhs, rhs_fn) -> Certificate:
    try:
        rhs = rhs_fn()
    except TableExhaustedError:
        return Certificate(name, lhs, None, None)
    return Certificate(name, lhs, rhs, lhs < rhs)


def _smallest_gamma(bound_ok) -> int:
    g = 2
    while not bound_ok(g):
        g += 1
    return g


def choose_params_minimal(epsilon, f: GrowthFunction) -> TheTsParams:
    """Constant gamma with 1/(4 gamma + 2) < epsilon and L_n chosen lazily.

    L_n is the smallest integer with L_n > n and
    L_n ((gamma+1) h_n + gamma) >= q_n, where q_n is the first q with
    f*(q) > (gamma+1) h_n + gamma.  Requiring L_n > n keeps L_n -> infinity.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon > 0 required")
    gamma = _smallest_gamma(lambda g: Fraction(1, 4 * g + 2) < epsilon)
    params = None

    def L_rule(n):
        h = params.height(n)
        block = (gamma + 1) * h + gamma
        q_n = f.first_above(block)
        return max(n + 1, 2, -(-q_n // block))

    params = TheTsParams(gamma, IntRule(func=L_rule, name=None, divergent=True))
    return params


def minimal_certificates(params: TheTsParams, f: GrowthFunction, stages: int) -> list:
    """p(h_{n+1}) < h_{n+1} + f(h_{n+1}) for n = 1..stages, via the closed form."""
    out = []
    for n in range(1, stages + 1):
        h_next = params.height(n + 1)
        p = predicted_height_complexity(params, n + 1)
        out.append(_strict(f"p(h_{n + 1}) < h_{n + 1} + f(h_{n + 1})", p, lambda: h_next + f(h_next)))
    return out


def choose_params_totally_ergodic(f: GrowthFunction) -> TheTsParams:
    """gamma_1 = L_1 = 2; then gamma_n minimal with h_n/2 < f*(gamma_n) and
    L_n = m_n! with m_n > n minimal such that (gamma_n+1)h_n + gamma_n < f*(L_n).

    Both sequences are computed lazily, one stage at a time.
    """
    params = None

    def gamma_rule(n):
        if n == 1:
            return 2
        h = params.height(n)
        return max(2, f.first_above(Fraction(h, 2)))

    def L_rule(n):
        if n == 1:
            return 2
        h, g = params.height(n), params.gamma(n)
        block = (g + 1) * h + g
        m = n + 1
        while not block < f.star(math.factorial(m)):
            m += 1
        return math.factorial(m)

    params = TheTsParams(IntRule(func=gamma_rule), IntRule(func=L_rule))
    return params


def totally_ergodic_certificates(params: TheTsParams, f: GrowthFunction, stages: int) -> list:
    """Inequalities the recipe promises, re-evaluated for n = 2..stages."""
    out = []
    for n in range(2, stages + 1):
        h, g, L = params.height(n), params.gamma(n), params.L(n)
        out.append(_strict(f"h_{n}/2 < f*(gamma_{n})", Fraction(h, 2), lambda: f.star(g)))
        out.append(_strict(f"(gamma_{n}+1)h_{n}+gamma_{n} < f*(L_{n})", (g + 1) * h + g, lambda: f.star(L)))
        p = predicted_height_complexity(params, n)
        out.append(_strict(f"p(h_{n}) < h_{n} + f(h_{n})", p, lambda: h + f(h)))
        q1 = 2 * h - h // params.L(n - 1) + 1
        out.append(_strict(f"p(q) < 3q/2 + f(q) at q={q1}", Fraction(predicted_complexity(params, q1)),
                           lambda: Fraction(3 * q1, 2) + f(q1)))
        q2 = (2 * g + 1) * h + 2 * g + 1
        out.append(_strict(f"p(q) < 3q/2 + f(q) at q={q2}", Fraction(predicted_complexity(params, q2)),
                           lambda: Fraction(3 * q2, 2) + f(q2)))
    return out


def height_divisible(params: TheTsParams, t: int, n: int) -> bool:
    """Whether t divides h_n (the divisibility used for total ergodicity)."""
    return params.height(n) % t == 0


def choose_params_msj(epsilon) -> TheTsParams:
    """Constant gamma minimal with 1/(gamma+1) < epsilon, and L = gamma + 1."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon > 0 required")
    gamma = _smallest_gamma(lambda g: Fraction(1, g + 1) < epsilon)
    return TheTsParams(gamma, gamma + 1)


def _suffix_of(w: bytes, whole: bytes) -> bool:
    return len(w) <= len(whole) and whole.endswith(w)


def classify_rs(w: WordLike, params: TheTsParams, cap: int = DEFAULT_CAP):
    """Family tag and stage n of a right-special word of length > 1.

    Returns ``(tag, n)`` with tag one of ``suffix-of-B_{n+1}``,
    ``middle-family`` or ``third-family``.  The caller is responsible for
    ``w`` being right-special.
    """
    w = Word(w)
    ell = len(w)
    if ell <= 1:
        raise ValueError("classification needs len(w) > 1")
    n = params.stage_of(ell)
    spec = params.spec()
    data = w.data
    B = spec.word(n, cap).data
    g = params.gamma(n)
    matches = []
    if _suffix_of(data, spec.word(n + 1, cap).data):
        matches.append("suffix-of-B_{n+1}")
    if (g + 1) * len(B) + g < ell <= (2 * g + 1) * len(B) + 2 * g:
        if _suffix_of(data, (B + b"1") * (2 * g) + B):
            matches.append("middle-family")
    if n > 1:
        Lp, gp = params.L(n - 1), params.gamma(n - 1)
        if ell <= 2 * len(B) - len(B) // Lp:
            Bp = spec.word(n - 1, cap).data
            if _suffix_of(data, ((Bp + b"1") * gp + Bp) * (Lp - 1) + B):
                matches.append("third-family")
    if len(matches) != 1:
        raise ClassificationError(f"word of length {ell} at stage {n} matched {matches or 'no family'}")
    return matches[0], n


@dataclass(frozen=True)
class WMCondition:
    kappa: Fraction
    holds: bool
    zero_ratios: tuple
    one_ratios: tuple


def wm_condition_check(params: TheTsParams, start: int, stop: int) -> WMCondition:
    """Fractions of inner spacers equal to 0 and to 1 for stages start..stop-1.

    These are (L_n - 1)/(L_n(gamma_n + 1)) and gamma_n/(gamma_n + 1).
    ``holds`` needs a positive common lower bound on the window and a
    gamma rule that is not known to diverge.
    """
    if stop <= start:
        raise ValueError("empty window")
    zeros = tuple(Fraction(params.L(n) - 1, params.L(n) * (params.gamma(n) + 1)) for n in range(start, stop))
    ones = tuple(Fraction(params.gamma(n), params.gamma(n) + 1) for n in range(start, stop))
    kappa = min(zeros + ones)
    holds = kappa > 0 and params.gamma.bounded is not False
    return WMCondition(kappa, holds, zeros, ones)
