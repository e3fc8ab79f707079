"""Rank-one presentations and the defining words B_n.

A presentation is a cut sequence r_n together with spacer rows
s_{n,0..r_n}.  The words are B_1 = "0" and
B_{n+1} = B_n 1^{s_{n,0}} B_n 1^{s_{n,1}} ... B_n 1^{s_{n,r_n}}.
Heights h_n = len(B_n) and zero counts are tracked as Python ints, so
presentations whose words are far too long to build can still be
analysed through their heights.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Union

from .errors import CapacityError, PreconditionError
from .words import Word

DEFAULT_CAP = 10**7

FAMILIES = ("explicit-with-tail-rule", "the_ts", "ferenczi", "chacon", "custom")
TAILS = ("repeat_last", "repeat_cycle")


class IntRule:
    """Integer sequence ``n -> a_n`` for ``n >= 1``.

    Built from a constant, a finite list with a tail policy, a named
    divergent rule (``"n+K"``, ``"2^n"``, ``"(n+1)!"``) or an arbitrary
    function.  ``behavior()`` reports what is known about the tail, which is
    what the limit computations need.
    """

    _NAMED = {
        "2^n": lambda n: 2**n,
        "(n+1)!": lambda n: math.factorial(n + 1),
    }

    def __init__(self, values=None, tail="repeat_last", func=None, name=None, divergent=None):
        if tail not in TAILS:
            raise ValueError(f"unknown tail policy {tail!r}")
        self.values = tuple(int(v) for v in values) if values is not None else None
        self.tail = tail
        self.name = name
        self._func = func
        self._divergent = divergent
        if self.values is None and func is None:
            raise ValueError("an IntRule needs values or a function")
        if self.values is not None and not self.values:
            raise ValueError("an IntRule needs at least one value")
        self._memo = {}

    @classmethod
    def constant(cls, k: int) -> "IntRule":
        return cls(values=(k,))

    @classmethod
    def named(cls, name: str) -> "IntRule":
        key = name.replace(" ", "")
        m = re.fullmatch(r"n\+(\d+)", key)
        if m:
            shift = int(m.group(1))
            return cls(func=lambda n: n + shift, name=key, divergent=True)
        if key in cls._NAMED:
            return cls(func=cls._NAMED[key], name=key, divergent=True)
        raise ValueError(f"unknown named rule {name!r}")

    @classmethod
    def coerce(cls, value, tail="repeat_last") -> "IntRule":
        if isinstance(value, IntRule):
            return value
        if isinstance(value, str):
            return cls.named(value)
        if isinstance(value, int):
            return cls.constant(value)
        return cls(values=value, tail=tail)

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError("sequence rules are indexed from n = 1")
        if self.values is not None:
            k = len(self.values)
            if n <= k:
                return self.values[n - 1]
            if self.tail == "repeat_last":
                return self.values[-1]
            return self.values[(n - 1) % k]
        if n not in self._memo:
            self._memo[n] = int(self._func(n))
        return self._memo[n]

    def behavior(self):
        """``(kind, data)`` with kind one of constant, cycle, divergent, unknown.

        For ``cycle`` the data is ``(offset, period_values)``: from index
        ``offset`` on, the rule repeats ``period_values``.
        """
        if self.values is not None:
            if self.tail == "repeat_last" or len(set(self.values)) == 1:
                return "constant", self.values[-1]
            return "cycle", (1, self.values)
        if self._divergent:
            return "divergent", None
        return "unknown", None

    @property
    def bounded(self) -> Optional[bool]:
        kind, _ = self.behavior()
        if kind in ("constant", "cycle"):
            return True
        if kind == "divergent":
            return False
        return None

    def to_json(self, horizon: Optional[int] = None):
        if self.values is not None:
            if len(self.values) == 1:
                return self.values[0]
            return list(self.values)
        if self.name is not None:
            return self.name
        if horizon is None:
            raise ValueError("a function-backed rule needs a horizon to serialize")
        return [self(n) for n in range(1, horizon + 1)]

    def __repr__(self):
        if self.values is not None:
            return f"IntRule({list(self.values)}, tail={self.tail!r})"
        return f"IntRule(name={self.name!r})"


@dataclass(frozen=True)
class SpacerRow:
    """One stage: ``r`` cuts and ``r + 1`` spacer counts."""

    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(int(v) for v in self.s))
        if len(self.s) < 2:
            raise ValueError("a spacer row needs r >= 1, i.e. at least two entries")
        if any(v < 0 for v in self.s):
            raise ValueError("spacer counts are nonnegative")

    @property
    def r(self) -> int:
        return len(self.s) - 1

    @property
    def inner(self) -> tuple:
        """Spacers above subcolumns 0..r-1 (everything but the last)."""
        return self.s[:-1]


RowLike = Union[SpacerRow, Sequence[int], dict]


def _as_row(row: RowLike) -> SpacerRow:
    if isinstance(row, SpacerRow):
        return row
    if isinstance(row, dict):
        return SpacerRow(row["s"])
    return SpacerRow(row)


class RankOneSpec:
    """A rank-one presentation given by a total stage rule ``n -> SpacerRow``.

    Rows, heights and (capped) words are cached on the instance; the cache
    is write-once, so a spec can be shared between readers.
    """

    def __init__(self, stage_rule: Callable[[int], RowLike], family_tag: str = "custom",
                 spacer_bound: Optional[int] = None, source: Optional[dict] = None,
                 the_ts=None):
        if family_tag not in FAMILIES:
            raise ValueError(f"unknown family tag {family_tag!r}")
        self._rule = stage_rule
        self.family_tag = family_tag
        self.spacer_bound = spacer_bound
        self.source = source
        self.the_ts = the_ts
        self.derivation = None
        self._rows = {}
        self._heights = [None, 1]
        self._zeros = [None, 1]
        self._words = {1: b"0"}
        self._analysis = {}

    def row(self, n: int) -> SpacerRow:
        if n < 1:
            raise ValueError("stages are indexed from n = 1")
        row = self._rows.get(n)
        if row is None:
            row = _as_row(self._rule(n))
            if self.spacer_bound is not None and max(row.s) > self.spacer_bound:
                i = row.s.index(max(row.s))
                raise PreconditionError(
                    f"spacer {row.s[i]} exceeds declared bound {self.spacer_bound}", (n, i))
            self._rows[n] = row
        return row

    def rows(self, start: int, stop: int) -> list:
        """Rows for stages ``start <= n < stop``."""
        return [self.row(n) for n in range(start, stop)]

    def height(self, n: int) -> int:
        while len(self._heights) <= n:
            k = len(self._heights) - 1
            if self.the_ts is not None:
                # closed form, so huge gamma_n or L_n never build a row
                g, L = self.the_ts[0](k), self.the_ts[1](k)
                if g <= 1 or L <= 1:
                    raise PreconditionError(f"need gamma_n > 1 and L_n > 1, got gamma={g}, L={L}", (k, 0))
                copies, spacers = L * (g + 1), L * g
            else:
                row = self.row(k)
                copies, spacers = row.r + 1, sum(row.s)
            self._heights.append(copies * self._heights[k] + spacers)
            self._zeros.append(copies * self._zeros[k])
        return self._heights[n]

    def copies(self, n: int) -> int:
        """r_n + 1, the number of subcolumns at stage n."""
        if self.the_ts is not None:
            return self.the_ts[1](n) * (self.the_ts[0](n) + 1)
        return self.row(n).r + 1

    def zero_count(self, n: int) -> int:
        self.height(n)
        return self._zeros[n]

    def word(self, n: int, cap: int = DEFAULT_CAP) -> Word:
        """B_n, raising ``CapacityError`` if ``h_n > cap``."""
        return Word._trusted(self._word_bytes(n, cap))

    def _word_bytes(self, n: int, cap: int) -> bytes:
        if n in self._words:
            if len(self._words[n]) > cap:
                raise CapacityError(len(self._words[n]), cap)
            return self._words[n]
        h = self.height(n)
        if h > cap:
            raise CapacityError(h, cap)
        k = max(m for m in self._words if m < n)
        data = self._words[k]
        for m in range(k, n):
            data = _expand(data, self.row(m))
            self._words[m + 1] = data
        return data

    def first_stage_reaching(self, length: int) -> int:
        """Smallest m with h_m >= length."""
        m = 1
        while self.height(m) < length:
            m += 1
        return m

    def __repr__(self):
        return f"RankOneSpec(family={self.family_tag!r})"


def _expand(b: bytes, row: SpacerRow) -> bytes:
    return b"".join(b + b"1" * s for s in row.s)


@dataclass(frozen=True)
class BuildState:
    n: int
    word: Optional[Word]
    height: int
    zero_count: int


def expand_stage(b, row: RowLike, cap: int = DEFAULT_CAP) -> Word:
    """Concatenate ``b 1^{s_0} b 1^{s_1} ... b 1^{s_r}``."""
    row = _as_row(row)
    b = Word(b)
    length = (row.r + 1) * len(b) + sum(row.s)
    if length > cap:
        raise CapacityError(length, cap)
    return Word._trusted(_expand(b.data, row))


def heights(spec: RankOneSpec, N: int) -> list:
    """[h_1, ..., h_N] from the height recurrence alone."""
    if N < 1:
        raise ValueError("N >= 1 required")
    spec.height(N)
    return list(spec._heights[1:N + 1])


def build_word(spec: RankOneSpec, n: int, cap: int = DEFAULT_CAP, require: bool = False) -> BuildState:
    """Build state for stage ``n``; the word is present iff ``h_n <= cap``."""
    if n < 1 or cap < 1:
        raise ValueError("n >= 1 and cap >= 1 required")
    h = spec.height(n)
    if h > cap:
        if require:
            raise CapacityError(h, cap)
        word = None
    else:
        word = spec.word(n, cap)
    return BuildState(n=n, word=word, height=h, zero_count=spec.zero_count(n))


def the_ts_row(gamma: int, L: int) -> SpacerRow:
    return SpacerRow(([1] * gamma + [0]) * L)


def make_the_ts(gammas, Ls, tail: str = "repeat_last") -> RankOneSpec:
    """B_{n+1} = ((B_n 1)^{gamma_n} B_n)^{L_n} with gamma_n, L_n > 1.

    ``gammas`` and ``Ls`` may be ints, lists (extended by ``tail``), named
    rules or ``IntRule`` instances.
    """
    g = IntRule.coerce(gammas, tail)
    L = IntRule.coerce(Ls, tail)

    def stage(n):
        gn, Ln = g(n), L(n)
        if gn <= 1 or Ln <= 1:
            raise PreconditionError(f"need gamma_n > 1 and L_n > 1, got gamma={gn}, L={Ln}", (n, 0))
        return the_ts_row(gn, Ln)

    # validate the first stage eagerly so bad constants fail at construction
    stage(1)
    bound = 1
    source = {"family": "the_ts", "gamma": g.to_json() if g.values is not None or g.name else None,
              "L": L.to_json() if L.values is not None or L.name else None, "tail": tail}
    return RankOneSpec(stage, "the_ts", spacer_bound=bound, source=source, the_ts=(g, L))


_NAMED_ROWS = {
    "ferenczi": (0, 1, 0, 0),
    "chacon": (0, 1, 0),
}


def make_named(family: str) -> RankOneSpec:
    """Ferenczi's B_{n+1} = B_n B_n 1 B_n B_n, or Chacon's B_{n+1} = B_n B_n 1 B_n."""
    try:
        row = SpacerRow(_NAMED_ROWS[family])
    except KeyError:
        raise ValueError(f"unknown named family {family!r}") from None
    return RankOneSpec(lambda n: row, family, spacer_bound=1, source={"family": family})


def make_explicit(stages: Iterable[RowLike], tail: str = "repeat_last",
                  spacer_bound: Optional[int] = None) -> RankOneSpec:
    """Finitely many rows, continued by repeating the last row or the whole cycle."""
    rows = tuple(_as_row(r) for r in stages)
    if not rows:
        raise ValueError("at least one stage is required")
    if tail not in TAILS:
        raise ValueError(f"unknown tail policy {tail!r}")
    k = len(rows)

    def stage(n):
        if n <= k:
            return rows[n - 1]
        return rows[-1] if tail == "repeat_last" else rows[(n - 1) % k]

    source = {"family": "explicit", "stages": [{"s": list(r.s)} for r in rows], "tail": tail}
    if spacer_bound is not None:
        source["spacer_bound"] = spacer_bound
    return RankOneSpec(stage, "explicit-with-tail-rule", spacer_bound=spacer_bound, source=source)


def odometer_window_check(spec: RankOneSpec, N: int, W: int) -> bool:
    """Whether every stage in [N, N+W) has constant inner spacers and a zero last spacer.

    This is only a finite-window heuristic for the odometer tail pattern; it
    says nothing about stages past the window.
    """
    if N < 1 or W < 1:
        raise ValueError("N, W >= 1 required")
    for row in spec.rows(N, N + W):
        if row.s[-1] != 0 or len(set(row.inner)) != 1:
            return False
    return True
