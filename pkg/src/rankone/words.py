"""Finite binary words.

Symbols are kept as ASCII ``b"0"``/``b"1"`` bytes so that slicing, equality,
``find`` and ``count`` all run in C.
"""
from __future__ import annotations

from typing import Iterable, Union

_ALLOWED = frozenset(b"01")

WordLike = Union["Word", str, bytes, Iterable[int]]


class Word:
    """Immutable word over the alphabet {0, 1}."""

    __slots__ = ("_data",)

    def __init__(self, symbols: WordLike = b""):
        if isinstance(symbols, Word):
            data = symbols._data
        elif isinstance(symbols, str):
            data = symbols.encode("ascii")
        elif isinstance(symbols, (bytes, bytearray, memoryview)):
            data = bytes(symbols)
        else:
            data = bytes(48 + int(s) for s in symbols)
        if not _ALLOWED.issuperset(data):
            raise ValueError("words are over the alphabet {0, 1}")
        self._data = data

    @classmethod
    def _trusted(cls, data: bytes) -> "Word":
        w = cls.__new__(cls)
        w._data = data
        return w

    @property
    def data(self) -> bytes:
        return self._data

    @property
    def length(self) -> int:
        return len(self._data)

    @property
    def symbols(self) -> tuple:
        return tuple(b - 48 for b in self._data)

    def zero_count(self) -> int:
        return self._data.count(48)

    def count(self, sub: WordLike) -> int:
        """Number of (possibly overlapping) occurrences of ``sub``."""
        pat = as_bytes(sub)
        if not pat:
            return len(self._data) + 1
        hits, start = 0, self._data.find(pat)
        while start != -1:
            hits += 1
            start = self._data.find(pat, start + 1)
        return hits

    def startswith(self, other: WordLike) -> bool:
        return self._data.startswith(as_bytes(other))

    def endswith(self, other: WordLike) -> bool:
        return self._data.endswith(as_bytes(other))

    def __contains__(self, other: WordLike) -> bool:
        return as_bytes(other) in self._data

    def __len__(self) -> int:
        return len(self._data)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word._trusted(self._data[key])
        return self._data[key] - 48

    def __add__(self, other: WordLike) -> "Word":
        return Word._trusted(self._data + as_bytes(other))

    def __mul__(self, k: int) -> "Word":
        return Word._trusted(self._data * k)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self._data == other._data
        if isinstance(other, str):
            return self._data == other.encode("ascii", "replace")
        if isinstance(other, bytes):
            return self._data == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._data)

    def __str__(self) -> str:
        return self._data.decode("ascii")

    def __repr__(self) -> str:
        if len(self._data) > 40:
            return f"Word({self._data[:20].decode()}...{self._data[-12:].decode()}, length={len(self)})"
        return f"Word('{self}')"


def as_bytes(w: WordLike) -> bytes:
    if isinstance(w, Word):
        return w.data
    return Word(w).data
