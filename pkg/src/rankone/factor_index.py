"""Suffix automaton over {0, 1} for factor counting.

Every state of the automaton stands for the set of factors sharing one
end-position set; those factors are the suffixes of the state's longest
factor with lengths in ``(len(link), len]``.  All of them share the same
right extensions, which makes per-length counts of factors and of
right-special factors a difference-array pass over the states.
"""
from __future__ import annotations

from array import array
from typing import Optional

from .words import Word, WordLike, as_bytes


class FactorIndex:
    """Index of the distinct factors of a fixed binary word."""

    def __init__(self, word: WordLike):
        data = as_bytes(word)
        if not data:
            raise ValueError("cannot index the empty word")
        self.word = Word._trusted(data)
        self._build(data)

    def _build(self, data: bytes) -> None:
        size = 2 * len(data) + 1
        length = array("q", bytes(8 * size))
        link = array("q", [-1]) * size
        nx0 = array("q", [-1]) * size
        nx1 = array("q", [-1]) * size
        first = array("q", [-1]) * size
        trans = (nx0, nx1)
        last, cnt = 0, 1
        for pos, b in enumerate(data):
            cur = cnt
            cnt += 1
            length[cur] = length[last] + 1
            first[cur] = pos
            t = trans[b & 1]
            p = last
            while p != -1 and t[p] == -1:
                t[p] = cur
                p = link[p]
            if p == -1:
                link[cur] = 0
            else:
                q = t[p]
                if length[p] + 1 == length[q]:
                    link[cur] = q
                else:
                    clone = cnt
                    cnt += 1
                    length[clone] = length[p] + 1
                    nx0[clone] = nx0[q]
                    nx1[clone] = nx1[q]
                    link[clone] = link[q]
                    first[clone] = first[q]
                    while p != -1 and t[p] == q:
                        t[p] = clone
                        p = link[p]
                    link[q] = clone
                    link[cur] = clone
            last = cur
        self.n_states = cnt
        self._len = length[:cnt]
        self._link = link[:cnt]
        self._nx = (nx0[:cnt], nx1[:cnt])
        self._first = first[:cnt]

    def _walk(self, pattern: bytes) -> int:
        v = 0
        for b in pattern:
            v = self._nx[b & 1][v]
            if v == -1:
                return -1
        return v

    def __contains__(self, factor: WordLike) -> bool:
        return self._walk(as_bytes(factor)) != -1

    def right_extensions(self, factor: WordLike) -> frozenset:
        """Which of ``factor+"0"``, ``factor+"1"`` occur, as a set of symbols."""
        v = self._walk(as_bytes(factor))
        if v == -1:
            return frozenset()
        return frozenset(a for a in (0, 1) if self._nx[a][v] != -1)

    def _length_histogram(self, max_len: Optional[int], special_only: bool) -> list:
        top = len(self.word) if max_len is None else min(max_len, len(self.word))
        diff = [0] * (top + 2)
        length, link = self._len, self._link
        nx0, nx1 = self._nx
        for v in range(1, self.n_states):
            if special_only and (nx0[v] == -1 or nx1[v] == -1):
                continue
            lo = length[link[v]] + 1
            hi = length[v]
            if lo > top:
                continue
            diff[lo] += 1
            diff[min(hi, top) + 1] -= 1
        out, run = [], 0
        for q in range(1, top + 1):
            run += diff[q]
            out.append(run)
        if max_len is not None and max_len > top:
            out.extend([0] * (max_len - top))
        return out

    def count_by_length(self, max_len: Optional[int] = None) -> list:
        """Distinct factor counts; element ``q - 1`` is the count for length ``q``."""
        return self._length_histogram(max_len, special_only=False)

    def right_special_counts(self, max_len: Optional[int] = None) -> list:
        """Counts of factors w with both w0 and w1 factors, by length (from 1)."""
        return self._length_histogram(max_len, special_only=True)

    def right_special_words(self, max_len: int) -> dict:
        """Right-special factors of length 1..max_len, grouped by length and sorted."""
        out = {q: [] for q in range(1, max_len + 1)}
        data = self.word.data
        length, link, first = self._len, self._link, self._first
        nx0, nx1 = self._nx
        for v in range(1, self.n_states):
            if nx0[v] == -1 or nx1[v] == -1:
                continue
            lo = length[link[v]] + 1
            if lo > max_len:
                continue
            end = first[v] + 1
            for q in range(lo, min(length[v], max_len) + 1):
                out[q].append(Word._trusted(data[end - q:end]))
        for q in out:
            out[q].sort(key=lambda w: w.data)
        return out

    def total_distinct(self) -> int:
        """Number of distinct nonempty factors."""
        length, link = self._len, self._link
        return sum(length[v] - length[link[v]] for v in range(1, self.n_states))


def index_word(w: WordLike) -> FactorIndex:
    return FactorIndex(w)
