"""Slow, obviously-correct reference implementations used only by the tests."""
from fractions import Fraction


def naive_word(rows, n):
    """B_n by direct string concatenation from a list of rows (rows[k-1] is stage k)."""
    b = "0"
    for k in range(1, n):
        b = "".join(b + "1" * s for s in rows[k - 1])
    return b


def factor_set(word, q):
    return {word[i:i + q] for i in range(len(word) - q + 1)}


def naive_counts(word, max_q):
    return [len(factor_set(word, q)) for q in range(1, max_q + 1)]


def sorted_suffix_counts(word, max_q):
    """Distinct factors per length from adjacent LCPs of the sorted suffixes."""
    suffixes = sorted(word[i:] for i in range(len(word)))
    counts = [0] * max_q
    prev = ""
    for suf in suffixes:
        lcp = 0
        while lcp < min(len(prev), len(suf)) and prev[lcp] == suf[lcp]:
            lcp += 1
        for q in range(lcp + 1, min(len(suf), max_q) + 1):
            counts[q - 1] += 1
        prev = suf
    return counts


def naive_right_special(word, max_q):
    out = {}
    for q in range(1, max_q + 1):
        longer = factor_set(word, q + 1)
        out[q] = sorted(w for w in factor_set(word, q) if w + "0" in longer and w + "1" in longer)
    return out


def level_labels(rows, n, m):
    """For each level of C_m, which level of C_n it copies (None for later spacers)."""
    h = 1
    for k in range(1, n):
        h = (len(rows[k - 1])) * h + sum(rows[k - 1])
    labels = list(range(h))
    for k in range(n, m):
        new = []
        for s in rows[k - 1]:
            new += labels + [None] * s
        labels = new
    return labels


def naive_intersection_lo(rows, a_depth, A, b_depth, B, t, D):
    """Mass of levels of C_D lying in A whose t-th image stays inside C_D and lies in B."""
    la = level_labels(rows, a_depth, D)
    lb = level_labels(rows, b_depth, D)
    width = Fraction(1)
    for k in range(1, D):
        width /= len(rows[k - 1])
    hits = sum(1 for p in range(len(la) - t) if la[p] in A and lb[p + t] in B)
    return hits * width
