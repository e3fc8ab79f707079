import random

from hypothesis import given, settings, strategies as st

from rankone.factor_index import FactorIndex
from rankone.construction import make_the_ts

from oracles import naive_counts, naive_right_special, sorted_suffix_counts


@settings(max_examples=150, deadline=None)
@given(st.text(alphabet="01", min_size=1, max_size=120))
def test_counts_match_naive_sets(word):
    idx = FactorIndex(word)
    q = len(word) + 2
    assert idx.count_by_length(q) == naive_counts(word, q)


@settings(max_examples=80, deadline=None)
@given(st.text(alphabet="01", min_size=2, max_size=80))
def test_right_special_words_match_naive(word):
    q = len(word) - 1
    got = {k: [str(w) for w in ws] for k, ws in FactorIndex(word).right_special_words(q).items()}
    assert got == naive_right_special(word, q)


def test_long_word_against_sorted_suffixes():
    word = str(make_the_ts(2, 2).word(5))[:2000]
    assert FactorIndex(word).count_by_length(300) == sorted_suffix_counts(word, 300)


def test_random_long_word_against_sorted_suffixes():
    rng = random.Random(7)
    word = "".join(rng.choice("01") for _ in range(1500))
    assert FactorIndex(word).count_by_length(60) == sorted_suffix_counts(word, 60)


def test_membership_and_extensions():
    idx = FactorIndex("0010001010010")
    assert "0101" in idx and "11" not in idx
    assert idx.right_extensions("0") == frozenset({0, 1})
    assert idx.right_extensions("01") == frozenset({0})
    assert idx.total_distinct() == sum(idx.count_by_length())
