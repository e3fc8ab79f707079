import pytest

from rankone.construction import (IntRule, SpacerRow, build_word, expand_stage, heights, make_explicit,
                                  make_named, make_the_ts, odometer_window_check)
from rankone.errors import CapacityError, PreconditionError

from oracles import naive_word


def test_the_ts_words_and_heights(ts22):
    assert ts22.word(2) == "0101001010"
    assert heights(ts22, 8) == [1, 10, 64, 388, 2332, 13996, 83980, 503884]
    assert ts22.zero_count(3) == 36


def test_the_ts_closed_form_heights(ts22):
    # h_n = (9 * 6^(n-1) - 4) / 5
    for n in range(1, 12):
        assert ts22.height(n) * 5 == 9 * 6 ** (n - 1) - 4


def test_named_families():
    chacon, ferenczi = make_named("chacon"), make_named("ferenczi")
    assert chacon.word(3) == "0010001010010"
    assert [chacon.height(n) for n in range(1, 8)] == [(3**n - 1) // 2 for n in range(1, 8)]
    assert [ferenczi.height(n) for n in range(1, 8)] == [(4**n - 1) // 3 for n in range(1, 8)]
    assert ferenczi.word(2) == "00100"


def test_words_match_naive_expansion():
    rows = [(0, 2, 1), (1, 0), (0, 0, 3, 0)]
    spec = make_explicit(rows, tail="repeat_cycle")
    long_rows = [rows[k % 3] for k in range(8)]
    for n in range(1, 7):
        assert spec.word(n) == naive_word(long_rows, n)


def test_expand_stage_length_matches_recurrence(ts22):
    for n in range(1, 5):
        assert len(expand_stage(ts22.word(n), ts22.row(n))) == ts22.height(n + 1)


def test_prefix_and_suffix_law(ts22, chacon):
    for spec in (ts22, chacon):
        for n in range(1, 5):
            for m in range(n + 1, 6):
                assert spec.word(m).startswith(spec.word(n))
                assert spec.word(m).endswith(spec.word(n))
                assert spec.word(m)[0] == 0


def test_zero_count_multiplies():
    spec = make_explicit([(0, 2, 1), (1, 0, 0)], tail="repeat_cycle")
    for n in range(1, 8):
        assert spec.zero_count(n + 1) == (spec.row(n).r + 1) * spec.zero_count(n)
        assert spec.word(n).zero_count() == spec.zero_count(n)


def test_capacity_is_enforced_but_heights_are_not():
    spec = make_the_ts("(n+1)!", 3)
    assert spec.height(12) > 10**20
    state = build_word(spec, 12, cap=1000)
    assert state.word is None and state.height == spec.height(12)
    with pytest.raises(CapacityError) as info:
        build_word(spec, 12, cap=1000, require=True)
    assert info.value.required == spec.height(12)


def test_parameter_validation():
    with pytest.raises(PreconditionError):
        make_the_ts(1, 2)
    with pytest.raises(ValueError):
        SpacerRow((0,))
    with pytest.raises(ValueError):
        SpacerRow((0, -1))
    with pytest.raises(PreconditionError):
        make_explicit([(0, 2)], spacer_bound=1).row(1)


def test_int_rules():
    assert IntRule([2, 3], tail="repeat_last")(5) == 3
    assert IntRule([2, 3], tail="repeat_cycle")(5) == 2
    assert IntRule.named("n+1")(4) == 5
    assert IntRule.named("2^n").behavior() == ("divergent", None)
    assert IntRule.constant(4).bounded


def test_odometer_window():
    assert odometer_window_check(make_explicit([(0, 0, 0)]), 1, 5)
    assert odometer_window_check(make_explicit([(2, 2, 0)]), 1, 5)
    assert not odometer_window_check(make_the_ts(2, 2), 1, 5)
