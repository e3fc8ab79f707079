"""The twelve acceptance criteria, one test each.

Every test records a PASS/FAIL line that is printed in the terminal summary
(see conftest.py).  Running this file directly runs only these criteria.
"""
from contextlib import contextmanager
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rankone.complexity import language_sample, lower_bound_witness, ratio_profile, subshift_complexity
from rankone.construction import make_explicit, make_named, make_the_ts
from rankone.family import (GrowthFunction, TheTsParams, choose_params_minimal, choose_params_msj,
                            choose_params_totally_ergodic, minimal_certificates, predicted_increment,
                            totally_ergodic_certificates)
from rankone.rewrite import MergeSchedule, merge_stages, shift_constant
from rankone.tower import (LevelSet, column_view, cylinder_cross_check, empirical_measure,
                           finite_measure_report, kappa_check, measure_intersection, wm_diagnostic)

from conftest import record


@contextmanager
def criterion(number, detail):
    try:
        yield
    except BaseException:
        record(number, False, detail)
        print(f"criterion {number}: FAIL  {detail}")
        raise
    record(number, True, detail)
    print(f"criterion {number}: PASS  {detail}")


def test_c01_height_anchors():
    with criterion(1, "p(h_n) = (1 + 1/L) h_n: p(10)=15, p(64)=96, p(388)=582"):
        table = subshift_complexity(make_the_ts(2, 2), 388)
        assert (table.p(10), table.p(64), table.p(388)) == (15, 96, 582)
        for h in (10, 64, 388):
            assert table.p(h) == Fraction(3, 2) * h


def test_c02_increment_bands():
    with criterion(2, "measured delta(q) = predicted band increment on (h_2, h_4] for (2,2) and (3,2)"):
        for g, L in ((2, 2), (3, 2)):
            params = TheTsParams(g, L)
            lo, hi = params.height(2), params.height(4)
            table = subshift_complexity(params.spec(), hi + 1)
            for q in range(lo + 1, hi + 1):
                assert table.delta(q) == predicted_increment(params, q), (g, L, q)


def test_c03_ratio_extremes():
    with criterion(3, "max p(q)/q near 5/3 at the breakpoint, 3/2 at heights; Ferenczi within 0.05"):
        spec = make_the_ts(2, 2)
        h3, h4, h5 = spec.height(3), spec.height(4), spec.height(5)
        table = subshift_complexity(spec, h5)
        prof = ratio_profile(table, h3 + 1, h5)
        assert prof.argmax_ratio == h4 + h4 // 2 + 1
        assert abs(prof.max_ratio - Fraction(5, 3)) <= Fraction(1, h3)
        assert table.ratio(h4) == table.ratio(h5) == Fraction(3, 2)
        fer = make_named("ferenczi")
        ftable = subshift_complexity(fer, fer.height(6))
        fprof = ratio_profile(ftable, fer.height(4) + 1, fer.height(6))
        assert abs(fprof.max_ratio - Fraction(5, 3)) <= Fraction(1, 20)
        assert abs(fprof.min_ratio - Fraction(3, 2)) <= Fraction(1, 20)


def test_c04_cassaigne():
    with criterion(4, "delta(q) = right-special count for every q <= 2000 (theTs, Ferenczi, Chacon)"):
        for spec in (make_the_ts(2, 2), make_named("ferenczi"), make_named("chacon")):
            sample = language_sample(spec, 2001)
            for q in range(1, 2001):
                assert sample.table.delta(q) == sample.rs_counts[q], q


def test_c05_hedlund_morse_floor():
    with criterion(5, "p(q) >= q + 1 on every aperiodic test spec"):
        specs = [make_the_ts(2, 2), make_the_ts(3, 2), make_the_ts(2, 3), make_named("ferenczi"),
                 make_named("chacon"), make_explicit([(0, 1, 2, 0)]),
                 make_explicit([(0, 2, 0), (1, 0, 0)], tail="repeat_cycle")]
        for spec in specs:
            table = subshift_complexity(spec, 1000)
            assert all(table.p(q) >= q + 1 for q in range(1, 1001))


REWRITE_CASES = {"merge": 0, "shift": 0}
CAP = 20000

inner_rows = st.lists(st.lists(st.integers(0, 3), min_size=1, max_size=3), min_size=1, max_size=4)


@settings(max_examples=120, deadline=None)
@given(inner_rows, st.booleans(), st.lists(st.integers(1, 3), min_size=1, max_size=3))
def _merge_case(rows, cycle, gaps):
    spec = make_explicit([r + [0] for r in rows], tail="repeat_cycle" if cycle else "repeat_last")
    points = [1]
    for g in gaps:
        points.append(points[-1] + g)
    sched = MergeSchedule(tuple(points))
    merged = merge_stages(spec, sched)
    for t in range(1, 6):
        n = sched.n(t)
        if spec.height(n) > CAP:
            break
        assert merged.height(t) == spec.height(n)
        assert merged.word(t, CAP) == spec.word(n, CAP)
    REWRITE_CASES["merge"] += 1


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2), st.integers(1, 2), st.integers(1, 3),
       st.lists(st.lists(st.booleans(), min_size=1, max_size=4), min_size=1, max_size=3))
def _shift_case(c, gap, N, pattern):
    d = c + gap
    rows = [[d if bit else c for bit in r] + [0] for r in pattern]
    spec = make_explicit(rows, tail="repeat_cycle")
    shifted = shift_constant(spec, N, c, d)
    for n in range(N + 1, N + 5):
        if spec.height(n) + c > CAP:
            break
        assert shifted.word(n, CAP) == spec.word(n, CAP) + "1" * c
    REWRITE_CASES["shift"] += 1


def test_c06_rewrite_exactness():
    with criterion(6, ">= 100 random merges give B~_t = B_{n_t}; shifts give B~_n = B_n 1^c"):
        _merge_case()
        _shift_case()
        assert REWRITE_CASES["merge"] >= 100 and REWRITE_CASES["shift"] >= 100


def test_c07_lower_bound_witness():
    with criterion(7, "witness with p(q) >= 3q/2 + (p(h_n) - h_n) - 3 for n = 2, 3; p(55) = 87 >= 84.5"):
        spec = make_the_ts(2, 2)
        assert lower_bound_witness(spec, 2, 3) is not None
        assert lower_bound_witness(spec, 3, 3) is not None
        table = subshift_complexity(spec, 64)
        bound = Fraction(3, 2) * 55 + (table.p(10) - 10) - 3
        assert table.p(55) == 87 and bound == Fraction(169, 2) and table.p(55) >= bound


def test_c08_kappa_bound():
    with criterion(8, "mu(T^t I cap I), mu(T^t I cap J) >= kappa^ell mu(I) for n in 2..4, ell in 1..2"):
        for spec, kappa in ((make_named("chacon"), Fraction(1, 3)), (make_the_ts(2, 2), Fraction(1, 6))):
            for n in (2, 3, 4):
                for ell in (1, 2):
                    for rec in kappa_check(spec, n, ell, ell):
                        assert rec.kappa == kappa
                        assert rec.holds is True
                        assert rec.measured_lo >= kappa**ell * column_view(spec, n).level_width


def test_c09_finite_measure():
    with criterion(9, "mu(C_4) = 40/27 (Chacon), 388/216 (theTs); partial sums bounded"):
        chacon, ts = make_named("chacon"), make_the_ts(2, 2)
        assert column_view(chacon, 4).column_measure == Fraction(40, 27)
        assert column_view(ts, 4).column_measure == Fraction(388, 216)
        for spec in (chacon, ts):
            rep = finite_measure_report(spec, 10)
            assert rep.bounded
            steps = [rep.partial_sums[0]] + [b - a for a, b in zip(rep.partial_sums, rep.partial_sums[1:])]
            for n, step in enumerate(steps, start=1):
                assert 0 <= step <= Fraction(2 * rep.spacer_bound, 2 ** (n - 1))


def test_c10_empirical_vs_tower():
    with criterion(10, "empirical [0] at n=4 is 216/387; gaps <= len(w)/h_n for 0, 1, 01"):
        spec = make_the_ts(2, 2)
        assert empirical_measure(spec, "0", 4) == Fraction(216, 387)
        for w in ("0", "1", "01"):
            rec = cylinder_cross_check(spec, w, 4)
            assert rec.gap <= Fraction(len(w), spec.height(4))


def test_c11_parameter_recipes():
    with criterion(11, "minimal gives gamma=3, msj gives (2,3), total ergodicity gives 2,2,6,120; certificates hold"):
        f = GrowthFunction(name="ceil-sqrt")
        minimal = choose_params_minimal(Fraction(1, 10), f)
        assert minimal.gamma(1) == 3
        assert all(c.holds for c in minimal_certificates(minimal, f, 4))
        msj = choose_params_msj(Fraction(1, 2))
        assert (msj.gamma(1), msj.L(1)) == (2, 3)
        ident = GrowthFunction(name="identity")
        te = choose_params_totally_ergodic(ident)
        assert (te.gamma(1), te.L(1), te.gamma(2), te.L(2)) == (2, 2, 6, 120)
        certs = totally_ergodic_certificates(te, ident, 3)
        assert certs and all(c.holds for c in certs)


def test_c12_mixing_diagnostic():
    with criterion(12, "Cesaro curve of theTs(2,3) at T=200 below T=50 (cap 6); odometer spikes at t = h_n"):
        spec = make_the_ts(2, 3)
        A = LevelSet(2, [0])
        curve = wm_diagnostic(spec, A, A, 200, 6)
        c50, c200 = curve[49], curve[199]
        assert c200.hi < c50.lo
        odo = make_explicit([(0, 0, 0)])
        B = LevelSet(2, [0])
        mass = B.mass(odo)
        for m in range(2, 6):
            lo, hi = measure_intersection(odo, B, B, odo.height(m), 6)
            assert hi == mass and lo >= Fraction(2, 3) * mass
        for t in (1, 2):
            assert measure_intersection(odo, B, B, t, 6) == (0, 0)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
