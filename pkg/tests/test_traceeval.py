import itertools
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kottrace.exactpoly import AffineExp, HalfInt, LaurentPoly, QuadSurd
from kottrace.heckefun import compositions
from kottrace.traceeval import (
    GlobalInput,
    SteinbergProductRep,
    borel_normalized_sign,
    hecke_matrix,
    parity_relation_check,
    point_count,
    steinberg_shortcut,
    trace_summands,
    twisted_compact_trace,
    unit_sign,
)

St = SteinbergProductRep.steinberg


def qpow(twice_alpha):
    return LaurentPoly.q_power(AffineExp(0, twice_alpha), 0)


def stable_reps(n):
    for c in compositions(n):
        if not c.is_palindromic():
            continue
        k = len(c)
        for half in itertools.product(("trivial", "quadratic"), repeat=(k + 1) // 2):
            chars = half + tuple(reversed(half[: k // 2]))
            yield SteinbergProductRep(c, chars)


class TestHeckeMatrix:
    def test_examples(self):
        assert hecke_matrix(St(2)).entries == ((1, HalfInt(1)), (1, HalfInt(-1)))
        m = hecke_matrix(SteinbergProductRep((1, 1), ("trivial", "quadratic")))
        assert m.entries == ((1, HalfInt(0)), (-1, HalfInt(0)))
        assert hecke_matrix(St(3)).entries == ((1, HalfInt(2)), (1, HalfInt(0)), (1, HalfInt(-2)))

    def test_block_sums_vanish(self):
        rep = SteinbergProductRep((3, 1, 2))
        m, start = hecke_matrix(rep), 0
        for b in rep.blocks:
            assert sum(t.twice for _, t in m.entries[start : start + b]) == 0
            start += b

    def test_bad_char(self):
        with pytest.raises(ValueError):
            SteinbergProductRep((2,), ("cubic",))


class TestTrace:
    def test_st2(self):
        assert twisted_compact_trace(2, 1, St(2)).poly == qpow(3)

    def test_st3(self):
        assert twisted_compact_trace(3, 1, St(3)).poly == qpow(6)

    def test_s_zero(self):
        # phi is the unit; every surviving Q needs a trivial-intersection coset
        # and the truncation kills the all-zero composition unless Q = G
        for n in (2, 3):
            assert twisted_compact_trace(n, 0, St(n)).poly.is_zero()
        assert twisted_compact_trace(1, 0, St(1)).poly == LaurentPoly.constant(1)

    def test_numeric(self):
        # q^{3 alpha/2} at q = 9
        assert twisted_compact_trace(2, 1, St(2), p=3, alpha=2).value == 729
        r = twisted_compact_trace(2, 1, St(2), p=3, alpha=1)
        assert r.value == 27
        assert r.to_json() == "27"

    def test_numeric_half_power(self):
        # q^{3/2} at q = 4
        assert twisted_compact_trace(2, 1, St(2), p=2, alpha=1).value == 8

    def test_needs_both_p_and_alpha(self):
        with pytest.raises(ValueError):
            twisted_compact_trace(2, 1, St(2), p=3)

    def test_rejects_non_prime(self):
        with pytest.raises(ValueError):
            twisted_compact_trace(2, 1, St(2), p=4, alpha=1)

    def test_rejects_unstable_rep(self):
        with pytest.raises(ValueError):
            twisted_compact_trace(3, 1, SteinbergProductRep((1, 2)))
        with pytest.raises(ValueError):
            twisted_compact_trace(2, 1, SteinbergProductRep((1, 1), ("trivial", "quadratic")))

    def test_bad_s(self):
        with pytest.raises(ValueError):
            twisted_compact_trace(2, 3, St(2))

    def test_unit_sign_flips_even_blocks(self):
        # the unit convention differs from the default by (-1)^{floor(n/2)}
        for n in range(1, 5):
            for s in range(n + 1):
                a = twisted_compact_trace(n, s, St(n)).poly
                b = twisted_compact_trace(n, s, St(n), sign=unit_sign).poly
                assert b == a * (-1 if (n // 2) % 2 else 1)

    def test_bad_sign_function(self):
        with pytest.raises(ValueError):
            twisted_compact_trace(2, 1, St(2), sign=lambda q, w, r: 2)

    def test_alpha_parity_resolution(self):
        rep = SteinbergProductRep((1, 1), ("quadratic", "quadratic"))
        for s in range(3):
            full = twisted_compact_trace(2, s, rep)
            for alpha in (1, 2, 3, 4):
                folded = twisted_compact_trace(2, s, rep, alpha_parity=alpha % 2)
                assert folded.poly.evaluate_q(alpha, 9) == full.poly.evaluate_q(alpha, 9)
        with pytest.raises(ValueError):
            twisted_compact_trace(2, 1, rep, p=3, alpha=2, alpha_parity=1)

    def test_numeric_equals_symbolic(self):
        for rep in stable_reps(4):
            for s in range(5):
                sym = twisted_compact_trace(4, s, rep).poly
                for alpha in (1, 2, 3):
                    assert twisted_compact_trace(4, s, rep, p=5, alpha=alpha).value == sym.evaluate_q(alpha, 25)


class TestShortcut:
    def test_examples(self):
        assert steinberg_shortcut(2, 1).poly == qpow(3)
        assert steinberg_shortcut(3, 1).poly == qpow(6)
        assert steinberg_shortcut(2, 2).poly.is_zero()

    @pytest.mark.parametrize("n", range(1, 6))
    def test_matches_full_trace(self, n):
        for s in range(n + 1):
            assert twisted_compact_trace(n, s, St(n)).poly == steinberg_shortcut(n, s).poly


class TestSignIndependence:
    @pytest.mark.parametrize("n", range(1, 5))
    def test_even_alpha(self, n):
        # for even alpha each monomial's sign (-1)^{alpha * ...} is +1
        for c in compositions(n):
            if not c.is_palindromic():
                continue
            values = set()
            reps = [r for r in stable_reps(n) if r.blocks == c]
            for s in range(n + 1):
                for alpha in (2, 4):
                    values = {twisted_compact_trace(n, s, r, p=3, alpha=alpha).value for r in reps}
                    assert len(values) == 1


class TestPointCount:
    def test_empty(self):
        assert point_count(GlobalInput(2, 1, 3, 2, 1)) == 0

    def test_even_alpha(self):
        for p in (2, 3, 5, 7):
            assert point_count(GlobalInput(2, 1, p, 2, 1, ((St(2), 1),))) == p**3

    def test_odd_alpha_is_irrational(self):
        # p^{-1/2} * (p^2)^{3/2} = p^{5/2}
        with pytest.warns(UserWarning):
            got = point_count(GlobalInput(2, 1, 3, 1, 1, ((St(2), 1),)))
        assert got == QuadSurd.prime_power(3, 5) and str(got) == "9*sqrt(3)"

    def test_unequal_case_has_no_prefactor(self):
        got = point_count(GlobalInput(3, 1, 2, 1, 2, ((St(3), "1/2"),)))
        assert got == 4**3

    def test_ker1_and_coefficients(self):
        with pytest.warns(UserWarning):
            got = point_count(GlobalInput(2, 1, 3, 2, 3, ((St(2), 2), (St(2), "-1/2"))))
        assert got == 3 * Fraction(3, 2) * 27

    def test_non_integer_warns(self):
        with pytest.warns(UserWarning):
            point_count(GlobalInput(2, 1, 3, 2, 1, ((St(2), "1/2"),)))

    def test_validation(self):
        with pytest.raises(ValueError):
            GlobalInput(2, 1, 6, 2, 1)
        with pytest.raises(ValueError):
            GlobalInput(2, 1, 3, 0, 1)
        with pytest.raises(ValueError):
            GlobalInput(2, 1, 3, 2, 0)
        with pytest.raises(ValueError):
            GlobalInput(2, 1, 3, 2, 1, ((St(3), 1),))


class TestParity:
    def test_st2(self):
        assert parity_relation_check(GlobalInput(2, 1, 3, 1, 1, ((St(2), 1),)), 1)

    def test_empty(self):
        assert parity_relation_check(GlobalInput(2, 1, 5, 1, 1), 1)

    def test_mixed_terms(self):
        terms = ((St(4), 2), (SteinbergProductRep((2, 2), ("quadratic", "quadratic")), -1), (SteinbergProductRep((1, 2, 1)), 3))
        assert parity_relation_check(GlobalInput(4, 2, 3, 1, 1, terms), 3)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            parity_relation_check(GlobalInput(3, 1, 3, 1, 1), 1)
        with pytest.raises(ValueError):
            parity_relation_check(GlobalInput(2, 1, 3, 1, 1), 2)


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from([2, 4]),
    st.sampled_from([2, 3, 5, 7]),
    st.sampled_from([1, 3]),
    st.integers(1, 3),
    st.data(),
)
def test_parity_relation_random(n, p, k, ker1, data):
    reps = list(stable_reps(n))
    chosen = data.draw(st.lists(st.sampled_from(reps), max_size=3))
    coeffs = data.draw(st.lists(st.fractions(-3, 3, max_denominator=3), min_size=len(chosen), max_size=len(chosen)))
    g = GlobalInput(n, n // 2, p, 1, ker1, tuple(zip(chosen, coeffs)))
    assert parity_relation_check(g, k)


def test_summands_carry_signs():
    rows = trace_summands(2, 1, St(2))
    assert [(q.parts, w.images, e) for q, w, e, _ in rows] == [((1, 1), (1, 2), 1)]
    assert borel_normalized_sign(rows[0][0], rows[0][1], St(2)) == -1
