from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qde.errors import PoleError, ResourceLimitError
from qde.ratfunc import MAX_DEGREE, Poly, RatFunc, poly_gcd, q_bracket, rf_eval, rf_subst_power

# small integer polynomials for properties
coeff_lists = st.lists(st.integers(min_value=-9, max_value=9), max_size=6)
polys = coeff_lists.map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


def P(*cs):
    return Poly(cs)


class TestPoly:
    def test_trailing_zeros_stripped(self):
        assert P(1, 2, 0, 0).coeffs == (1, 2)
        assert P(0, 0).coeffs == ()

    def test_degree_conventions(self):
        assert Poly.zero().degree == -1
        assert Poly.one().degree == 0
        assert Poly.monomial(3).degree == 3

    def test_arithmetic_fixtures(self):
        a = P(1, 1)
        b = P(-1, 1)
        assert a * b == P(-1, 0, 1)
        assert a + b == P(0, 2)
        assert a - a == Poly.zero()
        assert (a * b)(2) == 3

    def test_pow(self):
        assert P(1, 1) ** 3 == P(1, 3, 3, 1)
        assert P(2) ** 0 == Poly.one()
        with pytest.raises(ValueError):
            P(1, 1) ** -1

    @given(polys, nonzero_polys)
    def test_divmod_property(self, a, b):
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero or r.degree < b.degree

    def test_divmod_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            divmod(P(1), Poly.zero())

    def test_monic(self):
        assert P(2, 4).monic() == P(Fraction(1, 2), 1)

    def test_subst_power(self):
        assert P(1, 2, 3).subst_power(2) == P(1, 0, 2, 0, 3)
        assert P(1, 1).subst_power(1) == P(1, 1)

    def test_string_roundtrip(self):
        p = P(Fraction(-1, 2), 0, 1)
        assert Poly.from_strings(p.to_strings()) == p

    def test_render(self):
        assert P(Fraction(-1, 2), 1).render("x") == "-1/2+x"
        assert P(0, -1, 1).render("x") == "-x+x^2"
        assert Poly.zero().render() == "0"

    def test_degree_guard_on_mul(self):
        big = Poly.monomial(60_000)
        with pytest.raises(ResourceLimitError):
            big * big

    def test_degree_guard_on_monomial(self):
        with pytest.raises(ResourceLimitError):
            Poly.monomial(MAX_DEGREE + 1)


class TestPolyGcd:
    def test_fixture(self):
        a = P(-1, 0, 1)           # q^2 - 1
        b = P(1, -2, 1)           # (q-1)^2
        assert poly_gcd(a, b) == P(-1, 1)

    def test_coprime(self):
        assert poly_gcd(P(1, 1), P(2, 1)) == Poly.one()

    def test_zero_cases(self):
        assert poly_gcd(Poly.zero(), P(0, 2)) == P(0, 1)
        with pytest.raises(ValueError):
            poly_gcd(Poly.zero(), Poly.zero())

    @given(nonzero_polys, nonzero_polys)
    def test_gcd_divides_both(self, a, b):
        g = poly_gcd(a, b)
        assert (a % g).is_zero
        assert (b % g).is_zero
        assert g.leading == 1


class TestRatFunc:
    def test_reduction(self):
        f = RatFunc(P(-1, 0, 1), P(-1, 1))  # (q^2-1)/(q-1)
        assert f == RatFunc.from_poly(P(1, 1))

    def test_monic_denominator(self):
        f = RatFunc(P(1), P(-2, 2))
        assert f.den == P(-1, 1)
        assert f.num == P(Fraction(1, 2))

    def test_zero_normalizes(self):
        f = RatFunc(Poly.zero(), P(3, 1))
        assert f.is_zero and f.den == Poly.one()

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RatFunc(P(1), Poly.zero())

    def test_field_identities(self):
        f = RatFunc(P(0, 1), P(1, 0, 1))   # q/(1+q^2)
        g = RatFunc(P(1, 1), P(-1, 1))
        assert f + g - g == f
        assert f * g / g == f
        assert f - f == RatFunc.zero()
        assert (f / f) == RatFunc.one()

    def test_scalar_coercion(self):
        f = RatFunc(P(0, 1))
        assert 1 + f == RatFunc(P(1, 1))
        assert 2 * f == RatFunc(P(0, 2))
        assert f - Fraction(1, 2) == RatFunc(P(Fraction(-1, 2), 1))
        assert 1 / f == RatFunc(P(1), P(0, 1))

    def test_division_by_zero_function(self):
        with pytest.raises(ZeroDivisionError):
            RatFunc.one() / RatFunc.zero()

    def test_pow(self):
        f = RatFunc(P(0, 1), P(1, 1))
        assert f ** 2 == RatFunc(P(0, 0, 1), P(1, 2, 1))
        assert f ** 0 == RatFunc.one()
        assert f ** -1 == RatFunc(P(1, 1), P(0, 1))
        with pytest.raises(ZeroDivisionError):
            RatFunc.zero() ** -1

    def test_eval(self):
        f = RatFunc(P(1, 1), P(-2, 1))
        assert rf_eval(f, 3) == 4
        with pytest.raises(PoleError):
            f.eval_at(2)

    def test_eval_uses_reduced_form(self):
        # the removable singularity at q=1 disappears on construction
        f = RatFunc(P(-1, 0, 1), P(-1, 1))
        assert f.eval_at(1) == 2

    def test_subst_power(self):
        f = RatFunc(P(-1, 1), P(1, 1))
        g = rf_subst_power(f, 2)
        assert g == RatFunc(P(-1, 0, 1), P(1, 0, 1))
        with pytest.raises(ValueError):
            rf_subst_power(f, 0)

    def test_json_roundtrip(self):
        f = RatFunc(P(Fraction(1, 2), 1), P(1, 0, 1))
        assert RatFunc.from_json(f.to_json()) == f

    def test_render(self):
        f = RatFunc(P(0, -1), P(1, 0, 1))
        assert f.render() == "(-q)/(1+q^2)"
        assert RatFunc.from_poly(P(1, 1)).render() == "1+q"


class TestQBracket:
    def test_fixtures(self):
        assert q_bracket(0) == RatFunc.zero()
        assert q_bracket(1) == RatFunc.one()
        assert q_bracket(3) == RatFunc.from_poly(P(1, 1, 1))
        assert q_bracket(2, 3) == RatFunc.from_poly(P(1, 0, 0, 1))

    def test_matches_defining_ratio(self):
        for x in range(1, 6):
            for e in (1, 2, 3):
                num = RatFunc(Poly.one() - Poly.monomial(e * x))
                den = RatFunc(Poly.one() - Poly.monomial(e))
                assert q_bracket(x, e) == num / den

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            q_bracket(-1)
        with pytest.raises(ValueError):
            q_bracket(2, 0)
