from fractions import Fraction

import pytest

from qde.errors import PreconditionError, ResourceLimitError
from qde.oracle import LEVEL_GUARD, IntegrandSpec, closed_form, convergence_profile, riemann_level
from qde.padic import PadicConfig, PadicNum, agreement_valuation
from qde.qeuler import PadicMode, RationalMode, SymbolicMode, qeuler_poly
from qde.ratfunc import Poly, RatFunc

SYM = SymbolicMode()
RAT4 = RationalMode(4)


def profile_vals(f, levels, mode, p=None):
    return [row["valuation"] for row in convergence_profile(f, levels, mode, p)]


class TestSpec:
    def test_constructors(self):
        b = IntegrandSpec.bracket_power(2, alpha=1, x=Fraction(1, 3), l=3)
        assert (b.kind, b.n, b.x, b.base_exponent) == ("bracket_power", 2, Fraction(1, 3), 3)
        q = IntegrandSpec.q_power(2)
        assert (q.kind, q.e) == ("q_power", 2)

    def test_describe(self):
        assert IntegrandSpec.q_power(2, l=3).describe() == {"kind": "q_power", "e": 2, "l": 3}
        d = IntegrandSpec.bracket_power(1, x=Fraction(1, 2)).describe()
        assert d == {"kind": "bracket_power", "n": 1, "alpha": 1, "x": "1/2", "l": 1}

    def test_validation(self):
        with pytest.raises(PreconditionError):
            IntegrandSpec(kind="mystery")
        with pytest.raises(PreconditionError):
            IntegrandSpec.bracket_power(-1)
        with pytest.raises(PreconditionError):
            IntegrandSpec.q_power(1, l=0)


class TestRiemannLevel:
    def test_constant_has_unit_mass(self):
        one = IntegrandSpec.q_power(0)
        for level in (1, 2, 3):
            assert riemann_level(one, level, SYM, 3).value == RatFunc.one()

    def test_q_power_symbolic_fixture(self):
        # level-1 alternating sum of q^(2a) at p = 3
        v = riemann_level(IntegrandSpec.q_power(2), 1, SYM, 3).value
        want = RatFunc(Poly((1, 0, 0, -1, 0, 0, 1)), Poly((1, -1, 1)))
        assert v == want

    def test_q_power_levels_match_geometric_law(self):
        # the level-n sum collapses to (1+q)(1+q^((e+1) p^n)) over
        # (1+q^(e+1))(1+q^(p^n)) by geometric pairing
        for e in (1, 2):
            for n in (1, 2):
                got = riemann_level(IntegrandSpec.q_power(e), n, SYM, 3).value
                pn = 3**n
                one = RatFunc.one()
                want = (
                    (one + SYM.q_power(1))
                    * (one + SYM.q_power((e + 1) * pn))
                    / ((one + SYM.q_power(e + 1)) * (one + SYM.q_power(pn)))
                )
                assert got == want

    def test_level_zero_rejected(self):
        with pytest.raises(PreconditionError):
            riemann_level(IntegrandSpec.q_power(0), 0, SYM, 3)

    def test_guardrail(self):
        with pytest.raises(ResourceLimitError):
            riemann_level(IntegrandSpec.q_power(0), 20, SYM, 7)
        assert 7**20 > LEVEL_GUARD


class TestClosedForm:
    def test_q_power(self):
        v = closed_form(IntegrandSpec.q_power(2), SYM).value
        assert v == (RatFunc.one() + SYM.q_power(1)) / (RatFunc.one() + SYM.q_power(3))

    def test_bracket_power_is_qeuler(self):
        f = IntegrandSpec.bracket_power(2, alpha=1, x=0)
        assert closed_form(f, SYM).value == qeuler_poly(2, 1, 0, SYM).value

    def test_lifted_base(self):
        f = IntegrandSpec.q_power(0, l=5)
        assert closed_form(f, SYM).value == RatFunc.one()


PINNED = [
    (IntegrandSpec.q_power(0), [1, 2, 3, 4], [None, None, None, None]),
    (IntegrandSpec.bracket_power(1), [1, 2, 3, 4], [1, 2, 3, 4]),
    (IntegrandSpec.bracket_power(2), [1, 2, 3, 4], [1, 2, 3, 4]),
    (IntegrandSpec.q_power(2), [1, 2, 3, 4], [2, 3, 4, 5]),
    (IntegrandSpec.bracket_power(2, alpha=1, x=Fraction(1, 3), l=3), [1, 2, 3], [0, 1, 2]),
]


class TestConvergenceProfile:
    @pytest.mark.parametrize("f,levels,want", PINNED)
    def test_pinned_rational_profiles(self, f, levels, want):
        assert profile_vals(f, levels, RAT4, 3) == want

    def test_padic_mode_cross_check(self):
        cfg = PadicConfig(3, 32)
        mode = PadicMode(PadicNum.from_rational(Fraction(4), 3, 32), cfg)
        f = IntegrandSpec.bracket_power(2)
        assert profile_vals(f, [1, 2, 3], mode) == [1, 2, 3]

    def test_profiles_climb(self):
        vals = profile_vals(IntegrandSpec.bracket_power(3), [1, 2, 3, 4], RAT4, 3)
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_symbolic_mode_rejected(self):
        f = IntegrandSpec.bracket_power(1)
        with pytest.raises(PreconditionError):
            convergence_profile(f, [1], SYM, 3)

    def test_guard_trips_before_any_work(self):
        # level 8 at p = 7 is over the guardrail; level 7 under it is
        # expensive, so the pre-check must fire without computing it
        f = IntegrandSpec.q_power(0)
        with pytest.raises(ResourceLimitError):
            convergence_profile(f, [7, 8], RationalMode(8), 7)
