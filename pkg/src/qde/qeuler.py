"""The alternating measure, its q-Euler numbers and polynomials, and the
classical Euler polynomials they deform.

Everything here is generic over a coefficient mode.  A mode decides
what a power of q is:

- RationalMode(q0): powers are exact Fractions at a fixed rational q0.
- SymbolicMode(scale): powers are RatFunc monomials in a variable Q
  with q = Q^scale, so an exponent e is representable iff scale*e is an
  integer.  Raising the scale is how fractional arguments like x = 1/3
  stay exact.
- PadicMode(q, cfg): powers are PadicNum values; fractional exponents
  go through the binomial series and need v_p(1 - q) >= 1.

BaseLifted(mode, l) views any mode at base q^l by multiplying every
exponent by l; the sum and integral formulas below never mention l
themselves.

All three value types implement Python arithmetic with int/Fraction
coercion, so the formulas are written once.  Division by zero anywhere
in a formula means the chosen q sits on a pole of the expression and
surfaces as PoleError.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from functools import lru_cache

from .errors import ExponentError, PoleError, PreconditionError
from .exact import format_rational, frac_floor_parts
from .padic import PadicConfig, PadicNum, q_pow
from .ratfunc import Poly, RatFunc
from .reports import IdentityReport, timed_report


class RationalMode:
    """Evaluate with q fixed at an exact rational number."""

    kind = "rational"
    __slots__ = ("q0",)

    def __init__(self, q0):
        object.__setattr__(self, "q0", Fraction(q0))

    def __setattr__(self, name, value):
        raise AttributeError("RationalMode is immutable")

    def q_power(self, e):
        e = Fraction(e)
        if e.denominator != 1:
            raise ExponentError(f"q^({e}) is not representable at a fixed rational q")
        n = int(e)
        if n < 0 and self.q0 == 0:
            raise PoleError("negative power of q = 0")
        return self.q0**n

    def from_rational(self, c) -> Fraction:
        return Fraction(c)

    def describe(self) -> dict:
        return {"mode": "rational", "q": format_rational(self.q0)}


class SymbolicMode:
    """Evaluate with q as an indeterminate.

    The result variable Q satisfies q = Q^scale.  Equality of values
    built at the same scale is plain reduced-form equality; evaluating
    at Q = 1 is the q -> 1 limit regardless of scale.
    """

    kind = "symbolic"
    __slots__ = ("scale",)

    def __init__(self, scale: int = 1):
        if scale < 1:
            raise PreconditionError(f"scale must be a positive integer, got {scale}")
        object.__setattr__(self, "scale", scale)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolicMode is immutable")

    def q_power(self, e) -> RatFunc:
        ee = Fraction(e) * self.scale
        if ee.denominator != 1:
            raise ExponentError(
                f"exponent {e} needs the variable scale to be a multiple of {Fraction(e).denominator}"
            )
        n = int(ee)
        if n >= 0:
            return RatFunc.from_poly(Poly.monomial(n))
        return RatFunc(Poly.one(), Poly.monomial(-n))

    def from_rational(self, c) -> RatFunc:
        return RatFunc.const(c)

    def limit_at_one(self, v: RatFunc) -> Fraction:
        """The q -> 1 limit: evaluate the reduced form at Q = 1."""
        return v.eval_at(1)

    def describe(self) -> dict:
        return {"mode": "symbolic", "scale": self.scale}


class PadicMode:
    """Evaluate with q a p-adic number satisfying v_p(1 - q) >= 1."""

    kind = "padic"
    __slots__ = ("q", "cfg")

    def __init__(self, q: PadicNum, cfg: PadicConfig):
        if q.p != cfg.p:
            raise PreconditionError(f"q lives at p = {q.p} but the config says {cfg.p}")
        t = q - 1
        if not t.is_zero and t.valuation < 1:
            raise PreconditionError(f"padic mode needs v_{cfg.p}(1 - q) >= 1")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "cfg", cfg)

    def __setattr__(self, name, value):
        raise AttributeError("PadicMode is immutable")

    def q_power(self, e) -> PadicNum:
        e = Fraction(e)
        if e.denominator == 1:
            return self.q ** int(e)
        return q_pow(self.q, e, self.cfg)

    def from_rational(self, c) -> PadicNum:
        return PadicNum.from_rational(c, self.cfg.p, self.cfg.prec)

    def describe(self) -> dict:
        qj = self.q.to_json()
        return {"mode": "padic", "p": self.cfg.p, "precision": self.cfg.prec, "q": qj}


class BaseLifted:
    """A mode viewed at base q^base: every exponent is multiplied by base."""

    __slots__ = ("inner", "base")

    def __init__(self, inner, base: int):
        if base < 1:
            raise PreconditionError(f"base exponent must be positive, got {base}")
        if isinstance(inner, BaseLifted):
            base *= inner.base
            inner = inner.inner
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("BaseLifted is immutable")

    @property
    def kind(self) -> str:
        return self.inner.kind

    def q_power(self, e):
        return self.inner.q_power(Fraction(e) * self.base)

    def from_rational(self, c):
        return self.inner.from_rational(c)

    def describe(self) -> dict:
        out = self.inner.describe()
        out["base_exponent"] = self.base
        return out


def root_mode(mode):
    """Strip BaseLifted wrappers."""
    while isinstance(mode, BaseLifted):
        mode = mode.inner
    return mode


@dataclass(frozen=True)
class QEulerValue:
    """A scalar tagged with the coefficient mode that produced it."""

    mode: str
    value: object

    def to_json(self) -> dict:
        return {"mode": self.mode, "value": serialize_value(self.value)}


def serialize_value(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, RatFunc):
        return v.to_json()
    if isinstance(v, PadicNum):
        return v.to_json()
    raise TypeError(f"cannot serialize {type(v).__name__}")


def compare_values(mode, lhs, rhs):
    """Status object for an identity check: lhs vs rhs in this mode.

    Exact modes compare canonical forms.  The p-adic mode reports the
    agreement valuation when the difference cannot be told apart from
    zero at working precision, and a fail witness when it can.
    """
    root = root_mode(mode)
    if root.kind == "padic":
        d = lhs - rhs
        if d.is_exact_zero:
            return "exact"
        if d.is_zero:
            return {"padic_agreement": int(d.valuation), "precision": root.cfg.prec}
        return {
            "fail": {
                "difference_valuation": int(d.valuation),
                "lhs": serialize_value(lhs),
                "rhs": serialize_value(rhs),
            }
        }
    if lhs == rhs:
        return "exact"
    return {"fail": {"lhs": serialize_value(lhs), "rhs": serialize_value(rhs)}}


def _wrap(mode, v) -> QEulerValue:
    return QEulerValue(root_mode(mode).kind, v)


def resolve_prime(mode, p):
    root = root_mode(mode)
    if root.kind == "padic":
        if p is not None and p != root.cfg.p:
            raise PreconditionError(f"p = {p} conflicts with the mode's prime {root.cfg.p}")
        return root.cfg.p
    if p is None:
        raise PreconditionError("this mode carries no prime, pass p explicitly")
    return p


def q_int(x: int, alpha: int, mode):
    """The q-integer of x at weight alpha: 1 + q^alpha + ... + q^(alpha(x-1)).

    Built as the plain geometric sum, no division, so it is safe in
    every mode including q values where 1 - q^alpha vanishes.
    """
    if x < 0:
        raise PreconditionError(f"q_int needs a nonnegative integer, got {x}")
    acc = mode.from_rational(0)
    for i in range(x):
        acc = acc + mode.q_power(alpha * i)
    return acc


def measure(a: int, level: int, mode, p: int = None) -> QEulerValue:
    """Mass of the residue disc a + p^level Z_p under the alternating measure.

    The value is (-q)^a (1 + q) / (1 + q^(p^level)).
    """
    p = resolve_prime(mode, p)
    if level < 1:
        raise PreconditionError(f"level must be positive, got {level}")
    if not 0 <= a < p**level:
        raise PreconditionError(f"need 0 <= a < {p}^{level}, got {a}")
    one = mode.from_rational(1)
    sign = 1 if a % 2 == 0 else -1
    try:
        v = mode.q_power(a) * (one + mode.q_power(1)) / (one + mode.q_power(p**level))
    except ZeroDivisionError:
        raise PoleError("measure undefined at this q (a denominator vanishes)") from None
    return _wrap(mode, sign * v)


@lru_cache(maxsize=None)
def euler_classical(n: int) -> Poly:
    """The n-th Euler polynomial in x, exactly.

    Uses the recurrence sum(C(n,k) E_k, k=0..n) + E_n = 2 x^n.
    """
    if n < 0:
        raise PreconditionError(f"index must be nonnegative, got {n}")
    if n == 0:
        return Poly.one()
    acc = Poly.zero()
    for k in range(n):
        acc = acc + euler_classical(k).scale(comb(n, k))
    return Poly.monomial(n) - acc.scale(Fraction(1, 2))


def periodic_euler(m: int, x) -> Fraction:
    """Anti-periodic extension of E_m from [0, 1): flips sign each step."""
    fl, fr = frac_floor_parts(Fraction(x))
    v = euler_classical(m)(fr)
    return -v if fl % 2 else v


def qeuler_number(n: int, alpha: int, mode) -> QEulerValue:
    """n-th q-Euler number at weight alpha.

    (1+q)/(1-q^alpha)^n * sum_l C(n,l) (-1)^l / (1 + q^(alpha l + 1)).
    """
    _check_n_alpha(n, alpha)
    one = mode.from_rational(1)
    try:
        acc = mode.from_rational(0)
        for l in range(n + 1):
            c = comb(n, l) if l % 2 == 0 else -comb(n, l)
            acc = acc + c / (one + mode.q_power(alpha * l + 1))
        v = (one + mode.q_power(1)) * acc / (one - mode.q_power(alpha)) ** n
    except ZeroDivisionError:
        raise PoleError("pole in q-Euler number (a denominator vanishes at this q)") from None
    return _wrap(mode, v)


def qeuler_poly(n: int, alpha: int, x, mode) -> QEulerValue:
    """n-th q-Euler polynomial at weight alpha and argument x.

    (1+q)/(1-q^alpha)^n * sum_l C(n,l) (-1)^l q^(alpha l x) / (1 + q^(alpha l + 1)).

    x may be any Fraction the mode can represent: integers always work,
    fractional x needs a symbolic scale divisible by its denominator or
    a p-adic q (with the denominator prime to p).
    """
    _check_n_alpha(n, alpha)
    x = Fraction(x)
    one = mode.from_rational(1)
    try:
        acc = mode.from_rational(0)
        for l in range(n + 1):
            c = comb(n, l) if l % 2 == 0 else -comb(n, l)
            acc = acc + c * mode.q_power(alpha * l * x) / (one + mode.q_power(alpha * l + 1))
        v = (one + mode.q_power(1)) * acc / (one - mode.q_power(alpha)) ** n
    except ZeroDivisionError:
        raise PoleError("pole in q-Euler polynomial (a denominator vanishes at this q)") from None
    return _wrap(mode, v)


def qeuler_poly_additive(n: int, alpha: int, x: int, mode) -> QEulerValue:
    """Addition form of the q-Euler polynomial at a nonnegative integer x.

    sum_l C(n,l) q^(alpha l x) E_l * [x]^(n-l), with [x] the weight-alpha
    q-integer of x.  Must agree with qeuler_poly at every integer x.
    """
    _check_n_alpha(n, alpha)
    if not isinstance(x, int) or x < 0:
        raise PreconditionError(f"additive form needs a nonnegative integer x, got {x}")
    bracket = q_int(x, alpha, mode)
    try:
        acc = mode.from_rational(0)
        for l in range(n + 1):
            e_l = qeuler_number(l, alpha, mode).value
            acc = acc + comb(n, l) * mode.q_power(alpha * l * x) * e_l * bracket ** (n - l)
    except ZeroDivisionError:
        raise PoleError("pole in additive form (a denominator vanishes at this q)") from None
    return _wrap(mode, acc)


def distribution_sum(n: int, alpha: int, x, d: int, variant: str, mode) -> QEulerValue:
    """Right side of the odd-modulus distribution relation for qeuler_poly.

    Both variants share the prefactor (1+q)/(1+q^d) * [d]^n:

    - "printed": weights (-1)^a and inner polynomials at base q.
    - "corrected": weights (-q)^a and inner polynomials at base q^d,
      which is what splitting the measure into d residue classes gives.
    """
    _check_n_alpha(n, alpha)
    if d < 1 or d % 2 == 0:
        raise PreconditionError(f"modulus must be odd and positive, got {d}")
    if variant not in ("printed", "corrected"):
        raise PreconditionError(f"unknown variant {variant!r}")
    x = Fraction(x)
    one = mode.from_rational(1)
    inner = mode if variant == "printed" else BaseLifted(mode, d)
    try:
        acc = mode.from_rational(0)
        for a in range(d):
            term = qeuler_poly(n, alpha, Fraction(x + a, d), inner).value
            if variant == "corrected":
                term = term * mode.q_power(a)
            acc = acc + (term if a % 2 == 0 else -term)
        pref = (one + mode.q_power(1)) / (one + mode.q_power(d)) * q_int(d, alpha, mode) ** n
        v = pref * acc
    except ZeroDivisionError:
        raise PoleError("pole in distribution sum (a denominator vanishes at this q)") from None
    return _wrap(mode, v)


def check_additive(n: int, alpha: int, x: int, mode) -> IdentityReport:
    """eq4: closed form vs addition form at an integer argument."""
    params = {"n": n, "alpha": alpha, "x": x, "mode": root_mode(mode).describe()}

    def run():
        lhs = qeuler_poly(n, alpha, x, mode).value
        rhs = qeuler_poly_additive(n, alpha, x, mode).value
        return compare_values(mode, lhs, rhs)

    return timed_report("eq4", "printed", params, run)


def check_distribution(n: int, alpha: int, x, d: int, variant: str, mode) -> IdentityReport:
    """eq5: qeuler_poly vs its odd-modulus distribution sum."""
    x = Fraction(x)
    params = {"n": n, "alpha": alpha, "x": str(x), "d": d, "mode": root_mode(mode).describe()}

    def run():
        lhs = qeuler_poly(n, alpha, x, mode).value
        rhs = distribution_sum(n, alpha, x, d, variant, mode).value
        return compare_values(mode, lhs, rhs)

    return timed_report("eq5", variant, params, run)


def _check_n_alpha(n: int, alpha: int) -> None:
    if n < 0:
        raise PreconditionError(f"degree must be nonnegative, got {n}")
    if alpha < 1:
        raise PreconditionError(f"weight must be a positive integer, got {alpha}")
