"""Univariate polynomials and rational functions with exact rational
coefficients.

Polynomials are dense coefficient tuples, degree-ascending, with
trailing zeros stripped (the zero polynomial has an empty tuple).
Rational functions are kept fully reduced with a monic denominator, so
structural equality is semantic equality.

The gcd runs a primitive polynomial remainder sequence over the
integers, which keeps coefficient growth under control for the large
structured denominators (products of ``1 +- q^e``) this package
produces.  A degree guardrail rejects intermediates above
``MAX_DEGREE``: large enough for every check shipped here, small enough
to fail fast on a runaway exponent.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import PoleError, ResourceLimitError
from .exact import format_rational, parse_rational

MAX_DEGREE = 100_000


def _guard_degree(d: int) -> None:
    if d > MAX_DEGREE:
        raise ResourceLimitError(f"polynomial degree {d} exceeds limit {MAX_DEGREE}")


class Poly:
    """Dense univariate polynomial over Fraction, coefficients ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        if k < 0:
            raise ValueError("monomial exponent must be nonnegative")
        _guard_degree(k)
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return Poly()
        _guard_degree(self.degree + other.degree)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly()
        return Poly(tuple(x * c for x in self.coeffs))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        """Exact division with remainder over the rationals."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db, lb = other.degree, other.leading
        q = [Fraction(0)] * max(0, len(r) - db)
        while r and len(r) - 1 >= db:
            t = r[-1] / lb
            pos = len(r) - 1 - db
            q[pos] = t
            for i, bc in enumerate(other.coeffs):
                r[pos + i] -= t * bc
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def __call__(self, x0):
        """Horner evaluation at an exact rational point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def subst_power(self, d: int) -> "Poly":
        """Replace the variable t by t^d."""
        if d < 1:
            raise ValueError("substitution exponent must be positive")
        if self.is_zero or d == 1:
            return self
        _guard_degree(self.degree * d)
        out = [Fraction(0)] * (self.degree * d + 1)
        for i, c in enumerate(self.coeffs):
            out[i * d] = c
        return Poly(out)

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items) -> "Poly":
        return cls(parse_rational(s) for s in items)

    def render(self, var: str = "q") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                term = format_rational(c)
            else:
                mag = format_rational(abs(c))
                head = "" if mag == "1" else f"{mag}*"
                term = f"{head}{var}" + (f"^{i}" if i > 1 else "")
                if c < 0:
                    term = "-" + term
            if parts and not term.startswith("-"):
                parts.append("+" + term)
            else:
                parts.append(term)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self.render()})"


def _int_primitive(p: Poly) -> list[int]:
    """Integer coefficient list of p cleared of content, leading > 0."""
    if p.is_zero:
        return []
    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b over the integers (b nonempty)."""
    a = a[:]
    db = len(b) - 1
    lb = b[-1]
    while a and len(a) - 1 >= db:
        la = a.pop()
        a = [c * lb for c in a]
        shift = len(a) - db
        for i in range(db):
            a[shift + i] -= la * b[i]
        _strip(a)
    return a


def _int_prim_inplace(a: list[int]) -> list[int]:
    if not a:
        return a
    g = 0
    for c in a:
        g = gcd(g, c)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via a primitive remainder sequence over the integers."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    x, y = _int_primitive(a), _int_primitive(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _pseudo_rem(x, y)
        x, y = y, _int_prim_inplace(r)
    return Poly(Fraction(c) for c in x).monic()


_POLY_ONE = Poly.one()
_POLY_ZERO = Poly.zero()


class RatFunc:
    """Reduced fraction of two Poly values; the denominator is monic.

    The constructor always normalizes, so ``==`` compares canonical
    forms and two constructions of the same function are equal objects.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = _POLY_ONE):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator in rational function")
        if num.is_zero:
            num, den = _POLY_ZERO, _POLY_ONE
        else:
            if den.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num // g
                    den = den // g
            lc = den.leading
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def _reduced(cls, num: Poly, den: Poly) -> "RatFunc":
        # private fast path for results that are reduced by construction
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls._reduced(Poly.const(c), _POLY_ONE)

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls._reduced(_POLY_ZERO, _POLY_ONE)

    @classmethod
    def one(cls) -> "RatFunc":
        return cls._reduced(_POLY_ONE, _POLY_ONE)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls._reduced(p, _POLY_ONE)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._reduced(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.const(other) / self

    def __pow__(self, e: int):
        if e == 0:
            return RatFunc.one()
        if e < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den ** (-e), self.num ** (-e))
        return RatFunc._reduced(self.num**e, self.den**e)

    def eval_at(self, q0) -> Fraction:
        """Evaluate at an exact rational point of the reduced form."""
        q0 = Fraction(q0)
        d = self.den(q0)
        if d == 0:
            raise PoleError(f"pole at q = {format_rational(q0)}")
        return self.num(q0) / d

    def subst_power(self, d: int) -> "RatFunc":
        """Reinterpret in a variable Q with q = Q^d; stays reduced."""
        if d == 1:
            return self
        return RatFunc._reduced(self.num.subst_power(d), self.den.subst_power(d))

    def to_json(self) -> dict:
        return {"num": self.num.to_strings(), "den": self.den.to_strings()}

    @classmethod
    def from_json(cls, obj: dict) -> "RatFunc":
        return cls(Poly.from_strings(obj["num"]), Poly.from_strings(obj["den"]))

    def render(self, var: str = "q") -> str:
        n = self.num.render(var)
        if self.den == _POLY_ONE:
            return n
        return f"({n})/({self.den.render(var)})"

    def __repr__(self):
        return f"RatFunc({self.render()})"


def rf_eval(f: RatFunc, q0) -> Fraction:
    return f.eval_at(q0)


def rf_subst_power(f: RatFunc, d: int) -> RatFunc:
    if d < 1:
        raise ValueError("substitution exponent must be positive")
    return f.subst_power(d)


def q_bracket(x: int, base_exp: int = 1) -> RatFunc:
    """The q-integer (1 - q^(e*x)) / (1 - q^e) as a reduced function.

    Expanded directly as the geometric sum 1 + q^e + ... + q^(e*(x-1)),
    which is the reduced form.
    """
    if x < 0:
        raise ValueError("q_bracket needs a nonnegative integer")
    if base_exp < 1:
        raise ValueError("base exponent must be positive")
    if x == 0:
        return RatFunc.zero()
    _guard_degree(base_exp * (x - 1))
    coeffs = [Fraction(0)] * (base_exp * (x - 1) + 1)
    for i in range(x):
        coeffs[base_exp * i] = Fraction(1)
    return RatFunc.from_poly(Poly(coeffs))
