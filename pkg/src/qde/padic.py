"""Capped-precision p-adic arithmetic for odd primes.

A nonzero value is stored as ``unit * p^val + O(p^(val+prec))`` with the
unit coprime to p and reduced mod p^prec, so ``prec`` counts significant
p-adic digits.  Zero comes in two flavors: the exact zero (infinite
valuation) and an approximate zero O(p^N) left over when a sum cancels
to the working precision.  Addition caps the result at the smaller
absolute precision of the operands and division keeps the smaller
relative precision, so the precision field of any result is an honest
claim, never an optimistic one.

On top of the ring operations the module provides the Teichmuller
character, exponentiation q^x for a p-adic integer exponent via the
binomial series, and the unit-normalized bracket built from both.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import inf, isqrt

from .errors import ConvergenceError, PreconditionError, ResourceLimitError

DEFAULT_PRECISION = 32

_SERIES_MAX_TERMS = 10_000


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    f = 3
    top = isqrt(n)
    while f <= top:
        if n % f == 0:
            return False
        f += 2
    return True


def _vp(n: int, p: int) -> int:
    """Valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_valuation(x, p: int):
    """v_p of an exact Fraction or int; inf for zero."""
    x = Fraction(x)
    if x == 0:
        return inf
    return _vp(x.numerator, p) - _vp(x.denominator, p)


@dataclass(frozen=True)
class PadicConfig:
    """Prime and default working precision (significant p-digits)."""

    p: int
    prec: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise PreconditionError(f"p must be an odd prime, got {self.p}")
        if self.prec < 1:
            raise PreconditionError(f"precision must be >= 1, got {self.prec}")


class PadicNum:
    """One p-adic number at a tracked precision.

    The constructor normalizes: the unit is reduced mod p^prec, any
    p-power left in it migrates into the valuation, and a unit that
    vanishes entirely collapses to the approximate zero O(p^(val+prec)).
    """

    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p: int, val, unit: int, prec: int):
        if unit == 0:
            if val is not inf:
                # approximate zero: all we know is the value is O(p^(val+prec))
                val = val + prec
            prec = 0
        else:
            if prec < 1:
                raise ValueError("nonzero value needs precision >= 1")
            unit %= p**prec
            if unit == 0:
                val, prec = val + prec, 0
            else:
                g = _vp(unit, p)
                if g:
                    val += g
                    prec -= g
                    unit = (unit // p**g) % p**prec
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("PadicNum is immutable")

    @classmethod
    def zero(cls, p: int) -> "PadicNum":
        return cls(p, inf, 0, 0)

    @classmethod
    def approx_zero(cls, p: int, n: int) -> "PadicNum":
        """The value O(p^n): indistinguishable from zero at this precision."""
        return cls(p, n, 0, 0)

    @classmethod
    def from_rational(cls, x, p: int, prec: int = DEFAULT_PRECISION) -> "PadicNum":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        vn = _vp(x.numerator, p)
        vd = _vp(x.denominator, p)
        num = x.numerator // p**vn
        den = x.denominator // p**vd
        m = p**prec
        return cls(p, vn - vd, num * pow(den, -1, m) % m, prec)

    @classmethod
    def from_int(cls, n: int, p: int, prec: int = DEFAULT_PRECISION) -> "PadicNum":
        return cls.from_rational(n, p, prec)

    @property
    def is_exact_zero(self) -> bool:
        return self.unit == 0 and self.val is inf

    @property
    def is_zero(self) -> bool:
        """True when the value cannot be told apart from zero."""
        return self.unit == 0

    @property
    def valuation(self):
        """v_p of the value; inf for exact zero.

        For an approximate zero this is a lower bound: the true
        valuation is at least this large.
        """
        return self.val

    @property
    def abs_prec(self):
        """The value is known modulo p^abs_prec."""
        if self.unit == 0:
            return self.val
        return self.val + self.prec

    def lift(self, n: int) -> int:
        """Integer representative of the value mod p^n; needs abs_prec >= n."""
        if self.abs_prec < n:
            raise PreconditionError(f"value only known mod {self.p}^{self.abs_prec}, asked mod {self.p}^{n}")
        if self.unit == 0 or self.val >= n:
            return 0
        if self.val < 0:
            raise PreconditionError("negative valuation has no integer lift")
        return self.unit * self.p**self.val % self.p**n

    def _check_same_prime(self, other: "PadicNum") -> None:
        if self.p != other.p:
            raise PreconditionError(f"mixed primes {self.p} and {other.p}")

    def _coerce(self, other):
        if isinstance(other, PadicNum):
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PadicNum.zero(self.p)
            # give the exact scalar enough digits that it never caps
            # the precision of the value it is combined with
            v = rational_valuation(other, self.p)
            if self.unit == 0:
                need = (self.val if self.val is not inf else DEFAULT_PRECISION) - v
            else:
                need = self.val + self.prec - v
            prec = max(int(need) + 2, 1)
            return PadicNum.from_rational(other, self.p, prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check_same_prime(other)
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        # align both on the smaller valuation and add the scaled units
        n = min(self.abs_prec, other.abs_prec)
        m = min(self.val, other.val)
        width = n - m
        if width <= 0:
            return PadicNum.approx_zero(self.p, n)
        a = 0 if self.unit == 0 else self.unit * self.p ** (self.val - m)
        b = 0 if other.unit == 0 else other.unit * other.p ** (other.val - m)
        s = (a + b) % self.p**width
        if s == 0:
            return PadicNum.approx_zero(self.p, n)
        return PadicNum(self.p, m, s, width)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicNum(self.p, self.val, -self.unit % self.p**self.prec, self.prec)

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
        self._check_same_prime(other)
        if self.is_exact_zero or other.is_exact_zero:
            return PadicNum.zero(self.p)
        if self.unit == 0 or other.unit == 0:
            return PadicNum.approx_zero(self.p, self.val + other.val)
        prec = min(self.prec, other.prec)
        return PadicNum(self.p, self.val + other.val, self.unit * other.unit, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check_same_prime(other)
        if other.unit == 0:
            raise ZeroDivisionError("division by a p-adic zero")
        if self.is_exact_zero:
            return self
        if self.unit == 0:
            return PadicNum.approx_zero(self.p, self.val - other.val)
        prec = min(self.prec, other.prec)
        m = self.p**prec
        return PadicNum(self.p, self.val - other.val, self.unit * pow(other.unit % m, -1, m), prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e == 0:
            # 0^0 = 1 by the empty-product convention callers rely on
            return PadicNum(self.p, 0, 1, self.prec if self.unit else DEFAULT_PRECISION)
        if e < 0:
            if self.unit == 0:
                raise ZeroDivisionError("negative power of a p-adic zero")
            inv = PadicNum(self.p, -self.val, pow(self.unit, -1, self.p**self.prec), self.prec)
            return inv ** (-e)
        result = self ** 0
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, PadicNum):
            return NotImplemented
        return (self.p, self.val, self.unit, self.prec) == (other.p, other.val, other.unit, other.prec)

    def __hash__(self):
        return hash((self.p, self.val, self.unit, self.prec))

    def to_json(self) -> dict:
        digits = []
        u = self.unit
        for _ in range(self.prec):
            u, d = divmod(u, self.p)
            digits.append(d)
        return {
            "p": self.p,
            "valuation": None if self.val is inf else self.val,
            "digits": digits,
            "precision": self.prec,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PadicNum":
        p = obj["p"]
        if obj["valuation"] is None:
            return cls.zero(p)
        unit = 0
        for d in reversed(obj["digits"]):
            unit = unit * p + d
        if unit == 0:
            return cls.approx_zero(p, obj["valuation"])
        return cls(p, obj["valuation"], unit, obj["precision"])

    def __repr__(self):
        if self.is_exact_zero:
            return f"PadicNum(0, p={self.p})"
        if self.unit == 0:
            return f"PadicNum(O({self.p}^{self.val}))"
        return f"PadicNum({self.unit}*{self.p}^{self.val} + O({self.p}^{self.abs_prec}))"


def valuation(x: PadicNum):
    return x.valuation


def agreement_valuation(x: PadicNum, y: PadicNum):
    """v_p(x - y), capped at the joint working precision; inf if exactly equal."""
    return (x - y).valuation


def teichmuller(a: int, cfg: PadicConfig) -> PadicNum:
    """The (p-1)-th root of unity congruent to a mod p.

    Computed by iterating the Frobenius x -> x^p mod p^prec to its fixed
    point, which this map reaches from any unit start.
    """
    p = cfg.p
    if a % p == 0:
        raise PreconditionError(f"{a} is not a unit mod {p}")
    m = p**cfg.prec
    w = a % m
    for _ in range(cfg.prec + 1):
        nxt = pow(w, p, m)
        if nxt == w:
            break
        w = nxt
    return PadicNum(p, 0, w, cfg.prec)


def teichmuller_inverse(a: int, cfg: PadicConfig) -> PadicNum:
    w = teichmuller(a, cfg)
    return PadicNum(cfg.p, 0, pow(w.unit, -1, cfg.p**cfg.prec), cfg.prec)


def _binomial_coeff_step(c, x, j: int):
    """c * (x - (j-1)) / j in whichever arithmetic x lives in."""
    return c * (x - (j - 1)) / j


def _binomial_series(t: PadicNum, x, cfg: PadicConfig) -> PadicNum:
    """Sum of C(x,j) t^j for a p-adic integer exponent x and v_p(t) >= 1.

    Stops once every remaining term provably exceeds the accumulated
    sum's absolute precision.  The bound uses v_p(C(x,j) t^j) >=
    j*v1 - (j-1)/(p-1), increasing in j because v1 >= 1 > 1/(p-1).
    """
    p = cfg.p
    if t.is_exact_zero:
        return PadicNum.from_int(1, p, cfg.prec)
    v1 = t.val
    if v1 < 1:
        raise ConvergenceError(f"series needs v_{p}(base - 1) >= 1, got {v1}")
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise PreconditionError(f"exponent {x} is not a {p}-adic integer")
    elif isinstance(x, PadicNum):
        if x.val is not inf and x.val < 0:
            raise PreconditionError("exponent must have nonnegative valuation")
    else:
        raise TypeError(f"unsupported exponent type {type(x).__name__}")

    acc = PadicNum.from_int(1, p, cfg.prec)
    c = Fraction(1) if isinstance(x, Fraction) else PadicNum.from_int(1, p, cfg.prec)
    power = PadicNum.from_int(1, p, cfg.prec)
    j = 0
    while True:
        j += 1
        if j > _SERIES_MAX_TERMS:
            raise ResourceLimitError(f"binomial series did not settle in {_SERIES_MAX_TERMS} terms")
        # tail bound: min valuation over all terms with index >= j
        tail = Fraction(j) * v1 - Fraction(j - 1, p - 1)
        if tail > acc.abs_prec:
            break
        c = _binomial_coeff_step(c, x, j)
        if isinstance(c, Fraction):
            if c == 0:
                break
            term = power * t * c
        else:
            if c.is_zero:
                break
            term = power * t * c
        power = power * t
        acc = acc + term
    return acc


def q_pow(q: PadicNum, x, cfg: PadicConfig) -> PadicNum:
    """q^x for a p-adic integer exponent x, with v_p(q - 1) >= 1.

    Agrees with repeated multiplication when x is a nonnegative integer
    (the series terminates at j = x).
    """
    return _binomial_series(q - 1, x, cfg)


def principal_pow(b: PadicNum, s, cfg: PadicConfig) -> PadicNum:
    """b^s for b in 1 + pZ_p and a p-adic integer exponent s."""
    return _binomial_series(b - 1, s, cfg)


def normalized_bracket(x: int, q: PadicNum, alpha: int, cfg: PadicConfig) -> PadicNum:
    """The unit part of the q-integer of x at base q^alpha.

    Divides (1 - q^(alpha*x))/(1 - q^alpha) by the Teichmuller lift of
    x, landing in 1 + pZ_p, which makes it a legal base for
    principal_pow.
    """
    if x < 1:
        raise PreconditionError(f"x must be a positive integer, got {x}")
    if x % cfg.p == 0:
        raise PreconditionError(f"{x} is not a unit mod {cfg.p}")
    if alpha < 1:
        raise PreconditionError(f"alpha must be positive, got {alpha}")
    one = PadicNum.from_int(1, cfg.p, cfg.prec)
    tq = q - one
    if tq.is_exact_zero or tq.val < 1:
        raise ConvergenceError(f"normalized_bracket needs v_{cfg.p}(1 - q) >= 1")
    num = one - q ** (alpha * x)
    den = one - q**alpha
    return teichmuller_inverse(x, cfg) * (num / den)
