"""Alternating Dedekind-type sums and their q-deformations.

The classical sum pairs the sawtooth weight M/k with the periodic Euler
function.  Its q-analogue replaces both factors by bracket numbers and
weighted q-Euler polynomial values, and interpolates p-adically through
a two-term combination of scaled q-Euler values (interp_value) or the
binomial series built on the unit bracket (interp_series).

Checkers return IdentityReport objects instead of asserting, so a
variant that fails (several printed forms do) is data, not an error.
Reduction conventions, recorded once here: interp_value always reduces
its residue argument into 1..N before evaluating, matching the finite
expansion checked by check_dc_expansion; interp_series uses the residue
literally, so the two agree only for arguments already below N.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ConvergenceError, PreconditionError
from .padic import (
    PadicConfig,
    PadicNum,
    is_odd_prime,
    normalized_bracket,
    principal_pow,
    teichmuller_inverse,
)
from .qeuler import (
    BaseLifted,
    PadicMode,
    QEulerValue,
    compare_values,
    periodic_euler,
    q_int,
    qeuler_number,
    qeuler_poly,
    root_mode,
)
from .reports import IdentityReport, timed_report

INTEGER_VARIANTS = ("naive", "interpolated", "interpolated_printed")


@dataclass(frozen=True)
class DCParams:
    """Validated parameter bundle for the Dedekind-type sums.

    h and k must be coprime.  l is the base exponent the inner q-Euler
    values are evaluated at; p, when present, is the interpolation
    prime and must be odd.
    """

    h: int
    k: int
    m: int = 0
    alpha: int = 1
    l: int = 1
    p: int = None

    def __post_init__(self):
        if self.h < 1 or self.k < 1:
            raise PreconditionError(f"h and k must be >= 1, got h={self.h} k={self.k}")
        if gcd(self.h, self.k) != 1:
            raise PreconditionError(f"h = {self.h} and k = {self.k} must be coprime")
        if self.m < 0:
            raise PreconditionError(f"degree m must be >= 0, got {self.m}")
        if self.alpha < 1:
            raise PreconditionError(f"weight alpha must be >= 1, got {self.alpha}")
        if self.l < 1:
            raise PreconditionError(f"base exponent l must be >= 1, got {self.l}")
        if self.p is not None and not is_odd_prime(self.p):
            raise PreconditionError(f"p must be an odd prime, got {self.p}")

    def require_interpolation_domain(self):
        """Constraints under which the p-adic interpolation is used."""
        if self.p is None:
            raise PreconditionError("interpolation needs a prime p")
        if self.k % self.p == 0:
            raise PreconditionError(f"p = {self.p} must not divide k = {self.k}")
        if (self.m + 1) % (self.p - 1) != 0:
            raise PreconditionError(
                f"need m + 1 divisible by p - 1, got m={self.m} p={self.p}"
            )


def _wrap(mode, v) -> QEulerValue:
    return QEulerValue(root_mode(mode).kind, v)


def dc_sum(m: int, h: int, k: int) -> Fraction:
    """Alternating Dedekind-type sum: sum of (-1)^(M-1) (M/k) Ebar_m(hM/k)."""
    DCParams(h=h, k=k, m=m)
    total = Fraction(0)
    for big_m in range(1, k):
        term = Fraction(big_m, k) * periodic_euler(m, Fraction(h * big_m, k))
        total = total + term if big_m % 2 == 1 else total - term
    return total


def q_dc_sum(m: int, h: int, k: int, alpha: int, l: int, mode) -> QEulerValue:
    """q-deformed Dedekind-type sum with inner values at base exponent l.

    Each term pairs the bracket ratio [M]/[k] with the degree-m weighted
    q-Euler polynomial at the reduced fraction {hM/k}, base q^l.  Modes
    that cannot represent the resulting fractional q-exponents raise
    ExponentError from the inside; no pre-check duplicates that.
    """
    DCParams(h=h, k=k, m=m, alpha=alpha, l=l)
    if k == 1:
        return _wrap(mode, mode.from_rational(0))
    lifted = BaseLifted(mode, l)
    acc = mode.from_rational(0)
    for big_m in range(1, k):
        xm = Fraction((h * big_m) % k, k)
        term = q_int(big_m, alpha, mode) * qeuler_poly(m, alpha, xm, lifted).value
        acc = acc + term if big_m % 2 == 1 else acc - term
    return _wrap(mode, acc / q_int(k, alpha, mode))


def interp_value(m: int, a: int, n_mod: int, variant: str, mode, *, alpha: int = 1, p: int = None) -> QEulerValue:
    """Scaled q-Euler value at a residue, in one of three readings.

    "naive" is [N]^m Etilde_m(a/N) at base q^N with a reduced into 1..N-1.
    The interpolated variants subtract a second term at base q^(Np) and
    the p-inverted residue; "interpolated" scales it by [N]^(m-1) [Np]
    (ratio [Np]/[N] when m = 0), "interpolated_printed" by [Np]^m.
    """
    if variant not in INTEGER_VARIANTS:
        raise PreconditionError(f"unknown variant {variant!r}")
    if m < 0 or n_mod < 1 or alpha < 1:
        raise PreconditionError(f"need m >= 0, N >= 1, alpha >= 1, got m={m} N={n_mod} alpha={alpha}")
    a_red = a % n_mod
    if a_red == 0:
        raise PreconditionError(f"residue a = {a} vanishes mod N = {n_mod}")
    first = q_int(n_mod, alpha, mode) ** m * qeuler_poly(
        m, alpha, Fraction(a_red, n_mod), BaseLifted(mode, n_mod)
    ).value
    if variant == "naive":
        return _wrap(mode, first)
    if p is None or not is_odd_prime(p):
        raise PreconditionError(f"interpolated variants need an odd prime p, got {p}")
    if gcd(p, n_mod) != 1:
        raise PreconditionError(f"p = {p} must be invertible mod N = {n_mod}")
    a_inv = (pow(p, -1, n_mod) * a_red) % n_mod
    inner = qeuler_poly(m, alpha, Fraction(a_inv, n_mod), BaseLifted(mode, n_mod * p)).value
    if variant == "interpolated_printed":
        second = q_int(n_mod * p, alpha, mode) ** m * inner
    elif m == 0:
        second = q_int(n_mod * p, alpha, mode) / q_int(n_mod, alpha, mode) * inner
    else:
        second = q_int(n_mod, alpha, mode) ** (m - 1) * q_int(n_mod * p, alpha, mode) * inner
    return _wrap(mode, first - second)


def interp_series(s, a: int, n_mod: int, j_trunc: int, alpha: int, q: PadicNum, cfg: PadicConfig) -> PadicNum:
    """Binomial-series reading of the interpolated value at exponent s.

    head * sum_j C(s,j) q^(alpha a j) ([N]/[a])^j Etilde_j(base q^N),
    head = w^-1(a) <a>^s.  A nonnegative integer s terminates after s+1
    terms; any other s is a genuine series and requires p | N so the
    ratio is small.  When the tail is not exactly zero the result is
    blurred by an approximate zero bounding it, so the returned
    precision stays honest.
    """
    if a < 1 or n_mod < 1 or alpha < 1:
        raise PreconditionError(f"need a >= 1, N >= 1, alpha >= 1, got a={a} N={n_mod} alpha={alpha}")
    if j_trunc < 1:
        raise PreconditionError(f"truncation order must be >= 1, got {j_trunc}")
    if gcd(a, cfg.p) != 1:
        raise PreconditionError(f"a = {a} must be a unit mod p = {cfg.p}")
    terminates = isinstance(s, int) and 0 <= s <= j_trunc
    if not terminates and n_mod % cfg.p != 0:
        raise ConvergenceError(
            f"series at s = {s} needs p = {cfg.p} dividing N = {n_mod} to converge"
        )
    mode = PadicMode(q, cfg)
    one = mode.from_rational(1)
    bracket = normalized_bracket(a, q, alpha, cfg)
    if isinstance(s, int):
        head = teichmuller_inverse(a, cfg) * bracket ** s
    else:
        head = teichmuller_inverse(a, cfg) * principal_pow(bracket, s, cfg)
    ratio = (one - mode.q_power(alpha * n_mod)) / (one - mode.q_power(alpha * a))
    lifted = BaseLifted(mode, n_mod)

    acc = mode.from_rational(0)
    coeff = Fraction(1) if not isinstance(s, PadicNum) else one
    s_exact = Fraction(s) if not isinstance(s, PadicNum) else s
    rpow = one
    min_euler_val = 0
    for j in range(j_trunc + 1):
        if j > 0:
            coeff = coeff * (s_exact - (j - 1)) / j
            if (isinstance(coeff, Fraction) and coeff == 0) or (
                isinstance(coeff, PadicNum) and coeff.is_exact_zero
            ):
                break
            rpow = rpow * ratio
        euler_j = qeuler_number(j, alpha, lifted).value
        if not euler_j.is_zero:
            min_euler_val = min(min_euler_val, int(euler_j.valuation))
        acc = acc + coeff * mode.q_power(alpha * a * j) * euler_j * rpow
    value = head * acc
    if not terminates:
        tail_val = (j_trunc + 1) * int(ratio.valuation) + min_euler_val
        value = value + PadicNum.approx_zero(cfg.p, tail_val)
    return value


def check_interp_recursion(m: int, a: int, n_mod: int, p: int, alpha: int, variant: str, mode) -> IdentityReport:
    """Does the naive value at modulus N expand over residues mod Np?

    The printed variant weights the terms by (-1)^i alone, the
    corrected one by (-1)^i q^(Ni).  Terms whose shifted residue is
    divisible by p are skipped, as the expansion prescribes; for p | N
    with a a unit that skip never triggers.
    """
    if variant not in ("printed", "corrected"):
        raise PreconditionError(f"unknown variant {variant!r}")
    if not is_odd_prime(p):
        raise PreconditionError(f"p must be an odd prime, got {p}")
    if n_mod % p != 0:
        raise PreconditionError(f"need p = {p} dividing N = {n_mod}")
    if gcd(a, p) != 1:
        raise PreconditionError(f"a = {a} must be a unit mod p = {p}")
    index = [i for i in range(p) if (a + i * n_mod) % p != 0]
    params = {
        "m": m, "a": a, "N": n_mod, "p": p, "alpha": alpha,
        "index_count": len(index), "mode": root_mode(mode).describe(),
    }

    def run():
        one = mode.from_rational(1)
        lhs = interp_value(m, a, n_mod, "naive", mode, alpha=alpha).value
        acc = mode.from_rational(0)
        for i in index:
            term = interp_value(m, a + i * n_mod, n_mod * p, "naive", mode, alpha=alpha).value
            if variant == "corrected":
                term = term * mode.q_power(n_mod * i)
            acc = acc + term if i % 2 == 0 else acc - term
        rhs = (one + mode.q_power(n_mod)) / (one + mode.q_power(n_mod * p)) * acc
        return compare_values(mode, lhs, rhs)

    return timed_report("recursion", variant, params, run)


def check_dc_expansion(m: int, h: int, k: int, alpha: int, p: int, mode) -> IdentityReport:
    """Finite expansion of [k]^(m+1) times the q-sum over naive values.

    Needs p | k, every hM a unit mod p, and m + 1 divisible by p - 1;
    under those constraints the expansion is exact in every mode.
    """
    DCParams(h=h, k=k, m=m, alpha=alpha, l=k, p=p)
    if k % p != 0:
        raise PreconditionError(f"need p = {p} dividing k = {k}")
    if (m + 1) % (p - 1) != 0:
        raise PreconditionError(f"need m + 1 divisible by p - 1, got m={m} p={p}")
    for big_m in range(1, k):
        if (h * big_m) % p == 0:
            raise PreconditionError(f"p = {p} divides h*M at M = {big_m}")
    params = {"m": m, "h": h, "k": k, "alpha": alpha, "p": p, "mode": root_mode(mode).describe()}

    def run():
        lhs = q_int(k, alpha, mode) ** (m + 1) * q_dc_sum(m, h, k, alpha, k, mode).value
        acc = mode.from_rational(0)
        for big_m in range(1, k):
            term = q_int(big_m, alpha, mode) * interp_value(
                m, h * big_m, k, "naive", mode, alpha=alpha
            ).value
            acc = acc + term if big_m % 2 == 1 else acc - term
        return compare_values(mode, lhs, acc)

    return timed_report("eq6", "printed", params, run)


def check_integral_splitting(power: int, modulus: int, alpha: int, x, variant: str, mode) -> IdentityReport:
    """Split one q-Euler polynomial value over residues mod an odd d."""
    if variant not in ("printed", "corrected"):
        raise PreconditionError(f"unknown variant {variant!r}")
    if modulus < 1 or modulus % 2 == 0:
        raise PreconditionError(f"modulus must be odd and >= 1, got {modulus}")
    x = Fraction(x)
    params = {
        "power": power, "modulus": modulus, "alpha": alpha,
        "x": str(x), "mode": root_mode(mode).describe(),
    }

    def run():
        one = mode.from_rational(1)
        lhs = qeuler_poly(power, alpha, x, mode).value
        lifted = BaseLifted(mode, modulus)
        acc = mode.from_rational(0)
        for i in range(modulus):
            term = qeuler_poly(power, alpha, (x + i) / modulus, lifted).value
            if variant == "corrected":
                term = term * mode.q_power(i)
            acc = acc + term if i % 2 == 0 else acc - term
        pref = q_int(modulus, alpha, mode) ** power * (one + mode.q_power(1)) / (
            one + mode.q_power(modulus)
        )
        return compare_values(mode, lhs, pref * acc)

    return timed_report("eq7", variant, params, run)


def check_shifted_splitting(m: int, a: int, n_mod: int, p: int, alpha: int, variant: str, mode) -> IdentityReport:
    """Split a scaled value at a/N over p residue shifts, unreduced.

    Unlike check_interp_recursion this leaves a alone (no reduction mod
    N) and imposes no unit condition, so it probes the raw splitting.
    """
    if variant not in ("printed", "corrected"):
        raise PreconditionError(f"unknown variant {variant!r}")
    if not is_odd_prime(p):
        raise PreconditionError(f"p must be an odd prime, got {p}")
    if m < 0 or a < 1 or n_mod < 1:
        raise PreconditionError(f"need m >= 0, a >= 1, N >= 1, got m={m} a={a} N={n_mod}")
    params = {
        "m": m, "a": a, "N": n_mod, "p": p, "alpha": alpha,
        "mode": root_mode(mode).describe(),
    }

    def run():
        one = mode.from_rational(1)
        lhs = q_int(n_mod, alpha, mode) ** m * qeuler_poly(
            m, alpha, Fraction(a, n_mod), BaseLifted(mode, n_mod)
        ).value
        big = q_int(n_mod * p, alpha, mode) ** m
        lifted = BaseLifted(mode, n_mod * p)
        acc = mode.from_rational(0)
        for i in range(p):
            term = big * qeuler_poly(m, alpha, Fraction(a + i * n_mod, p * n_mod), lifted).value
            if variant == "corrected":
                term = term * mode.q_power(n_mod * i)
            acc = acc + term if i % 2 == 0 else acc - term
        rhs = (one + mode.q_power(n_mod)) / (one + mode.q_power(n_mod * p)) * acc
        return compare_values(mode, lhs, rhs)

    return timed_report("eq8", variant, params, run)


def padic_dc_sum(m: int, h: int, k: int, alpha: int, p: int, mode, variant: str = "interpolated") -> QEulerValue:
    """Interpolated Dedekind-type sum: bracket-weighted interp values.

    Runs under the interpolation constraints (p odd, p does not divide
    k, m + 1 divisible by p - 1).  The variant selects the reading each
    term uses; "naive" reproduces the finite expansion side.
    """
    params = DCParams(h=h, k=k, m=m, alpha=alpha, l=k, p=p)
    params.require_interpolation_domain()
    if k == 1:
        return _wrap(mode, mode.from_rational(0))
    acc = mode.from_rational(0)
    for big_m in range(1, k):
        term = q_int(big_m, alpha, mode) * interp_value(
            m, h * big_m, k, variant, mode, alpha=alpha, p=p
        ).value
        acc = acc + term if big_m % 2 == 1 else acc - term
    return _wrap(mode, acc)


def check_main_relation(m: int, h: int, k: int, alpha: int, p: int, mode, variant: str = "interpolated") -> IdentityReport:
    """Interpolated sum vs the two-term combination of finite q-sums.

    rhs = [k]^(m+1) J(h,k; base k) - [k]^m [kp] J(h', k; base pk) with
    h' the p-inverse of h mod k.  Exact in rational and symbolic modes
    with the "interpolated" reading; the printed normalization drifts
    for m >= 2.
    """
    params = DCParams(h=h, k=k, m=m, alpha=alpha, l=k, p=p)
    params.require_interpolation_domain()
    report_params = {
        "m": m, "h": h, "k": k, "alpha": alpha, "p": p,
        "mode": root_mode(mode).describe(),
    }

    def run():
        lhs = padic_dc_sum(m, h, k, alpha, p, mode, variant).value
        if k == 1:
            return compare_values(mode, lhs, mode.from_rational(0))
        h_inv = (pow(p, -1, k) * h) % k
        bk = q_int(k, alpha, mode)
        j_one = q_dc_sum(m, h, k, alpha, k, mode).value
        j_two = q_dc_sum(m, h_inv, k, alpha, p * k, mode).value
        rhs = bk ** (m + 1) * j_one - bk ** m * q_int(k * p, alpha, mode) * j_two
        return compare_values(mode, lhs, rhs)

    return timed_report("theorem1", variant, report_params, run)
