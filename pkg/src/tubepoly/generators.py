"""The generating coefficient streams behind the regular body families.

Four exponential-type series generate the renormalized tube polynomials of
balls, cubes and their squeezed cylinders, and eight even companions (one
per surface family and codimension index, including the infinite-index
limit) generate the renormalized boundary polynomials.  This module exposes

* exact Taylor coefficients of every stream (PiScalar values),
* the degree-n multiplier truncations that reproduce the polynomials of the
  n-dimensional bodies exactly,
* the index-conversion multipliers 1/((p+2)(p+4)...(p+2l)),
* rigorous numeric evaluation three ways: truncated series with a tail
  bound, registered closed forms, and adaptive quadrature of the integral
  representations (for the cylinder families).

The three evaluation routes are deliberately independent so they can be
cross-checked against each other in the tests.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from mpmath import iv, mp, mpc, mpf

from .intervals import ComplexInterval
from .poly import PiPoly
from .scalars import ONE, PiScalar, gamma_half

__all__ = [
    "SeriesFamily",
    "parse_family",
    "series_coeff",
    "jensen_multiplier",
    "jensen_poly",
    "laguerre_multiplier",
    "apply_multipliers",
    "truncated_eval",
    "closed_form_eval",
    "has_closed_form",
    "integral_rep_eval",
    "TailBoundUnavailable",
    "jensen_poly_of_stream",
    "FAMILY_TAGS",
]

INFINITY = "inf"
Index = Union[int, str]

FAMILY_TAGS = (
    "m_ball",
    "m_ballcyl",
    "m_cube",
    "m_cubecyl",
    "w_ball",
    "w_ballcyl",
    "w_cube",
    "w_cubecyl",
)


@dataclass(frozen=True)
class SeriesFamily:
    """One generating stream; q parameterizes m_ballcyl, p the w-families."""

    tag: str
    p: Optional[Index] = None
    q: Optional[int] = None

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise ValueError(f"unknown family tag {self.tag!r}")
        if self.tag == "m_ballcyl":
            if not isinstance(self.q, int) or self.q < 1:
                raise ValueError("m_ballcyl needs an integer q >= 1")
        elif self.tag.startswith("w_"):
            ok = self.p == INFINITY or (isinstance(self.p, int) and self.p >= 1)
            if not ok:
                raise ValueError(f"{self.tag} needs an index p >= 1 or 'inf'")
        if self.tag in ("m_ball", "m_cube", "m_cubecyl") and (
            self.p is not None or self.q is not None
        ):
            raise ValueError(f"{self.tag} takes no parameters")

    @property
    def is_even(self) -> bool:
        return self.tag.startswith("w_")

    def __str__(self) -> str:
        if self.tag == "m_ballcyl":
            return f"m_ballcyl:{self.q}"
        if self.tag.startswith("w_"):
            return f"{self.tag}:{self.p}"
        return self.tag


def parse_family(text: str) -> SeriesFamily:
    """Parse 'm_ball', 'm_ballcyl:4', 'w_cube:inf', 'w_ballcyl:2', ..."""
    m = re.fullmatch(r"([a-z_]+)(?::(inf|\d+))?", text.strip())
    if not m:
        raise ValueError(f"malformed family {text!r}")
    tag, param = m.group(1), m.group(2)
    if tag == "m_ballcyl":
        if param is None or param == INFINITY:
            raise ValueError("m_ballcyl needs ':q' with an integer q >= 1")
        return SeriesFamily(tag, q=int(param))
    if tag.startswith("w_"):
        if param is None:
            raise ValueError(f"{tag} needs ':p' or ':inf'")
        return SeriesFamily(tag, p=INFINITY if param == INFINITY else int(param))
    if param is not None:
        raise ValueError(f"{tag} takes no parameter")
    return SeriesFamily(tag)


# ---------------------------------------------------------------------------
# Exact coefficients
# ---------------------------------------------------------------------------


def laguerre_multiplier(p: int, l: int) -> Fraction:
    """1/((p+2)(p+4)...(p+2l)); equals the Gamma-ratio index conversion."""
    if p < 1 or l < 0:
        raise ValueError("need p >= 1 and l >= 0")
    r = Fraction(1)
    for j in range(1, l + 1):
        r /= p + 2 * j
    return r


def _index_factor(p: Index, l: int) -> PiScalar:
    if p == INFINITY:
        return ONE
    return PiScalar.from_rational(laguerre_multiplier(p, l))


_HALF_SQRT_PI = PiScalar.pi_power(1, Fraction(1, 2))


def series_coeff(family: SeriesFamily, k: int) -> PiScalar:
    """Exact coefficient of t^k; zero at odd k for the even families."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    tag = family.tag
    inv_fact = PiScalar.from_rational(Fraction(1, math.factorial(k)))
    if tag == "m_ball":
        return inv_fact
    if tag == "m_ballcyl":
        q = family.q
        return gamma_half(q) * gamma_half(k) / gamma_half(k + q) * inv_fact
    if tag == "m_cube":
        return _HALF_SQRT_PI**k / gamma_half(k) * inv_fact
    if tag == "m_cubecyl":
        return gamma_half(1) / gamma_half(k + 1) * _HALF_SQRT_PI**k * inv_fact
    if k % 2 == 1:
        return PiScalar(0)
    l = k // 2
    factor = _index_factor(family.p, l)
    sign = -1 if l % 2 == 1 else 1
    if tag == "w_ball":
        base = PiScalar.from_rational(Fraction(sign, 2**l * math.factorial(l)))
    elif tag == "w_ballcyl":
        # Gamma(1/2)/Gamma(l+1/2) = 4^l l! / (2l)!
        base = PiScalar.from_rational(
            Fraction(sign * 2**l * math.factorial(l), math.factorial(2 * l))
        )
    elif tag == "w_cube":
        base = PiScalar.pi_power(2 * l, Fraction(sign, 2**l * math.factorial(2 * l + 1)))
    else:  # w_cubecyl
        base = PiScalar.pi_power(2 * l, Fraction(sign, 2**l * math.factorial(2 * l)))
    return factor * base


def jensen_multiplier(n: int, k: int) -> Fraction:
    """n!/((n-k)! n^k) for k <= n, zero beyond; the reality-preserving
    truncation factors."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if k > n:
        return Fraction(0)
    return Fraction(math.factorial(n), math.factorial(n - k) * n**k)


def jensen_poly(family: SeriesFamily, n: int) -> PiPoly:
    """Degree-<=n multiplier truncation of the stream."""
    if n < 1:
        raise ValueError("order must be >= 1")
    return PiPoly(
        [PiScalar.from_rational(jensen_multiplier(n, k)) * series_coeff(family, k) for k in range(n + 1)]
    )


def jensen_poly_of_stream(coeffs: list[PiScalar], n: int) -> PiPoly:
    """Same truncation applied to an explicit coefficient list a_0..a_n."""
    if n < 1:
        raise ValueError("order must be >= 1")
    if len(coeffs) < n + 1:
        raise ValueError("need coefficients up to the requested order")
    return PiPoly(
        [PiScalar.from_rational(jensen_multiplier(n, k)) * coeffs[k] for k in range(n + 1)]
    )


def apply_multipliers(stream: Callable[[int], PiScalar], multipliers: Callable[[int], PiScalar]):
    """Termwise product stream k -> multipliers(k) * stream(k)."""

    def multiplied(k: int) -> PiScalar:
        return multipliers(k) * stream(k)

    return multiplied


# ---------------------------------------------------------------------------
# Numeric evaluation: truncated series with rigorous tail bound
# ---------------------------------------------------------------------------


class TailBoundUnavailable(ArithmeticError):
    def __init__(self, message: str, minimal_terms: int):
        super().__init__(message)
        self.minimal_terms = minimal_terms


def _majorant_params(family: SeriesFamily) -> tuple[float, float]:
    """(C, R): |a_k| <= C * R^k / floor(k/2)! termwise (generous but valid).

    m-family coefficients are <= C/k! <= C R^k / floor(k/2)! with R = 1;
    the even families satisfy |a_{2l}| <= C r^l / l!, folded the same way.
    """
    tag = family.tag
    if tag == "m_ball":
        return 1.0, 1.0
    if tag == "m_ballcyl":
        # Gamma(q/2+1)Gamma(k/2+1)/Gamma((k+q)/2+1) <= Gamma(q/2+1)
        return float(gamma_half(family.q).float()), 1.0
    if tag in ("m_cube", "m_cubecyl"):
        return 1.0, 1.0  # extra Gamma factors only shrink the terms
    if tag == "w_ball":
        return 1.0, math.sqrt(0.5)
    if tag == "w_ballcyl":
        # |a_2l| = psi * 2^l l!/(2l)! <= (1/l!) since 4^l (l!)^2 <= (2l)! 2^l... loose: use 1^l/l!
        return 2.0, 1.0
    # w_cube / w_cubecyl: (pi/2)^l / (2l)!-ish <= (pi/2)^l / l!^... fold to R = sqrt(pi/2)
    return 1.0, math.sqrt(math.pi / 2.0)


def truncated_eval(family: SeriesFamily, terms: int, z, bits: int = 96) -> ComplexInterval:
    """Partial sum of the stream at z, widened by a proven tail bound.

    The tail is dominated by C * sum_{k>N} (R|z|)^k / floor(k/2)!, which is
    bounded geometrically once floor(k/2) exceeds 2(R|z|)^2; if the requested
    N is below that threshold the evaluation refuses and reports the minimal
    usable N.
    """
    if terms < 1:
        raise ValueError("need at least one term")
    C, R = _majorant_params(family)
    az = abs(complex(z))
    x = R * az
    threshold = int(4.0 * x * x + 2.0 * x) + 4
    if terms < threshold:
        raise TailBoundUnavailable(
            f"tail bound needs at least {threshold} terms at |z| = {az:.3g}",
            minimal_terms=threshold,
        )
    acc = ComplexInterval.from_number(0, bits)
    zi = ComplexInterval.from_number(complex(z), bits)
    power = ComplexInterval.from_number(1, bits)
    for k in range(terms + 1):
        c = series_coeff(family, k)
        if c:
            acc = acc + ComplexInterval.from_scalar(c, bits) * power
        power = power * zi
    # first neglected majorant term; beyond the threshold every consecutive
    # pair of terms contracts by 1/2, so the tail sums to < 2(1+x) * lead
    k0 = terms + 1
    lead = C * x**k0 / math.factorial(k0 // 2)
    tail = 2.0 * (1.0 + x) * lead
    return acc.widen(tail)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def _bessel_j1_over_t_times_2(z: mpc, bits: int) -> mpc:
    """2 J_1(z)/z by its Taylor series: sum (-1)^l (z/2)^{2l} / (l! (l+1)!)."""
    old = mp.prec
    try:
        mp.prec = bits + 32
        w = (mpc(z) / 2) ** 2
        acc = mpc(0)
        term = mpc(1)
        l = 0
        while True:
            acc += term
            l += 1
            term = term * (-w) / (l * (l + 1))
            if abs(term) < mpf(2) ** (-(bits + 16)) * (1 + abs(acc)) and l > abs(w) ** 0.5 + 4:
                break
        return acc
    finally:
        mp.prec = old


def has_closed_form(family: SeriesFamily) -> bool:
    tag, p, q = family.tag, family.p, family.q
    return (
        tag == "m_ball"
        or (tag == "m_ballcyl" and q == 4)
        or (tag == "w_ball" and p in (INFINITY, 1, 2))
        or (tag in ("w_cube", "w_cubecyl") and p == INFINITY)
    )


def closed_form_eval(family: SeriesFamily, z, bits: int = 96) -> ComplexInterval:
    """Evaluate a registered closed form; raises KeyError when none exists.

    Forms: m_ball = exp(z); m_ballcyl:4 = 4((2z^2-6z+6)e^z + z^2-6)/z^4;
    w_ball:inf = exp(-z^2/2); w_ball:1 = sin z / z; w_ball:2 = 2 J1(z)/z;
    w_cube:inf = sin(c z)/(c z), w_cubecyl:inf = cos(c z) with c = sqrt(pi/2).
    Real arguments go through genuine interval arithmetic; complex ones get
    a midpoint evaluation padded at the working precision.
    """
    if not has_closed_form(family):
        raise KeyError(f"no closed form registered for {family}")
    zc = complex(z)
    if zc.imag == 0.0:
        return _closed_form_real_iv(family, zc.real, bits)
    return _closed_form_complex_pad(family, zc, bits)


def _closed_form_real_iv(family: SeriesFamily, x: float, bits: int) -> ComplexInterval:
    old = iv.prec
    try:
        iv.prec = bits
        t = iv.mpf(x)
        tag, p = family.tag, family.p
        if tag == "m_ball":
            val = iv.exp(t)
        elif tag == "m_ballcyl":  # q == 4
            if abs(x) < 2.0 ** (-8):
                return _m_ballcyl4_series_iv(x, bits)
            val = 4 * ((2 * t**2 - 6 * t + 6) * iv.exp(t) + (t**2 - 6)) / t**4
        elif tag == "w_ball" and p == INFINITY:
            val = iv.exp(-(t**2) / 2)
        elif tag == "w_ball" and p == 1:
            val = iv.sin(t) / t if x != 0 else iv.mpf(1)
        elif tag == "w_ball" and p == 2:
            return _bessel_j1_over_t_times_2_iv(x, bits)
        elif tag == "w_cube":
            c = iv.sqrt(iv.pi / 2)
            val = iv.sin(c * t) / (c * t) if x != 0 else iv.mpf(1)
        else:  # w_cubecyl
            val = iv.cos(iv.sqrt(iv.pi / 2) * t)
        return ComplexInterval(val, iv.mpf(0), bits)
    finally:
        iv.prec = old


def _closed_form_complex_pad(family: SeriesFamily, zz: complex, bits: int) -> ComplexInterval:
    old = mp.prec
    try:
        mp.prec = bits + 32
        z = mpc(zz)
        tag, p = family.tag, family.p
        if tag == "m_ball":
            val = mp.exp(z)
        elif tag == "m_ballcyl":  # q == 4
            val = (
                _m_ballcyl4_series(z)
                if abs(z) < mpf(1) / 256
                else 4 * ((2 * z**2 - 6 * z + 6) * mp.exp(z) + (z**2 - 6)) / z**4
            )
        elif tag == "w_ball" and p == INFINITY:
            val = mp.exp(-(z**2) / 2)
        elif tag == "w_ball" and p == 1:
            val = mp.sin(z) / z if z != 0 else mpc(1)
        elif tag == "w_ball" and p == 2:
            val = _bessel_j1_over_t_times_2(z, bits)
        elif tag == "w_cube":
            c = mp.sqrt(mp.pi / 2)
            val = mp.sin(c * z) / (c * z) if z != 0 else mpc(1)
        else:  # w_cubecyl
            val = mp.cos(mp.sqrt(mp.pi / 2) * z)
        pad = float(mpf(2) ** (-bits) * (1 + abs(val)))
        return ComplexInterval.from_number(complex(val), bits).widen(pad)
    finally:
        mp.prec = old


def _bessel_j1_over_t_times_2_iv(x: float, bits: int) -> ComplexInterval:
    old = iv.prec
    try:
        iv.prec = bits
        w = (iv.mpf(x) / 2) ** 2
        acc = iv.mpf(0)
        term = iv.mpf(1)
        wl = abs(x / 2.0) ** 2
        l = 0
        # alternating series with eventually decreasing terms: once the term
        # magnitude falls below the target and l(l+1) > |w|, the truncation
        # error is bounded by the next term
        while True:
            acc = acc + term
            l += 1
            term = term * (-w) / (l * (l + 1))
            bound = wl**l / (math.factorial(l) * math.factorial(l + 1))
            if l * (l + 1) > wl and bound < 2.0 ** (-(bits + 8)):
                break
        lead = 2.0 * wl**l / (math.factorial(l) * math.factorial(l + 1))
        return ComplexInterval(acc, iv.mpf(0), bits).widen(lead)
    finally:
        iv.prec = old


def _m_ballcyl4_series_iv(x: float, bits: int) -> ComplexInterval:
    fam = SeriesFamily("m_ballcyl", q=4)
    return truncated_eval(fam, max(24, 8), x, bits=bits)


def _m_ballcyl4_series(z: mpc) -> mpc:
    acc = mpc(0)
    fam = SeriesFamily("m_ballcyl", q=4)
    for k in range(24):
        c = series_coeff(fam, k)
        enc = c.interval(96)
        mid = (mpf(enc.a) + mpf(enc.b)) / 2
        acc += mid * z**k
    return acc


# ---------------------------------------------------------------------------
# Integral representations (cylinder families)
# ---------------------------------------------------------------------------


def integral_rep_eval(family: SeriesFamily, z, quad_tol: float = 1e-12) -> complex:
    """Adaptive quadrature of the weight-(1-xi^2)^(a-1) representations:

        m_ballcyl(q):  q * int_0^1 (1-xi^2)^(q/2-1) xi exp(xi z) dxi
        w_ballcyl(p):  p * int_0^1 (1-xi^2)^(p/2-1) xi cos(z xi) dxi

    For exponent parameters below 2 the substitution xi = 1 - u^2 removes
    the endpoint singularity before quadrature.
    """
    import cmath

    from scipy.integrate import quad

    tag = family.tag
    if tag == "m_ballcyl":
        a = family.q
        kernel = cmath.exp
    elif tag == "w_ballcyl":
        a = family.p
        if a == INFINITY:
            raise KeyError("the infinite-index stream has no integral form")
        kernel = cmath.cos
    else:
        raise KeyError(f"no integral representation registered for {family}")
    zc = complex(z)

    def f(xi: float) -> complex:
        w = (1.0 - xi * xi) ** (a / 2.0 - 1.0)
        return w * xi * kernel(xi * zc)

    def f_sub(u: float) -> complex:
        # xi = 1 - u^2, dxi = -2u du; the weight turns into
        # u^(a-2) (2-u^2)^(a/2-1) * 2u, smooth at the former endpoint
        xi = 1.0 - u * u
        w = (u * u * (2.0 - u * u)) ** (a / 2.0 - 1.0)
        return w * xi * 2.0 * u * kernel(xi * zc)

    use_sub = a < 2
    fn = f_sub if use_sub else f
    re, re_err = quad(lambda x: fn(x).real, 0.0, 1.0, epsabs=quad_tol, epsrel=quad_tol, limit=400)
    im, im_err = quad(lambda x: fn(x).imag, 0.0, 1.0, epsabs=quad_tol, epsrel=quad_tol, limit=400)
    if max(re_err, im_err) > 50 * quad_tol * (1 + abs(complex(re, im))):
        raise ArithmeticError(
            f"quadrature tolerance {quad_tol} not achieved (errors {re_err:.2e}, {im_err:.2e})"
        )
    return a * complex(re, im)
