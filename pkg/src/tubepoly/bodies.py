"""Convex-body expression language and exact tube-volume polynomials.

A body is an expression tree over four constructors:

* ``Ball(n)``     the unit ball of R^n,
* ``Cube(n)``     the cube [-1, 1]^n,
* ``Product(a, b)``  the Cartesian product, living in the sum of the ambient
  spaces,
* ``Adjoint(b, q)``  the same point set as ``b`` embedded in a space with q
  extra dimensions (a "squeezed cylinder" when q = 1).

``steiner`` synthesizes the exact polynomial t -> Vol(body + t*ball) over
Q(sqrt(pi)).  From it derive cross-sectional measures, the intrinsic surface
coefficients w_{2l} of the boundary, and the even tube polynomials of any
codimension index p (including the infinite-index limit).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Union

from .poly import PiPoly
from .scalars import ONE, ParseError, PiScalar, gamma_half, gamma_multiplier, omega

__all__ = [
    "Ball",
    "Cube",
    "Adjoint",
    "Product",
    "BodySpec",
    "SteinerResult",
    "WeylData",
    "parse_body",
    "steiner",
    "cross_measures",
    "weyl_coeffs",
    "weyl_poly",
    "weyl1_from_steiner",
    "half_tube_polys",
    "renormalized_steiner",
    "renormalized_weyl",
    "INFINITY",
]

INFINITY = "inf"  # sentinel accepted wherever an index p is expected


@dataclass(frozen=True)
class Ball:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ball dimension must be >= 1")

    def __str__(self) -> str:
        return f"ball:{self.n}"


@dataclass(frozen=True)
class Cube:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cube dimension must be >= 1")

    def __str__(self) -> str:
        return f"cube:{self.n}"


@dataclass(frozen=True)
class Adjoint:
    body: "BodySpec"
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("adjoint codimension must be >= 1")

    def __str__(self) -> str:
        return f"adj({self.body},{self.q})"


@dataclass(frozen=True)
class Product:
    left: "BodySpec"
    right: "BodySpec"

    def __str__(self) -> str:
        return f"prod({self.left},{self.right})"


BodySpec = Union[Ball, Cube, Adjoint, Product]


def intrinsic_dim(body: BodySpec) -> int:
    if isinstance(body, (Ball, Cube)):
        return body.n
    if isinstance(body, Adjoint):
        return intrinsic_dim(body.body)
    return intrinsic_dim(body.left) + intrinsic_dim(body.right)


def ambient_dim(body: BodySpec) -> int:
    if isinstance(body, (Ball, Cube)):
        return body.n
    if isinstance(body, Adjoint):
        return ambient_dim(body.body) + body.q
    return ambient_dim(body.left) + ambient_dim(body.right)


# ---------------------------------------------------------------------------
# Body mini-language:  ball:3 | cube:2 | adj(<body>,q) | prod(<body>,<body>)
# ---------------------------------------------------------------------------

_NAME = re.compile(r"[a-z]+")
_INT = re.compile(r"\d+")


class _BodyParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.pos)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected '{ch}'")
        self.pos += 1

    def integer(self) -> int:
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def body(self) -> BodySpec:
        self.ws()
        m = _NAME.match(self.text, self.pos)
        if not m:
            self.error("expected a body ('ball', 'cube', 'adj', 'prod')")
        name = m.group()
        self.pos = m.end()
        if name in ("ball", "cube"):
            self.expect(":")
            n = self.integer()
            try:
                return Ball(n) if name == "ball" else Cube(n)
            except ValueError as exc:
                self.error(str(exc))
        if name == "adj":
            self.expect("(")
            inner = self.body()
            self.expect(",")
            q = self.integer()
            self.expect(")")
            try:
                return Adjoint(inner, q)
            except ValueError as exc:
                self.error(str(exc))
        if name == "prod":
            self.expect("(")
            left = self.body()
            self.expect(",")
            right = self.body()
            self.expect(")")
            return Product(left, right)
        self.error(f"unknown body kind '{name}'")

    def parse(self) -> BodySpec:
        b = self.body()
        self.ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return b


def parse_body(text: str) -> BodySpec:
    """Parse the CLI body mini-language, reporting the position on errors."""
    return _BodyParser(text).parse()


# ---------------------------------------------------------------------------
# Synthesis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SteinerResult:
    """Exact tube-volume polynomial of a body with respect to its ambient space."""

    body: BodySpec
    ambient_dim: int
    poly: PiPoly

    def s(self, k: int) -> PiScalar:
        return self.poly[k]

    @property
    def coefficients(self) -> tuple[PiScalar, ...]:
        return tuple(self.poly[k] for k in range(self.ambient_dim + 1))


def _ball_poly(n: int) -> PiPoly:
    return omega(n) * (PiPoly([1, 1]) ** n)


def _cube_poly(n: int) -> PiPoly:
    # product formula collapsed to a closed form; the n-fold volume product
    # of 2(1+t) gives the same coefficients (checked in the test suite)
    vol = PiScalar.from_rational(2**n)
    half_sqrt_pi = PiScalar.pi_power(1, Fraction(1, 2))
    cs = []
    for k in range(n + 1):
        c = vol * PiScalar.from_rational(
            Fraction(factorial(n), factorial(n - k) * factorial(k))
        )
        cs.append(c * half_sqrt_pi**k / gamma_half(k))
    return PiPoly(cs)


@lru_cache(maxsize=256)
def _steiner_poly(body: BodySpec) -> PiPoly:
    if isinstance(body, Ball):
        return _ball_poly(body.n)
    if isinstance(body, Cube):
        return _cube_poly(body.n)
    if isinstance(body, Product):
        return _steiner_poly(body.left).m_product(_steiner_poly(body.right))
    if isinstance(body, Adjoint):
        inner = _steiner_poly(body.body)
        q = body.q
        out = [PiScalar(0)] * (inner.degree + q + 1)
        for k in range(inner.degree + 1):
            out[k + q] = inner[k] * gamma_multiplier(k, q)
        return PiPoly(out)
    raise TypeError(f"not a body: {body!r}")


def steiner(body: BodySpec) -> SteinerResult:
    """Exact degree-n tube-volume polynomial, n the ambient dimension."""
    return SteinerResult(body=body, ambient_dim=ambient_dim(body), poly=_steiner_poly(body))


def cross_measures(result: SteinerResult) -> list[PiScalar]:
    """Normalized mixed volumes v_0..v_n with s_k = C(n,k) * v_{n-k}."""
    n = result.ambient_dim
    return [result.s(n - k) / PiScalar.from_rational(comb(n, n - k)) for k in range(n + 1)]


@dataclass(frozen=True)
class WeylData:
    """Intrinsic boundary-surface data derived from a generating body.

    ``surface_dim`` is n for a surface bounding a body in R^(n+1); ``w`` holds
    w_0, w_2, ..., w_{2*[n/2]}; ``index`` is a positive integer or "inf";
    ``poly`` the even tube polynomial for that index.
    """

    body: BodySpec
    surface_dim: int
    w: tuple[PiScalar, ...]
    index: Union[int, str]
    poly: PiPoly


def weyl_coeffs(result: SteinerResult) -> list[PiScalar]:
    """w_{2l} = 2^l * Gamma(l + 3/2)/Gamma(3/2) * s_{2l+1}, for the boundary
    of a body living in R^(n+1) (surface dimension n)."""
    n = result.ambient_dim - 1
    if n < 0:
        raise ValueError("ambient dimension must be at least 1")
    g32 = gamma_half(1)
    out = []
    for l in range(n // 2 + 1):
        factor = PiScalar.from_rational(2**l) * gamma_half(2 * l + 1) / g32
        out.append(factor * result.s(2 * l + 1))
    return out


def _index_factor(p: Union[int, str], l: int) -> PiScalar:
    """2^-l Gamma(p/2+1)/Gamma(p/2+l+1) = 1/((p+2)(p+4)...(p+2l)); 1 at p=inf."""
    if p == INFINITY:
        return ONE
    if not isinstance(p, int) or p < 1:
        raise ValueError("index must be a positive integer or 'inf'")
    r = Fraction(1)
    for j in range(1, l + 1):
        r /= p + 2 * j
    return PiScalar.from_rational(r)


def weyl_poly(w: list[PiScalar] | SteinerResult, p: Union[int, str]) -> WeylData:
    """Even tube polynomial of index p from the surface coefficients.

    Accepts either the coefficient list from :func:`weyl_coeffs` or a
    SteinerResult (the coefficients are then derived from it).
    """
    if isinstance(w, SteinerResult):
        result = w
        coeffs = weyl_coeffs(result)
        body = result.body
        surface_dim = result.ambient_dim - 1
    else:
        coeffs = list(w)
        body = None
        surface_dim = 2 * (len(coeffs) - 1) if coeffs else 0
        if not coeffs:
            raise ValueError("empty coefficient sequence")
    dense: list[PiScalar] = []
    for l, w2l in enumerate(coeffs):
        if l:
            dense.append(PiScalar(0))
        dense.append(_index_factor(p, l) * w2l)
    poly = PiPoly(dense)
    return WeylData(body=body, surface_dim=surface_dim, w=tuple(coeffs), index=p, poly=poly)


def weyl1_from_steiner(result: SteinerResult) -> PiPoly:
    """Odd part of the tube polynomial divided by t (the index-1 polynomial)."""
    _, odd = result.poly.even_odd_parts()
    return odd.shift_down(1)


def half_tube_polys(result: SteinerResult) -> tuple[PiPoly, PiPoly]:
    """(outer, inner): Vol of the outer half-tube is t*outer(t) for small t>0,
    the inner one is t*outer(-t); outer(t) = (S(t) - S(0))/t."""
    s0 = result.poly[0]
    shifted = result.poly - PiPoly([s0])
    wplus = shifted.shift_down(1)
    return wplus, wplus.compose_neg()


# ---------------------------------------------------------------------------
# Renormalization (the four regular families only)
# ---------------------------------------------------------------------------


def _regular_family(body: BodySpec) -> tuple[str, int, int]:
    """(kind, base_dim, q) with kind in {'ball', 'cube'}; q = 0 for solid."""
    if isinstance(body, Ball):
        return "ball", body.n, 0
    if isinstance(body, Cube):
        return "cube", body.n, 0
    if isinstance(body, Adjoint) and isinstance(body.body, Ball):
        return "ball", body.body.n, body.q
    if isinstance(body, Adjoint) and isinstance(body.body, Cube):
        return "cube", body.body.n, body.q
    raise ValueError(
        f"renormalization is defined for balls, cubes and their adjoints, not {body}"
    )


def renormalized_steiner(result: SteinerResult) -> PiPoly:
    """Invert the volume/argument normalization: returns the degree-n polynomial
    M with S(t) = Vol * omega_q * t^q * M(n t), where n is the base dimension."""
    kind, n, q = _regular_family(result.body)
    vol = omega(n) if kind == "ball" else PiScalar.from_rational(2**n)
    core = result.poly.shift_down(q) * (ONE / (vol * omega(q)))
    inv_n = ONE / PiScalar.from_rational(n)
    return core.scale_arg(inv_n)


def renormalized_weyl(data: WeylData) -> PiPoly:
    """Invert the surface normalization: W(t) = Vol_n(M) * R(i n t) defines R,
    an even polynomial with alternating signs; n is the surface dimension."""
    if data.body is None:
        raise ValueError("renormalization needs the generating body")
    _regular_family(data.body)  # validates the family
    n = data.surface_dim
    vol = data.w[0]
    out: list[PiScalar] = []
    inv = ONE / vol
    n2 = PiScalar.from_rational(Fraction(1, n * n))
    power = ONE
    for l in range(len(data.w)):
        c = data.poly[2 * l] * inv * power
        if l % 2 == 1:
            c = -c
        if l:
            out.append(PiScalar(0))
        out.append(c)
        power = power * n2
    return PiPoly(out)
