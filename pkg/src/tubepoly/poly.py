"""Dense univariate polynomials over the exact sqrt(pi)-rational field.

Besides ring arithmetic this module carries the two operations that the
geometry needs: even/odd decomposition and the commutative associative
"volume product" whose monomial rule is

    t^k (x) t^l = Gamma(k/2+1) Gamma(l/2+1) / Gamma((k+l)/2+1) * t^(k+l).

The volume product of two Steiner polynomials is the Steiner polynomial of
the Cartesian product of the underlying bodies, which is why it deserves a
first-class operation here.  It is always computed by the exact monomial
rule; the equivalent integral representation is used only as a test oracle.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import ONE, ZERO, PiScalar, gamma_half

__all__ = ["PiPoly"]


def _coerce_scalar(c) -> PiScalar:
    if isinstance(c, PiScalar):
        return c
    if isinstance(c, (int, Fraction)):
        return PiScalar.from_rational(c)
    raise TypeError(f"cannot use {type(c).__name__} as a polynomial coefficient")


class PiPoly:
    """Immutable dense polynomial; index k holds the coefficient of t^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coefficients: Iterable = ()):
        cs = [_coerce_scalar(c) for c in coefficients]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("PiPoly is immutable")

    # -- basics ------------------------------------------------------------
    @staticmethod
    def zero() -> "PiPoly":
        return PiPoly()

    @staticmethod
    def one() -> "PiPoly":
        return PiPoly([ONE])

    @staticmethod
    def monomial(k: int, c=1) -> "PiPoly":
        return PiPoly([ZERO] * k + [_coerce_scalar(c)])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial conventionally at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> PiScalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, PiPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- ring arithmetic ----------------------------------------------------
    def __add__(self, other: "PiPoly") -> "PiPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return PiPoly(out)

    def __neg__(self) -> "PiPoly":
        return PiPoly([-c for c in self.coeffs])

    def __sub__(self, other: "PiPoly") -> "PiPoly":
        return self + (-other)

    def __mul__(self, other) -> "PiPoly":
        if isinstance(other, (PiScalar, int, Fraction)):
            s = _coerce_scalar(other)
            return PiPoly([c * s for c in self.coeffs])
        if not isinstance(other, PiPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return PiPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return PiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PiPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = PiPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def scale(self, s) -> "PiPoly":
        return self * s

    # -- calculus / structure -------------------------------------------------
    def derivative(self) -> "PiPoly":
        return PiPoly([self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def even_odd_parts(self) -> tuple["PiPoly", "PiPoly"]:
        """(even, odd) with even + odd == self, split by parity of the power."""
        even = [c if k % 2 == 0 else ZERO for k, c in enumerate(self.coeffs)]
        odd = [c if k % 2 == 1 else ZERO for k, c in enumerate(self.coeffs)]
        return PiPoly(even), PiPoly(odd)

    def is_even(self) -> bool:
        return all(not c for k, c in enumerate(self.coeffs) if k % 2 == 1)

    def shift_down(self, q: int) -> "PiPoly":
        """Divide by t^q; requires the first q coefficients to vanish."""
        if any(self.coeffs[k] for k in range(min(q, len(self.coeffs)))):
            raise ValueError(f"polynomial is not divisible by t^{q}")
        return PiPoly(self.coeffs[q:])

    def shift_up(self, q: int) -> "PiPoly":
        """Multiply by t^q."""
        if not self.coeffs:
            return self
        return PiPoly((ZERO,) * q + self.coeffs)

    def vanishing_order(self) -> int:
        """Largest m with t^m dividing the polynomial (0 for the zero poly)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return 0

    def scale_arg(self, lam) -> "PiPoly":
        """A(lam * t): the k-th coefficient picks up lam^k."""
        lam = _coerce_scalar(lam)
        out, p = [], ONE
        for k, c in enumerate(self.coeffs):
            out.append(c * p)
            p = p * lam
        return PiPoly(out)

    def compose_neg(self) -> "PiPoly":
        """A(-t)."""
        return PiPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    # -- the volume product -----------------------------------------------------
    def m_product(self, other: "PiPoly") -> "PiPoly":
        """Bilinear extension of the Gamma-weighted monomial product."""
        if not self.coeffs or not other.coeffs:
            return PiPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            gi = gamma_half(i)
            for j, b in enumerate(other.coeffs):
                if b:
                    w = gi * gamma_half(j) / gamma_half(i + j)
                    out[i + j] = out[i + j] + a * b * w
        return PiPoly(out)

    def m_power(self, k: int) -> "PiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = PiPoly.one()
        base = self
        while k:
            if k & 1:
                out = out.m_product(base)
            k >>= 1
            if k:
                base = base.m_product(base)
        return out

    # -- evaluation -----------------------------------------------------------
    def eval_exact(self, at) -> PiScalar:
        """Horner evaluation at an exact rational or PiScalar argument."""
        at = _coerce_scalar(at)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * at + c
        return acc

    def eval_complex(self, z, bits: int = 128):
        """Rigorous complex-interval evaluation at a complex point."""
        from .intervals import ComplexInterval

        zi = ComplexInterval.from_number(z, bits)
        acc = ComplexInterval.from_number(0, bits)
        for c in reversed(self.coeffs):
            acc = acc * zi + ComplexInterval.from_scalar(c, bits)
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c.float()
        return acc

    # -- rendering --------------------------------------------------------------
    def render(self) -> str:
        """Text form 'c0 + c1*t + c2*t^2' with canonical scalar renderings."""
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = c.render()
            if any(op in cs[1:] for op in "+-"):
                cs = f"({cs})"
            if k == 0:
                parts.append(cs)
            elif k == 1:
                parts.append(f"{cs}*t" if cs != "1" else "t")
            else:
                parts.append(f"{cs}*t^{k}" if cs != "1" else f"t^{k}")
        return " + ".join(parts)

    def coeff_strings(self) -> list[str]:
        """JSON-friendly array of canonical coefficient renderings."""
        return [c.render() for c in self.coeffs]

    @staticmethod
    def from_coeff_strings(strings: Sequence[str]) -> "PiPoly":
        from .scalars import parse_scalar

        return PiPoly([parse_scalar(s) for s in strings])

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"PiPoly({self.render()!r})"
