"""Thin rectangular complex-interval layer over mpmath's real intervals.

mpmath's `iv` context provides rigorous directed-rounding real intervals;
this wraps a (real, imag) pair so polynomial and series evaluation can
certify complex enclosures without pulling in a heavier dependency.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import iv, mp, mpf

__all__ = ["ComplexInterval"]


def _real_iv(x, bits: int):
    old = iv.prec
    try:
        iv.prec = bits
        if isinstance(x, Fraction):
            return iv.mpf(x.numerator) / iv.mpf(x.denominator)
        return iv.mpf(x)
    finally:
        iv.prec = old


class ComplexInterval:
    __slots__ = ("re", "im", "bits")

    def __init__(self, re, im, bits: int):
        self.re = re
        self.im = im
        self.bits = bits

    @staticmethod
    def from_number(z, bits: int) -> "ComplexInterval":
        if isinstance(z, ComplexInterval):
            return z
        if isinstance(z, complex):
            return ComplexInterval(_real_iv(z.real, bits), _real_iv(z.imag, bits), bits)
        return ComplexInterval(_real_iv(x=z, bits=bits), _real_iv(0, bits), bits)

    @staticmethod
    def from_scalar(c, bits: int) -> "ComplexInterval":
        # PiScalar-aware constructor (kept here to avoid an import cycle)
        interval = c.interval(bits) if hasattr(c, "interval") else _real_iv(c, bits)
        return ComplexInterval(interval, _real_iv(0, bits), bits)

    def _ctx(self):
        iv.prec = self.bits

    def __add__(self, other: "ComplexInterval") -> "ComplexInterval":
        old = iv.prec
        try:
            self._ctx()
            return ComplexInterval(self.re + other.re, self.im + other.im, self.bits)
        finally:
            iv.prec = old

    def __sub__(self, other: "ComplexInterval") -> "ComplexInterval":
        old = iv.prec
        try:
            self._ctx()
            return ComplexInterval(self.re - other.re, self.im - other.im, self.bits)
        finally:
            iv.prec = old

    def __mul__(self, other: "ComplexInterval") -> "ComplexInterval":
        old = iv.prec
        try:
            self._ctx()
            re = self.re * other.re - self.im * other.im
            im = self.re * other.im + self.im * other.re
            return ComplexInterval(re, im, self.bits)
        finally:
            iv.prec = old

    def widen(self, radius) -> "ComplexInterval":
        """Inflate both components by +/- radius (a nonnegative real)."""
        old = iv.prec
        try:
            self._ctx()
            pad = iv.mpf([-float(radius), float(radius)])
            return ComplexInterval(self.re + pad, self.im + pad, self.bits)
        finally:
            iv.prec = old

    # -- queries ------------------------------------------------------------
    def contains_zero(self) -> bool:
        return (0 in self.re) and (0 in self.im)

    def abs_upper(self) -> float:
        ru = max(abs(mpf(self.re.a)), abs(mpf(self.re.b)))
        iu = max(abs(mpf(self.im.a)), abs(mpf(self.im.b)))
        old = mp.prec
        try:
            mp.prec = self.bits
            return float(mp.sqrt(ru * ru + iu * iu))
        finally:
            mp.prec = old

    def mid(self) -> complex:
        return complex(
            float((mpf(self.re.a) + mpf(self.re.b)) / 2),
            float((mpf(self.im.a) + mpf(self.im.b)) / 2),
        )

    def width(self) -> float:
        return float(max(mpf(self.re.delta), mpf(self.im.delta)))

    def __repr__(self) -> str:
        return f"ComplexInterval(re={self.re}, im={self.im})"
