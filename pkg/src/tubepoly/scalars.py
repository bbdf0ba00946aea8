"""Exact arithmetic over the field generated by the rationals and sqrt(pi).

Every value is a ratio of Laurent polynomials in x = sqrt(pi) with rational
coefficients.  Because pi is transcendental, a value is zero exactly when its
canonical form is syntactically zero, so equality and sign questions are
decidable: equality syntactically, sign by interval evaluation at escalating
precision (a nonzero value separates from zero eventually).

The module also provides the handful of exact gamma-function values the rest
of the package needs: Gamma at half integers, unit-ball volumes, and the
ambient-extension multipliers omega_{k+q}/omega_k.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping

from mpmath import iv, mp, mpf

__all__ = [
    "PiLaurent",
    "PiScalar",
    "PrecisionExhausted",
    "ParseError",
    "gamma_half",
    "omega",
    "gamma_multiplier",
    "parse_scalar",
    "DEFAULT_SIGN_PRECISION_CEILING",
]

DEFAULT_SIGN_PRECISION_CEILING = 1 << 16  # bits


class PrecisionExhausted(ArithmeticError):
    """Raised when interval evaluation hits its precision ceiling undecided."""

    def __init__(self, message: str, enclosure=None):
        super().__init__(message)
        self.enclosure = enclosure


class ParseError(ValueError):
    """Malformed scalar or body text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"rational coefficient expected, got {type(value).__name__}")


class PiLaurent:
    """A Laurent polynomial sum c_m * pi^(m/2), keyed by the half-exponent m.

    Immutable; terms are stored sorted by ascending half-exponent with no
    zero coefficients, so syntactic equality is semantic equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for m, c in items:
            c = _as_fraction(c)
            if c:
                acc[m] = acc.get(m, Fraction(0)) + c
                if not acc[m]:
                    del acc[m]
        object.__setattr__(self, "terms", tuple(sorted(acc.items())))

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("PiLaurent is immutable")

    @staticmethod
    def _mono(m: int, c: Fraction) -> "PiLaurent":
        # internal: c must already be a nonzero Fraction
        out = object.__new__(PiLaurent)
        object.__setattr__(out, "terms", ((m, c),))
        return out

    # -- ring structure -------------------------------------------------
    def __add__(self, other: "PiLaurent") -> "PiLaurent":
        if len(self.terms) == 1 and len(other.terms) == 1:
            (m1, c1), (m2, c2) = self.terms[0], other.terms[0]
            if m1 == m2:
                c = c1 + c2
                return PiLaurent._mono(m1, c) if c else _ZERO_L
            if m1 < m2:
                out = object.__new__(PiLaurent)
                object.__setattr__(out, "terms", ((m1, c1), (m2, c2)))
                return out
            out = object.__new__(PiLaurent)
            object.__setattr__(out, "terms", ((m2, c2), (m1, c1)))
            return out
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return PiLaurent(acc)

    def __neg__(self) -> "PiLaurent":
        return PiLaurent([(m, -c) for m, c in self.terms])

    def __sub__(self, other: "PiLaurent") -> "PiLaurent":
        return self + (-other)

    def __mul__(self, other: "PiLaurent") -> "PiLaurent":
        if len(self.terms) == 1 and len(other.terms) == 1:
            (m1, c1), (m2, c2) = self.terms[0], other.terms[0]
            return PiLaurent._mono(m1 + m2, c1 * c2)
        acc: dict[int, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m1 + m2
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return PiLaurent(acc)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, PiLaurent) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __repr__(self) -> str:
        return f"PiLaurent({self.terms!r})"

    # -- helpers ---------------------------------------------------------
    @property
    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero Laurent polynomial has no order")
        return self.terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero Laurent polynomial has no order")
        return self.terms[-1][0]

    def shift(self, delta: int) -> "PiLaurent":
        return PiLaurent([(m + delta, c) for m, c in self.terms])

    def scale(self, r: Fraction) -> "PiLaurent":
        r = _as_fraction(r)
        return PiLaurent([(m, c * r) for m, c in self.terms])

    def interval(self, bits: int):
        """Rigorous enclosure as an mpmath interval at the given precision."""
        old = iv.prec
        try:
            iv.prec = bits
            sqrt_pi = iv.sqrt(iv.pi)
            total = iv.mpf(0)
            for m, c in self.terms:
                total += iv.mpf(c.numerator) / iv.mpf(c.denominator) * sqrt_pi ** m
            return total
        finally:
            iv.prec = old


_ZERO_L = PiLaurent()
_ONE_L = PiLaurent([(0, Fraction(1))])


def _content(p: PiLaurent) -> Fraction:
    """Positive rational c with p/c a primitive integer-coefficient polynomial."""
    from math import gcd, lcm

    nums = [abs(c.numerator) for _, c in p.terms]
    dens = [c.denominator for _, c in p.terms]
    g = 0
    for v in nums:
        g = gcd(g, v)
    l = 1
    for v in dens:
        l = lcm(l, v)
    return Fraction(g, l)


def _dense_content(cs: list[Fraction]) -> Fraction:
    from math import gcd, lcm

    g, l = 0, 1
    for c in cs:
        g = gcd(g, abs(c.numerator))
        l = lcm(l, c.denominator)
    return Fraction(g, l) if g else Fraction(1)


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    # dense ascending coefficient lists over Q; b nonzero
    a = a[:]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, bc in enumerate(b):
            a[k + i] -= f * bc
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not any(a):
        return [Fraction(1)]
    lead = a[-1]
    return [c / lead for c in a]


def _laurent_to_dense(p: PiLaurent) -> list[Fraction]:
    # requires min_exp >= 0
    out = [Fraction(0)] * (p.max_exp + 1)
    for m, c in p.terms:
        out[m] = c
    return out


def _dense_to_laurent(cs: list[Fraction]) -> PiLaurent:
    return PiLaurent([(m, c) for m, c in enumerate(cs) if c])


class PiScalar:
    """An element of Q(sqrt(pi)) in canonical fraction form.

    Canonical form: numerator and denominator are ordinary polynomials in
    sqrt(pi) (no negative half-exponents), not both divisible by sqrt(pi),
    with no common polynomial factor, denominator primitive over the integers
    with positive leading coefficient.  Two equal values therefore have
    identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PiLaurent | Fraction | int, den: PiLaurent | Fraction | int = 1):
        if not isinstance(num, PiLaurent):
            num = PiLaurent([(0, _as_fraction(num))])
        if not isinstance(den, PiLaurent):
            den = PiLaurent([(0, _as_fraction(den))])
        if not den:
            raise ZeroDivisionError("PiScalar denominator is zero")
        num, den = self._normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("PiScalar is immutable")

    @staticmethod
    def _normalize(num: PiLaurent, den: PiLaurent) -> tuple[PiLaurent, PiLaurent]:
        if not num:
            return _ZERO_L, _ONE_L
        if len(num.terms) == 1 and len(den.terms) == 1:
            # monomial/monomial: the canonical form is immediate
            (em, cn), (ed, cd) = num.terms[0], den.terms[0]
            r = cn / cd
            shift = em - ed
            p, q = r.numerator, r.denominator
            if shift >= 0:
                return (
                    PiLaurent._mono(shift, Fraction(p)),
                    _ONE_L if q == 1 else PiLaurent._mono(0, Fraction(q)),
                )
            return PiLaurent._mono(0, Fraction(p)), PiLaurent._mono(-shift, Fraction(q))
        # strip the common sqrt(pi) order so both sides are ordinary polynomials
        shift = num.min_exp - den.min_exp
        num = num.shift(-num.min_exp)
        den = den.shift(-den.min_exp)
        cn, cd = _content(num), _content(den)
        a = _laurent_to_dense(num.scale(1 / cn))
        b = _laurent_to_dense(den.scale(1 / cd))
        if len(a) > 1 and len(b) > 1:
            g = _poly_gcd(a, b)
            if len(g) > 1:
                a, _ = _poly_divmod(a, g)
                b, _ = _poly_divmod(b, g)
                ca, cb = _dense_content(a), _dense_content(b)
                a = [c / ca for c in a]
                b = [c / cb for c in b]
                cn, cd = cn * ca, cd * cb
        r = cn / cd
        if b[-1] < 0:
            b = [-c for c in b]
            a = [-c for c in a]
        num = _dense_to_laurent([c * r.numerator for c in a])
        den = _dense_to_laurent([c * r.denominator for c in b])
        if shift >= 0:
            num = num.shift(shift)
        else:
            den = den.shift(-shift)
        return num, den

    # -- constructors ----------------------------------------------------
    @staticmethod
    def from_rational(r: Fraction | int) -> "PiScalar":
        return PiScalar(_as_fraction(r))

    @staticmethod
    def pi_power(half_exponent: int, coefficient: Fraction | int = 1) -> "PiScalar":
        """coefficient * pi^(half_exponent/2)."""
        c = _as_fraction(coefficient)
        if half_exponent >= 0:
            return PiScalar(PiLaurent([(half_exponent, c)]))
        return PiScalar(PiLaurent([(0, c)]), PiLaurent([(-half_exponent, Fraction(1))]))

    # -- field operations -------------------------------------------------
    def __add__(self, other) -> "PiScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PiScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "PiScalar":
        return PiScalar(-self.num, self.den)

    def __sub__(self, other) -> "PiScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PiScalar":
        return _coerce(other) - self

    def __mul__(self, other) -> "PiScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PiScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PiScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero PiScalar")
        return PiScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "PiScalar":
        return _coerce(other) / self

    def __pow__(self, k: int) -> "PiScalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- order (exact, via sign determination) ----------------------------
    def __lt__(self, other) -> bool:
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - _coerce(other)).sign() >= 0

    # -- queries -----------------------------------------------------------
    def is_rational(self) -> bool:
        return (not self.num or self.num.max_exp == self.num.min_exp == 0) and (
            self.den.max_exp == 0
        )

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        if not self.num:
            return Fraction(0)
        return self.num.terms[0][1] / self.den.terms[0][1]

    def interval(self, bits: int = 128):
        """Enclosing real interval at the requested working precision."""
        if bits < 16:
            raise ValueError("bits must be at least 16")
        if not self.num:
            old = iv.prec
            try:
                iv.prec = bits
                return iv.mpf(0)
            finally:
                iv.prec = old
        old = iv.prec
        try:
            iv.prec = bits
            return self.num.interval(bits) / self.den.interval(bits)
        finally:
            iv.prec = old

    def sign(self, precision_ceiling: int = DEFAULT_SIGN_PRECISION_CEILING) -> int:
        """-1, 0 or +1.  Zero is decided syntactically; otherwise intervals."""
        if not self.num:
            return 0
        return _laurent_sign(self.num, precision_ceiling) * _laurent_sign(
            self.den, precision_ceiling
        )

    def float(self, bits: int = 128) -> float:
        enc = self.interval(bits)
        return float(mpf(enc.a) + mpf(enc.b)) / 2.0

    def decimal(self, digits: int = 20) -> str:
        bits = max(64, int(digits * 3.33) + 16)
        enc = self.interval(bits)
        old = mp.prec
        try:
            mp.prec = bits
            return mp.nstr((mpf(enc.a) + mpf(enc.b)) / 2, digits)
        finally:
            mp.prec = old

    # -- rendering ----------------------------------------------------------
    def render(self) -> str:
        """Canonical text form, e.g. '4/3*pi^(3/2) + 2' or '(pi + 1)/(2*pi)'."""
        if not self.num:
            return "0"
        num_s = _render_laurent(self.num)
        if self.den == _ONE_L:
            return num_s
        den_s = f"({_render_laurent(self.den)})"
        if len(self.num.terms) > 1:
            num_s = f"({num_s})"
        return f"{num_s}/{den_s}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"PiScalar({self.render()!r})"


def _coerce(v) -> PiScalar:
    if isinstance(v, PiScalar):
        return v
    if isinstance(v, (int, Fraction)):
        return PiScalar.from_rational(v)
    return NotImplemented


ZERO = PiScalar(0)
ONE = PiScalar(1)
SQRT_PI = PiScalar.pi_power(1)
PI = PiScalar.pi_power(2)


def _laurent_sign(p: PiLaurent, ceiling: int) -> int:
    if not p:
        return 0
    if len(p.terms) == 1:
        c = p.terms[0][1]
        return 1 if c > 0 else -1
    bits = 64
    enc = None
    while bits <= ceiling:
        enc = p.interval(bits)
        if enc.a > 0:
            return 1
        if enc.b < 0:
            return -1
        bits *= 2
    raise PrecisionExhausted(
        f"sign of {p!r} undecided at {ceiling} bits", enclosure=enc
    )


# ---------------------------------------------------------------------------
# Exact gamma values at half integers, ball volumes, extension multipliers.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def gamma_half(k: int) -> PiScalar:
    """Gamma(k/2 + 1) for integer k >= 0, exact.

    Rational for even k; a rational multiple of sqrt(pi) for odd k, via the
    duplication identity specialised to half integers:
    Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2 == 0:
        return PiScalar.from_rational(factorial(k // 2))
    m = (k + 1) // 2  # Gamma(m + 1/2)
    return PiScalar.pi_power(1, Fraction(factorial(2 * m), 4**m * factorial(m)))


@lru_cache(maxsize=None)
def omega(k: int) -> PiScalar:
    """Volume of the k-dimensional unit ball: pi^(k/2) / Gamma(k/2 + 1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return PiScalar.pi_power(k) / gamma_half(k)


@lru_cache(maxsize=None)
def gamma_multiplier(k: int, q: int) -> PiScalar:
    """pi^(q/2) Gamma(k/2+1) / Gamma((k+q)/2+1), the ambient-extension factor.

    Equals omega(k+q)/omega(k); maps the k-th polynomial coefficient when the
    ambient space gains q dimensions.
    """
    if k < 0 or q < 0:
        raise ValueError("k and q must be nonnegative")
    return PiScalar.pi_power(q) * gamma_half(k) / gamma_half(k + q)


# ---------------------------------------------------------------------------
# Text form: rendering and a round-tripping parser.
# ---------------------------------------------------------------------------


def _render_pi_power(m: int) -> str:
    if m == 0:
        return ""
    if m == 2:
        return "pi"
    if m % 2 == 0:
        return f"pi^{m // 2}"
    return f"pi^({m}/2)"


def _render_laurent(p: PiLaurent) -> str:
    parts = []
    for m, c in reversed(p.terms):
        pi_s = _render_pi_power(m)
        if pi_s:
            if c == 1:
                term = pi_s
            elif c == -1:
                term = f"-{pi_s}"
            else:
                term = f"{c}*{pi_s}"
        else:
            term = str(c)
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>pi)|(?P<op>[-+*/^()])|(?P<end>$))"
)


class _Parser:
    """Recursive-descent parser for the canonical scalar text form."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._tokenize()
        self.i = 0

    def _tokenize(self):
        pos = 0
        while True:
            m = _TOKEN.match(self.text, pos)
            if not m:
                raise ParseError("unexpected character", pos)
            if m.lastgroup == "end":
                self.tokens.append(("end", "", pos))
                return
            self.tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
            pos = m.end()

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        t = self.take()
        if t[0] != kind or (value is not None and t[1] != value):
            raise ParseError(f"expected {value or kind}", t[2])
        return t

    def parse(self) -> PiScalar:
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError("trailing input", t[2])
        return v

    def expr(self) -> PiScalar:
        t = self.peek()
        neg = False
        if t[0] == "op" and t[1] in "+-":
            self.take()
            neg = t[1] == "-"
        v = self.term()
        if neg:
            v = -v
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                v = v - rhs if t[1] == "-" else v + rhs
            else:
                return v

    def term(self) -> PiScalar:
        v = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.take()
                rhs = self.factor()
                v = v / rhs if t[1] == "/" else v * rhs
            else:
                return v

    def factor(self) -> PiScalar:
        t = self.take()
        if t[0] == "num":
            v: PiScalar = PiScalar.from_rational(int(t[1]))
        elif t[0] == "name":
            v = PI
        elif t[0] == "op" and t[1] == "(":
            v = self.expr()
            self.expect("op", ")")
        elif t[0] == "op" and t[1] == "-":
            return -self.factor()
        else:
            raise ParseError("expected a number, 'pi' or '('", t[2])
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.exponent()
            if v == PI:
                num, den = e
                if den == 2:
                    v = PiScalar.pi_power(num)
                elif den == 1:
                    v = PiScalar.pi_power(2 * num)
                else:
                    raise ParseError("pi exponent must be a half integer", t[2])
            else:
                num, den = e
                if den != 1:
                    raise ParseError("fractional power of a non-pi base", t[2])
                v = v**num
        return v

    def exponent(self) -> tuple[int, int]:
        t = self.take()
        if t[0] == "num":
            return int(t[1]), 1
        if t[0] == "op" and t[1] == "(":
            neg = False
            t2 = self.take()
            if t2[0] == "op" and t2[1] == "-":
                neg = True
                t2 = self.take()
            if t2[0] != "num":
                raise ParseError("expected exponent numerator", t2[2])
            num = int(t2[1])
            den = 1
            t3 = self.take()
            if t3[0] == "op" and t3[1] == "/":
                t4 = self.expect("num")
                den = int(t4[1])
                t3 = self.take()
            if t3[0] != "op" or t3[1] != ")":
                raise ParseError("expected ')'", t3[2])
            return (-num if neg else num), den
        if t[0] == "op" and t[1] == "-":
            t2 = self.expect("num")
            return -int(t2[1]), 1
        raise ParseError("malformed exponent", t[2])


def parse_scalar(text: str) -> PiScalar:
    """Parse the canonical text rendering back into a PiScalar."""
    return _Parser(text).parse()
