"""Exact root-location classification from coefficient determinants.

Two determinant cascades decide everything:

* dissipativity (all roots in the open left half plane) via the classical
  leading-minor cascade of the coefficient matrix with rows (a1 a3 a5 ...)
  and (a0 a2 a4 ...) interleaved;
* conservativeness (all roots purely imaginary and simple) of an even
  positive polynomial of degree 2m, by running the same cascade after
  splicing in the synthetic odd coefficients a_{2l+1} = (m-l) a_{2l}.

Determinants are computed exactly over Q(sqrt(pi)).  The workhorse is a
structured two-row elimination (each pivot is the ratio of consecutive
leading minors, so the products reproduce the minors exactly); a dense
fraction-free Bareiss determinant serves as the fallback when a pivot
vanishes, and doubles as the independent oracle in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .poly import PiPoly
from .scalars import ONE, PiScalar

__all__ = [
    "ClassificationReport",
    "hurwitz_determinants",
    "bareiss_hurwitz_determinants",
    "conservativeness_determinants",
    "classify_dissipative",
    "classify_conservative",
    "hermite_biehler_check",
    "log_concavity_check",
    "product_inequalities_check",
    "low_dim_implications",
    "search_counterexample",
]


def _scalar(x) -> PiScalar:
    if isinstance(x, PiScalar):
        return x
    return PiScalar.from_rational(x)


# ---------------------------------------------------------------------------
# Determinant cascades
# ---------------------------------------------------------------------------


def _hurwitz_matrix(a: Sequence[PiScalar], k: int) -> list[list[PiScalar]]:
    n = len(a) - 1

    def entry(i: int, j: int) -> PiScalar:  # 1-based
        idx = 2 * j - i
        return a[idx] if 0 <= idx <= n else PiScalar(0)

    return [[entry(i, j) for j in range(1, k + 1)] for i in range(1, k + 1)]


def _bareiss_det(rows: list[list[PiScalar]]) -> PiScalar:
    """Fraction-free determinant with row pivoting (exact over the field)."""
    m = len(rows)
    if m == 0:
        return ONE
    M = [row[:] for row in rows]
    sign = 1
    prev = ONE
    for c in range(m - 1):
        if not M[c][c]:
            for r in range(c + 1, m):
                if M[r][c]:
                    M[c], M[r] = M[r], M[c]
                    sign = -sign
                    break
            else:
                return PiScalar(0)
        for r in range(c + 1, m):
            for cc in range(c + 1, m):
                M[r][cc] = (M[c][c] * M[r][cc] - M[r][c] * M[c][cc]) / prev
            M[r][c] = PiScalar(0)
        prev = M[c][c]
    det = M[m - 1][m - 1]
    return det if sign == 1 else -det


def bareiss_hurwitz_determinants(a: Sequence, upto: Optional[int] = None) -> list[PiScalar]:
    """All leading minors by independent dense eliminations.  O(n^4); this is
    the reference implementation and the fallback for degenerate pivots."""
    a = [_scalar(x) for x in a]
    n = len(a) - 1
    upto = n if upto is None else upto
    return [_bareiss_det(_hurwitz_matrix(a, k)) for k in range(1, upto + 1)]


def hurwitz_determinants(
    a: Sequence,
    upto: Optional[int] = None,
    stop_when: Optional[Callable[[int, PiScalar], bool]] = None,
) -> list[PiScalar]:
    """Exact leading-minor cascade for the coefficient sequence a0..an
    (leading coefficient first), with a_k = 0 beyond the degree.

    The two-row elimination produces pivot p_k = minor_k / minor_{k-1}; the
    returned list holds the minors themselves.  ``stop_when(k, minor_k)``
    may truncate the cascade (used for early classification exits).  A zero
    pivot ends the fast path; remaining minors come from the dense fallback.
    """
    a = [_scalar(x) for x in a]
    if not a:
        raise ValueError("empty coefficient sequence")
    n = len(a) - 1
    upto = n if upto is None else min(upto, n)
    if a[0].sign() == 0:
        raise ValueError("leading coefficient must be nonzero")
    prev = a[0::2]  # a0 a2 a4 ...
    cur = a[1::2]  # a1 a3 a5 ...
    minors: list[PiScalar] = []
    acc = ONE
    for k in range(1, upto + 1):
        if k > 1:
            if not cur or not cur[0]:
                # degenerate pivot: finish with independent dense minors
                for kk in range(k, upto + 1):
                    d = _bareiss_det(_hurwitz_matrix(a, kk))
                    minors.append(d)
                    if stop_when and stop_when(kk, d):
                        return minors
                return minors
            ratio = prev[0] / cur[0]
            nxt = []
            width = max(len(prev), len(cur))
            for j in range(1, width):
                pj = prev[j] if j < len(prev) else PiScalar(0)
                cj = cur[j] if j < len(cur) else PiScalar(0)
                nxt.append(pj - ratio * cj)
            while nxt and not nxt[-1]:
                nxt.pop()
            prev, cur = cur, nxt
        pivot = cur[0] if cur else PiScalar(0)
        acc = acc * pivot
        minors.append(acc)
        if stop_when and stop_when(k, acc):
            return minors
        if not pivot:
            # the product hit zero: everything after comes from the fallback
            for kk in range(k + 1, upto + 1):
                d = _bareiss_det(_hurwitz_matrix(a, kk))
                minors.append(d)
                if stop_when and stop_when(kk, d):
                    return minors
            return minors
    return minors


def conservativeness_determinants(a_even: Sequence, upto: Optional[int] = None) -> list[PiScalar]:
    """D_1..D_{2m} for an even polynomial given by its even coefficients
    a0, a2, ..., a_{2m} (leading first): the cascade of the full sequence
    with spliced odd entries a_{2l+1} = (m-l) a_{2l}."""
    return hurwitz_determinants(_splice_conservative(a_even), upto=upto)


def _splice_conservative(a_even: Sequence) -> list[PiScalar]:
    a_even = [_scalar(x) for x in a_even]
    if not a_even:
        raise ValueError("empty coefficient sequence")
    m = len(a_even) - 1
    full: list[PiScalar] = []
    for l, a2l in enumerate(a_even):
        full.append(a2l)
        if l < m:
            full.append(_scalar(m - l) * a2l)
    return full


# ---------------------------------------------------------------------------
# Reports and classification
# ---------------------------------------------------------------------------

Verdict = str  # "Dissipative" | "Conservative" | "NotDissipative" | "NotConservative" | "DegenerateInput"


@dataclass
class ClassificationReport:
    verdict: Verdict
    method: str
    determinants: list[PiScalar] = field(default_factory=list)
    failing_index: Optional[int] = None
    reason: Optional[str] = None
    t_power_removed: int = 0
    annotations: list[str] = field(default_factory=list)
    witnesses: Optional[list[complex]] = None

    @property
    def passed(self) -> bool:
        return self.verdict in ("Dissipative", "Conservative")

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "determinants": [d.render() for d in self.determinants],
            "failing_index": self.failing_index,
            "reason": self.reason,
            "t_power_removed": self.t_power_removed,
            "annotations": list(self.annotations),
            "witnesses": None
            if self.witnesses is None
            else [[z.real, z.imag] for z in self.witnesses],
        }


def _descending(p: PiPoly) -> list[PiScalar]:
    return [p[k] for k in range(p.degree, -1, -1)]


def _sign_normalize(coeffs: list[PiScalar], annotations: list[str]) -> list[PiScalar]:
    if coeffs and coeffs[0].sign() < 0:
        annotations.append("sign-normalized by -1")
        return [-c for c in coeffs]
    return coeffs


def classify_dissipative(
    P: PiPoly,
    with_witnesses: bool = False,
    bits: int = 64,
    parity: str = "all",
) -> ClassificationReport:
    """Decide whether every root lies in the open left half plane.

    A factor t^m is removed first (the verdict then describes the cofactor
    and the report is annotated as degenerate input).  Strict coefficient
    positivity is a necessary condition and is checked before the cascade.
    ``parity`` can restrict the cascade to "even" or "odd" indexed minors,
    the classical shortcut; the default inspects all of them.
    """
    if P.is_zero():
        raise ValueError("cannot classify the zero polynomial")
    m = P.vanishing_order()
    annotations: list[str] = []
    if m:
        annotations.append(f"factored t^{m} (degenerate input)")
        P = P.shift_down(m)
    report = ClassificationReport(
        verdict="Dissipative", method="hurwitz-minors", t_power_removed=m, annotations=annotations
    )
    if P.degree == 0:
        report.annotations.append("constant cofactor; no roots")
        return report
    coeffs = _sign_normalize(_descending(P), annotations)
    signs = [c.sign() for c in coeffs]
    if any(s <= 0 for s in signs):
        bad = next(i for i, s in enumerate(signs) if s <= 0)
        report.verdict = "NotDissipative"
        report.reason = (
            f"necessary condition violated: coefficient of t^{P.degree - bad} "
            f"is {'zero' if signs[bad] == 0 else 'negative'}"
        )
        report.failing_index = bad
        if with_witnesses:
            report.witnesses = _rhp_witnesses(P, bits)
        return report

    checked = {"all": None, "even": 0, "odd": 1}
    if parity not in checked:
        raise ValueError("parity must be 'all', 'even' or 'odd'")
    want = checked[parity]

    failing: list[int] = []

    def stop(k: int, d: PiScalar) -> bool:
        if want is not None and k % 2 != want:
            return False
        if d.sign() <= 0:
            failing.append(k)
            return True
        return False

    dets = hurwitz_determinants(coeffs, stop_when=stop)
    report.determinants = dets
    if failing:
        k = failing[0]
        report.verdict = "NotDissipative"
        report.failing_index = k
        boundary = not dets[k - 1]
        report.reason = (
            f"minor {k} is zero (boundary)" if boundary else f"minor {k} is negative"
        )
        if boundary:
            report.annotations.append("boundary")
        if with_witnesses:
            report.witnesses = _rhp_witnesses(P, bits)
    return report


def classify_conservative(P: PiPoly, with_witnesses: bool = False, bits: int = 64) -> ClassificationReport:
    """Decide whether every root is purely imaginary and simple.

    Requires an even polynomial with strictly positive coefficients (after
    sign normalization); anything else is reported NotConservative with the
    reason, as the determinant criterion does not apply.
    """
    if P.is_zero():
        raise ValueError("cannot classify the zero polynomial")
    annotations: list[str] = []
    report = ClassificationReport(
        verdict="Conservative", method="conservativeness-minors", annotations=annotations
    )
    if not P.is_even():
        report.verdict = "NotConservative"
        report.reason = "polynomial is not even"
        report.failing_index = 0
        return report
    if P.degree == 0:
        report.annotations.append("constant polynomial; no roots")
        return report
    even_desc = [P[k] for k in range(P.degree, -1, -2)]
    even_desc = _sign_normalize(even_desc, annotations)
    signs = [c.sign() for c in even_desc]
    if any(s <= 0 for s in signs):
        bad = next(i for i, s in enumerate(signs) if s <= 0)
        report.verdict = "NotConservative"
        report.reason = (
            f"necessary condition violated: coefficient of t^{P.degree - 2 * bad} "
            f"is {'zero' if signs[bad] == 0 else 'negative'}"
        )
        report.failing_index = bad
        return report

    failing: list[int] = []

    def stop(k: int, d: PiScalar) -> bool:
        if d.sign() <= 0:
            failing.append(k)
            return True
        return False

    dets = hurwitz_determinants(_splice_conservative(even_desc), stop_when=stop)
    report.determinants = dets
    if failing:
        k = failing[0]
        report.verdict = "NotConservative"
        report.failing_index = k
        boundary = not dets[k - 1]
        report.reason = (
            f"minor {k} is zero (boundary)" if boundary else f"minor {k} is negative"
        )
        if boundary:
            report.annotations.append("boundary")
        if with_witnesses:
            from .roots import find_roots

            rs = find_roots(P, bits=bits)
            report.witnesses = [z for z in rs.roots if abs(z.real) > 1e-9 * (1 + abs(z))]
    return report


def _rhp_witnesses(P: PiPoly, bits: int) -> list[complex]:
    from .roots import find_roots

    rs = find_roots(P, bits=bits)
    return [z for z in rs.roots if z.real > 1e-9 * (1 + abs(z))]


def hermite_biehler_check(P: PiPoly, bits: int = 64, root_backend=None) -> ClassificationReport:
    """Numeric interlacing test: the even and odd parts must both have purely
    imaginary simple roots, and the two root sets must interlace on the axis.

    An independent cross-check of `classify_dissipative`; the two verdicts
    are asserted to agree throughout the test suite.
    """
    if P.is_zero():
        raise ValueError("cannot classify the zero polynomial")
    from .roots import find_roots

    backend = root_backend or (lambda poly: find_roots(poly, bits=bits))
    m = P.vanishing_order()
    annotations: list[str] = []
    if m:
        annotations.append(f"factored t^{m} (degenerate input)")
        P = P.shift_down(m)
    report = ClassificationReport(
        verdict="Dissipative", method="hermite-biehler", t_power_removed=m, annotations=annotations
    )
    coeffs = _sign_normalize(_descending(P), annotations)
    if any(c.sign() <= 0 for c in coeffs):
        report.verdict = "NotDissipative"
        report.reason = "necessary condition violated: nonpositive coefficient"
        return report
    if P.degree == 0:
        return report
    even, odd = P.even_odd_parts()
    tol = 1e-9

    def imag_parts(poly: PiPoly, drop_zero_root: bool) -> Optional[list[float]]:
        if drop_zero_root:
            poly = poly.shift_down(1)
        if poly.degree < 1:
            return []
        rs = backend(poly)
        vals = []
        for z in rs.roots:
            if abs(z.real) > tol * (1 + abs(z)):
                return None  # off-axis root
            vals.append(z.imag)
        vals.sort()
        for x, y in zip(vals, vals[1:]):
            if y - x <= tol * (1 + abs(x) + abs(y)):
                return None  # multiple root
        return vals

    e_im = imag_parts(even, drop_zero_root=False)
    o_im = imag_parts(odd, drop_zero_root=True)
    if o_im is not None:
        o_im = sorted(o_im + [0.0])  # odd part always vanishes at the origin
    if e_im is None or o_im is None:
        report.verdict = "NotDissipative"
        report.reason = "even or odd part is not conservative"
        return report
    merged = sorted((x, 0) for x in e_im) + sorted((x, 1) for x in o_im)
    merged.sort()
    labels = [lab for _, lab in merged]
    if any(a == b for a, b in zip(labels, labels[1:])):
        report.verdict = "NotDissipative"
        report.reason = "root sets of even and odd parts do not interlace"
        return report
    return report


# ---------------------------------------------------------------------------
# Log-concavity and the low-dimension inequality sets
# ---------------------------------------------------------------------------


def log_concavity_check(v: Sequence, products: bool = False) -> tuple[bool, Optional[int]]:
    """Verify v_k^2 >= v_{k-1} v_{k+1} at every interior index (exact).

    Returns (True, None) or (False, first failing k).  With ``products``
    the implied four-index comparisons v_q v_r >= v_p v_s (inner pair beats
    outer pair whenever p <= q <= r <= s and p + s = q + r) are verified too.
    """
    v = [_scalar(x) for x in v]
    if any(x.sign() < 0 for x in v):
        raise ValueError("entries must be nonnegative")
    for k in range(1, len(v) - 1):
        if (v[k] * v[k] - v[k - 1] * v[k + 1]).sign() < 0:
            return False, k
    if products:
        ok, idx = product_inequalities_check(v)
        if not ok:
            return False, idx
    return True, None


def product_inequalities_check(v: Sequence) -> tuple[bool, Optional[int]]:
    """The derived comparisons v_q v_r >= v_p v_s for nested equal-sum pairs."""
    v = [_scalar(x) for x in v]
    n = len(v) - 1
    for p in range(n + 1):
        for q in range(p, n + 1):
            for s in range(q, n + 1):
                r = p + s - q
                if q <= r <= s:
                    if (v[q] * v[r] - v[p] * v[s]).sign() < 0:
                        return False, p
    return True, None


def _steiner_shaped(v: Sequence) -> PiPoly:
    from math import comb

    v = [_scalar(x) for x in v]
    n = len(v) - 1
    return PiPoly([_scalar(comb(n, k)) * v[n - k] for k in range(n + 1)])


def low_dim_implications(v: Sequence, n: int, weyl: bool = False) -> dict[str, bool]:
    """Evaluate the explicit inequality sets that make low-dimensional
    tube polynomials dissipative (n in 2..5) or their even companions
    conservative (surface dimension n in {4, 5}).  All comparisons exact."""
    v = [_scalar(x) for x in v]

    def pos(x: PiScalar) -> bool:
        return x.sign() > 0

    if weyl:
        if n == 4:
            if len(v) < 5:
                raise ValueError("need v_0..v_4")
            return {"3*v2^2 > v0*v4": pos(3 * v[2] * v[2] - v[0] * v[4])}
        if n == 5:
            if len(v) < 6:
                raise ValueError("need v_0..v_5")
            return {"5*v3^2 > 3*v1*v5": pos(5 * v[3] * v[3] - 3 * v[1] * v[5])}
        raise ValueError("even-polynomial mode covers n in {4, 5}")
    if len(v) < n + 1:
        raise ValueError(f"need v_0..v_{n}")
    if n == 2:
        return {"2*v1*v2 > 0": pos(2 * v[1] * v[2])}
    if n == 3:
        return {"9*v1*v2 > v0*v3": pos(9 * v[1] * v[2] - v[0] * v[3])}
    if n == 4:
        return {
            "6*v1*v2 > v0*v3": pos(6 * v[1] * v[2] - v[0] * v[3]),
            "6*v1*v2*v3 > v0*v3^2 + v1^2*v4": pos(
                6 * v[1] * v[2] * v[3] - v[0] * v[3] * v[3] - v[1] * v[1] * v[4]
            ),
        }
    if n == 5:
        i1 = 5 * v[1] * v[2] - v[0] * v[3]
        i2 = 100 * v[1] * v[2] * v[3] + v[0] * v[1] * v[5] - 20 * v[0] * v[3] * v[3] - 25 * v[1] * v[1] * v[4]
        i3 = (
            2500 * v[1] * v[2] * v[3] * v[4]
            + 100 * v[0] * v[2] * v[3] * v[5]
            + 50 * v[0] * v[1] * v[4] * v[5]
            - 625 * v[1] * v[1] * v[4] * v[4]
            - 500 * v[0] * v[3] * v[3] * v[4]
            - 500 * v[1] * v[2] * v[2] * v[5]
            - v[0] * v[0] * v[5] * v[5]
        )
        return {
            "5*v1*v2 > v0*v3": pos(i1),
            "100*v1*v2*v3 + v0*v1*v5 > 20*v0*v3^2 + 25*v1^2*v4": pos(i2),
            "2500*v1*v2*v3*v4 + 100*v0*v2*v3*v5 + 50*v0*v1*v4*v5 > 625*v1^2*v4^2 + 500*v0*v3^2*v4 + 500*v1*v2^2*v5 + v0^2*v5^2": pos(i3),
        }
    raise ValueError("n must be one of 2, 3, 4, 5")


# ---------------------------------------------------------------------------
# Search for high-dimension counterexamples among log-concave sequences
# ---------------------------------------------------------------------------


@dataclass
class CounterexampleWitness:
    v: list[Fraction]
    failing_minor: int
    minor_value: PiScalar
    candidates_tried: int


def search_counterexample(
    n: int, seed: int = 0, budget: int = 100_000, max_minor: int = 6
) -> Optional[CounterexampleWitness]:
    """Randomized search for a positive log-concave sequence v_0..v_n whose
    binomially weighted polynomial has a nonpositive leading minor.

    Samples piecewise-geometric profiles (log-linear with one kink, which is
    automatically log-concave) with rational ratios, then verifies both the
    log-concavity and the offending minor exactly.  Returns None when the
    budget is exhausted; for n <= 5 that is the guaranteed outcome.
    """
    import random
    from math import comb

    rng = random.Random(seed)
    for tried in range(1, budget + 1):
        k0 = rng.randint(1, n - 1)
        r1 = Fraction(rng.randint(1, 60), rng.randint(1, 60))
        r2 = r1 * Fraction(rng.randint(1, 19), 20)
        v: list[Fraction] = []
        cur = Fraction(1)
        for k in range(n + 1):
            v.append(cur)
            cur = cur * (r1 if k < k0 else r2)
        a = [PiScalar.from_rational(comb(n, k) * v[k]) for k in range(n + 1)]
        hit: list[tuple[int, PiScalar]] = []

        def stop(k: int, d: PiScalar, _hit=hit) -> bool:
            if d.sign() <= 0:
                _hit.append((k, d))
                return True
            return False

        hurwitz_determinants(a, upto=min(max_minor, n), stop_when=stop)
        if hit:
            ok, _ = log_concavity_check([PiScalar.from_rational(x) for x in v])
            if ok:
                k, d = hit[0]
                return CounterexampleWitness(
                    v=v, failing_minor=k, minor_value=d, candidates_tried=tried
                )
    return None
