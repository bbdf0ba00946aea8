"""Numeric root finding for exact polynomials, with certified residuals.

The solver is simultaneous-iteration (Aberth-style corrections) started
from a perturbed circle sized by the coefficient magnitudes.  Coefficients
enter the float64 kernel after argument rescaling and magnitude
normalization; when the requested precision exceeds double (or the
coefficient range cannot be balanced into float64), the same iteration runs
under mpmath at 3x the target precision.  Every reported root carries a
residual bound certified by interval evaluation, and tight pairs are
flagged as clusters rather than silently polished apart.

Results are deterministic for a fixed (polynomial, bits) pair: the start
configuration is a fixed golden-angle perturbation of a circle, with no
randomness anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from mpmath import mp, mpc, mpf

from ._kernels import aberth_sweeps
from .poly import PiPoly

__all__ = ["RootSet", "find_roots", "polish_root", "classify_numeric", "ball_weyl1_roots"]


@dataclass
class RootSet:
    roots: list[complex]
    residuals: list[float]
    cluster_flags: list[bool]
    scale: float
    sweeps: int
    converged: bool

    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0


class RootFindingError(RuntimeError):
    def __init__(self, message: str, partial: Optional[RootSet] = None):
        super().__init__(message)
        self.partial = partial


def _log_magnitudes(P: PiPoly, bits: int) -> list[Optional[float]]:
    out = []
    for c in P:
        if not c:
            out.append(None)
            continue
        enc = c.interval(bits)
        mid = (mpf(enc.a) + mpf(enc.b)) / 2
        out.append(float(mp.log(abs(mid))))
    return out


def _mp_coeffs(P: PiPoly, bits: int) -> list:
    old = mp.prec
    try:
        mp.prec = bits
        vals = []
        for c in P:
            if not c:
                vals.append(mpf(0))
            else:
                enc = c.interval(bits)
                vals.append((mpf(enc.a) + mpf(enc.b)) / 2)
        return vals
    finally:
        mp.prec = old


def _start_points(d: int, radius: float):
    # golden-angle offsets break symmetric stagnation deterministically
    golden = 2.0 * math.pi * 0.3819660112501051
    pts = np.empty(d, dtype=np.complex128)
    for j in range(d):
        ang = 2.0 * math.pi * j / d + golden * (j % 7 + 1) / 8.0 + 0.31
        r = radius * (1.0 + 0.05 * ((j * 2654435761) % 97) / 97.0)
        pts[j] = r * complex(math.cos(ang), math.sin(ang))
    return pts


def find_roots(P: PiPoly, bits: int = 53, max_sweeps: int = 400) -> RootSet:
    """All complex roots of P with per-root certified residual bounds."""
    if P.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    m = P.vanishing_order()
    work_bits = max(bits, 53)
    logs = _log_magnitudes(P, max(64, work_bits))
    # argument scale sigma = geometric mean of root moduli of the cofactor
    lead = logs[-1]
    low = logs[m]
    d = P.degree - m
    log_sigma = (low - lead) / d if d > 0 else 0.0
    # balanced log-coefficients: log|a_k| + (k - m) * log_sigma
    balanced = []
    for k in range(m, len(logs)):
        lk = logs[k]
        balanced.append(None if lk is None else lk + (k - m) * log_sigma)
    peak = max(b for b in balanced if b is not None)
    spread = peak - min(b for b in balanced if b is not None)

    use_float64 = bits <= 53 and spread < 600.0
    if use_float64:
        coeffs = np.zeros(d + 1, dtype=np.complex128)
        signs = [P[k + m].sign() if P[k + m] else 0 for k in range(d + 1)]
        for k in range(d + 1):
            b = balanced[k]
            if b is not None:
                coeffs[k] = signs[k] * math.exp(b - peak)
        radius = _cauchy_radius(coeffs)
        z = _start_points(d, radius)
        sweeps = aberth_sweeps(coeffs, z, tol=1e-14, max_sweeps=max_sweeps)
        converged = sweeps < max_sweeps
        if not converged:
            # multiple-root clusters stagnate on step size; accept when the
            # backward error sits at rounding level for every approximation
            be = _backward_errors(coeffs, z)
            converged = bool(np.max(be) < 1e-10)
        sigma = math.exp(log_sigma)
        approx = [complex(r) * sigma for r in z]
    else:
        approx, sweeps, converged = _aberth_mp(P, m, d, log_sigma, 3 * work_bits, max_sweeps)

    # polish against the exact polynomial at elevated precision
    scale = math.exp(peak + lead)  # magnitude of the largest balanced term
    polished, residuals = _polish_many(P, approx, bits=2 * work_bits)
    zero_roots = [0j] * m
    zero_res = [0.0] * m
    roots = zero_roots + polished
    residuals = zero_res + residuals

    order = np.lexsort((np.array([z.imag for z in roots]), np.array([z.real for z in roots])))
    roots = [roots[i] for i in order]
    residuals = [residuals[i] for i in order]
    flags = _cluster_flags(roots)
    rs = RootSet(
        roots=roots,
        residuals=residuals,
        cluster_flags=flags,
        scale=scale,
        sweeps=sweeps,
        converged=converged,
    )
    if not converged:
        raise RootFindingError(
            f"simultaneous iteration did not settle in {max_sweeps} sweeps", partial=rs
        )
    return rs


def _backward_errors(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    vals = np.polyval(coeffs[::-1], z)
    mags = np.polyval(np.abs(coeffs[::-1]), np.abs(z))
    mags = np.where(mags == 0, 1.0, mags)
    return np.abs(vals) / mags


def _cauchy_radius(coeffs: np.ndarray) -> float:
    lead = abs(coeffs[-1])
    if lead == 0:
        return 1.0
    return 1.0 + max(abs(c) for c in coeffs[:-1]) / lead


def _cluster_flags(roots: list[complex], rel: float = 5e-3) -> list[bool]:
    # a coarse proximity flag: multiplicity-m clusters spread like eps^(1/m),
    # so anything tighter than this is suspect; exact multiplicity questions
    # belong to the determinant criteria, not the numeric witness
    flags = [False] * len(roots)
    for i, zi in enumerate(roots):
        for j in range(i + 1, len(roots)):
            zj = roots[j]
            if abs(zi - zj) < rel * (1.0 + abs(zi) + abs(zj)):
                flags[i] = flags[j] = True
    return flags


def _aberth_mp(P: PiPoly, m: int, d: int, log_sigma: float, bits: int, max_sweeps: int):
    old = mp.prec
    try:
        mp.prec = bits
        sigma = mp.e**log_sigma
        cs = _mp_coeffs(P, bits)[m:]
        cs = [c * sigma**k for k, c in enumerate(cs)]
        peak = max(abs(c) for c in cs if c)
        cs = [c / peak for c in cs]
        radius = 1.0 + max(float(abs(c)) for c in cs[:-1]) / float(abs(cs[-1]))
        start = _start_points(d, radius)
        z = [mpc(w) for w in start]
        dcs = [k * cs[k] for k in range(1, d + 1)]
        tol = mpf(2) ** (-(bits // 3))
        sweeps = max_sweeps
        for sweep in range(max_sweeps):
            worst = mpf(0)
            for j in range(d):
                zj = z[j]
                p = cs[-1]
                for k in range(d - 1, -1, -1):
                    p = p * zj + cs[k]
                dp = dcs[-1]
                for k in range(d - 2, -1, -1):
                    dp = dp * zj + dcs[k]
                if dp == 0:
                    dp = mpf(1e-300)
                newton = p / dp
                s = mpc(0)
                for i in range(d):
                    if i != j:
                        s += 1 / (zj - z[i])
                denom = 1 - newton * s
                if abs(denom) < mpf(1e-300):
                    denom = mpf(1e-300)
                w = newton / denom
                z[j] = zj - w
                rel = abs(w) / (1 + abs(z[j]))
                if rel > worst:
                    worst = rel
            if worst < tol:
                sweeps = sweep + 1
                break
        approx = [complex(zz * sigma) for zz in z]
        return approx, sweeps, sweeps < max_sweeps
    finally:
        mp.prec = old


def _interval_coeffs(P: PiPoly, bits: int):
    from mpmath import iv

    old = iv.prec
    try:
        iv.prec = bits
        out = []
        for c in P:
            out.append(c.interval(bits) if c else iv.mpf(0))
        return out
    finally:
        iv.prec = old


def _certify_residuals(P: PiPoly, zs: list[complex], bits: int) -> list[float]:
    """Upper bounds on |P(z)| by one interval Horner pass per point."""
    from mpmath import iv

    cs = _interval_coeffs(P, bits)
    old = iv.prec
    try:
        iv.prec = bits
        zero = iv.mpf(0)
        out = []
        for z in zs:
            re = iv.mpf(z.real)
            im = iv.mpf(z.imag)
            are, aim = zero, zero
            for c in reversed(cs):
                nre = are * re - aim * im + c
                aim = are * im + aim * re
                are = nre
            ru = max(abs(mpf(are.a)), abs(mpf(are.b)))
            iu = max(abs(mpf(aim.a)), abs(mpf(aim.b)))
            out.append(float(mp.sqrt(ru * ru + iu * iu)))
        return out
    finally:
        iv.prec = old


def _polish_many(P: PiPoly, approx: list[complex], bits: int, steps: int = 60):
    """Newton-refine approximations against the exact polynomial (shared
    coefficient conversion), then certify every residual."""
    old = mp.prec
    try:
        mp.prec = bits
        cs = _mp_coeffs(P, bits)
        d = P.degree
        dcs = [k * cs[k] for k in range(1, d + 1)]
        tol = mpf(2) ** (-bits)
        polished = []
        for z0 in approx:
            z = mpc(z0)
            for _ in range(steps):
                p = cs[-1]
                for k in range(d - 1, -1, -1):
                    p = p * z + cs[k]
                dp = dcs[-1] if dcs else mpf(0)
                for k in range(d - 2, -1, -1):
                    dp = dp * z + dcs[k]
                if dp == 0:
                    break
                dz = p / dp
                z -= dz
                if abs(dz) < tol * (1 + abs(z)):
                    break
            polished.append(complex(z))
    finally:
        mp.prec = old
    residuals = _certify_residuals(P, polished, max(64, bits))
    return polished, residuals


def polish_root(P: PiPoly, z0: complex, bits: int = 106, steps: int = 60) -> tuple[complex, float]:
    """Newton-refine a root approximation against the exact polynomial and
    certify |P(z)| by interval evaluation.  Returns (root, residual bound)."""
    polished, residuals = _polish_many(P, [z0], bits=bits, steps=steps)
    return polished[0], residuals[0]


def classify_numeric(rootset: RootSet, tol: float = 1e-9) -> str:
    """'dissipative' | 'conservative' | 'neither' | 'inconclusive'.

    Dissipative needs every root clearly left of the axis; conservative
    needs every root inside the axis band and pairwise separated; roots
    inside the tolerance band without separation are inconclusive.
    """
    roots = rootset.roots
    if not roots:
        return "inconclusive"
    left = all(z.real < -tol * (1 + abs(z)) for z in roots)
    if left:
        return "dissipative"
    on_axis = all(abs(z.real) <= tol * (1 + abs(z)) for z in roots)
    if on_axis:
        sep = True
        for i, zi in enumerate(roots):
            for zj in roots[i + 1 :]:
                if abs(zi - zj) <= tol * (1 + abs(zi) + abs(zj)):
                    sep = False
        if sep:
            return "conservative"
        return "inconclusive"
    strictly_right = any(z.real > tol * (1 + abs(z)) for z in roots)
    band = any(abs(z.real) <= tol * (1 + abs(z)) for z in roots)
    if strictly_right or not band:
        return "neither"
    return "inconclusive"


def ball_weyl1_roots(n: int, bits: int = 53) -> list[complex]:
    """Exact root list {i*tan(k*pi/(n+1))} of the index-1 polynomial of the
    n-sphere's tube, evaluated numerically; empty for n < 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    old = mp.prec
    try:
        mp.prec = max(bits, 53) + 16
        out = []
        for k in range(1, n // 2 + 1):
            t = mp.tan(mp.pi * k / (n + 1))
            out.append(complex(0.0, float(t)))
            out.append(complex(0.0, -float(t)))
        out.sort(key=lambda z: (z.real, z.imag))
        return out
    finally:
        mp.prec = old
