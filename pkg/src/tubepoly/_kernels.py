"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The exact-arithmetic layers of this package are pure Python by necessity;
the two inner loops that dominate wall-clock time are numeric:

* the simultaneous root-refinement sweep (Aberth correction), and
* point-in-tube tests over millions of Monte-Carlo samples.

Both are implemented twice: once as plain numpy array code and once as
numba ``@njit`` kernels.  Selection is by the environment variable
``TUBEPOLY_BACKEND``: "numba" (default when importable) or "numpy".
``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "BACKEND",
    "aberth_sweeps",
    "distance_squared",
    "segments_for_kernel",
    "SEG_BALL",
    "SEG_CUBE",
    "SEG_FREE",
]

SEG_BALL, SEG_CUBE, SEG_FREE = 0, 1, 2


def _pick_backend() -> str:
    choice = os.environ.get("TUBEPOLY_BACKEND", "").strip().lower()
    if choice in ("numba", "numpy"):
        if choice == "numba":
            try:
                import numba  # noqa: F401
            except ImportError:
                return "numpy"
        return choice
    try:
        import numba  # noqa: F401

        return "numba"
    except ImportError:
        return "numpy"


BACKEND = _pick_backend()


# ---------------------------------------------------------------------------
# Aberth-Ehrlich sweeps
# ---------------------------------------------------------------------------


def _aberth_sweeps_numpy(coeffs: np.ndarray, z: np.ndarray, tol: float, max_sweeps: int):
    """coeffs ascending (c[0] + c[1] z + ...), complex128; z modified in place."""
    d = len(z)
    dcoeffs = coeffs[1:] * np.arange(1, len(coeffs))
    for sweep in range(max_sweeps):
        p = np.polyval(coeffs[::-1], z)
        dp = np.polyval(dcoeffs[::-1], z)
        dp = np.where(dp == 0, 1e-300, dp)
        newton = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        denom = 1.0 - newton * s
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        w = newton / denom
        z -= w
        if np.max(np.abs(w) / (1.0 + np.abs(z))) < tol:
            return sweep + 1
    return max_sweeps


if BACKEND == "numba":
    import numba

    @numba.njit(cache=True)
    def _aberth_sweeps_numba(coeffs, z, tol, max_sweeps):  # pragma: no cover - jit
        d = z.shape[0]
        nc = coeffs.shape[0]
        for sweep in range(max_sweeps):
            worst = 0.0
            for j in range(d):
                zj = z[j]
                p = coeffs[nc - 1] + 0j
                dp = 0.0 + 0j
                for k in range(nc - 2, -1, -1):
                    dp = dp * zj + p
                    p = p * zj + coeffs[k]
                if dp == 0:
                    dp = 1e-300 + 0j
                newton = p / dp
                s = 0.0 + 0j
                for i in range(d):
                    if i != j:
                        s += 1.0 / (zj - z[i])
                denom = 1.0 - newton * s
                if abs(denom) < 1e-300:
                    denom = 1e-300 + 0j
                w = newton / denom
                z[j] = zj - w
                rel = abs(w) / (1.0 + abs(z[j]))
                if rel > worst:
                    worst = rel
            if worst < tol:
                return sweep + 1
        return max_sweeps


def aberth_sweeps(coeffs: np.ndarray, z: np.ndarray, tol: float = 1e-14, max_sweeps: int = 200) -> int:
    """Run simultaneous-correction sweeps in place; returns the sweep count."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if BACKEND == "numba":
        return int(_aberth_sweeps_numba(coeffs, z, tol, max_sweeps))
    return _aberth_sweeps_numpy(coeffs, z, tol, max_sweeps)


# ---------------------------------------------------------------------------
# Body distance over sample blocks
# ---------------------------------------------------------------------------


def segments_for_kernel(segments: list[tuple[int, int, int]]):
    """Pack (kind, start, length) descriptors into arrays for the kernels."""
    kinds = np.array([s[0] for s in segments], dtype=np.int64)
    starts = np.array([s[1] for s in segments], dtype=np.int64)
    lengths = np.array([s[2] for s in segments], dtype=np.int64)
    return kinds, starts, lengths


def _distance_squared_numpy(x: np.ndarray, kinds, starts, lengths) -> np.ndarray:
    total = np.zeros(x.shape[0])
    for kind, start, length in zip(kinds, starts, lengths):
        block = x[:, start : start + length]
        if kind == SEG_BALL:
            r = np.linalg.norm(block, axis=1)
            total += np.maximum(r - 1.0, 0.0) ** 2
        elif kind == SEG_CUBE:
            total += (np.maximum(np.abs(block) - 1.0, 0.0) ** 2).sum(axis=1)
        else:  # SEG_FREE: squeezed directions contribute their squares
            total += (block**2).sum(axis=1)
    return total


if BACKEND == "numba":

    @numba.njit(cache=True, parallel=False)
    def _distance_squared_numba(x, kinds, starts, lengths, out):  # pragma: no cover - jit
        noseg = kinds.shape[0]
        for i in range(x.shape[0]):
            acc = 0.0
            for s in range(noseg):
                kind = kinds[s]
                st = starts[s]
                ln = lengths[s]
                if kind == 0:  # ball
                    r2 = 0.0
                    for j in range(st, st + ln):
                        r2 += x[i, j] * x[i, j]
                    r = np.sqrt(r2)
                    if r > 1.0:
                        acc += (r - 1.0) * (r - 1.0)
                elif kind == 1:  # cube
                    for j in range(st, st + ln):
                        e = abs(x[i, j]) - 1.0
                        if e > 0.0:
                            acc += e * e
                else:  # free
                    for j in range(st, st + ln):
                        acc += x[i, j] * x[i, j]
            out[i] = acc


def distance_squared(x: np.ndarray, kinds, starts, lengths) -> np.ndarray:
    """Squared Euclidean distance from each sample row to the body."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if BACKEND == "numba":
        out = np.empty(x.shape[0])
        _distance_squared_numba(x, kinds, starts, lengths, out)
        return out
    return _distance_squared_numpy(x, kinds, starts, lengths)
