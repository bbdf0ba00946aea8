"""Geometry-level validation: direct Monte-Carlo tube volumes.

Independently of all polynomial algebra, the volume of body + t*ball can be
estimated by hit-or-miss sampling of the bounding box using nothing but the
Euclidean distance function of the body expression.  The estimate and its
binomial standard error give the test suite a purely geometric oracle.

Reproducibility contract: for a fixed (seed, samples) pair the estimate is
bit-identical regardless of how the work is chunked, because every chunk
draws from its own child of the root seed sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from time import perf_counter

import numpy as np

from . import _kernels
from .bodies import Adjoint, Ball, BodySpec, Cube, Product, ambient_dim

__all__ = ["McEstimate", "body_distance", "mc_tube_volume", "mc_tube_volumes"]

DIMENSION_CAP = 8
_CHUNK = 1 << 16


@dataclass
class McEstimate:
    volume: float
    stderr: float
    hits: int
    samples: int
    t: float
    seed: int
    elapsed: float


def _segments(body: BodySpec, start: int = 0) -> list[tuple[int, int, int]]:
    if isinstance(body, Ball):
        return [(_kernels.SEG_BALL, start, body.n)]
    if isinstance(body, Cube):
        return [(_kernels.SEG_CUBE, start, body.n)]
    if isinstance(body, Adjoint):
        inner = _segments(body.body, start)
        free_start = start + ambient_dim(body.body)
        return inner + [(_kernels.SEG_FREE, free_start, body.q)]
    if isinstance(body, Product):
        left = _segments(body.left, start)
        right = _segments(body.right, start + ambient_dim(body.left))
        return left + right
    raise TypeError(f"not a body: {body!r}")


def body_distance(body: BodySpec, x) -> float:
    """Euclidean distance from a point to the body (0 inside)."""
    x = np.asarray(x, dtype=np.float64)
    n = ambient_dim(body)
    if x.shape != (n,):
        raise ValueError(f"point has shape {x.shape}, ambient dimension is {n}")
    kinds, starts, lengths = _kernels.segments_for_kernel(_segments(body))
    d2 = _kernels.distance_squared(x[None, :], kinds, starts, lengths)
    return float(np.sqrt(d2[0]))


def _hit_counts(body: BodySpec, ts: list[float], box_half: float, samples: int, seed: int):
    """Hits for several radii over one shared sample stream and box."""
    n = ambient_dim(body)
    kinds, starts, lengths = _kernels.segments_for_kernel(_segments(body))
    thresholds = np.array([t * t for t in ts])
    hits = np.zeros(len(ts), dtype=np.int64)
    done = 0
    chunk_index = 0
    while done < samples:
        take = min(_CHUNK, samples - done)
        child = np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,))
        rng = np.random.Generator(np.random.PCG64(child))
        pts = rng.uniform(-box_half, box_half, size=(take, n))
        d2 = _kernels.distance_squared(pts, kinds, starts, lengths)
        for i, thr in enumerate(thresholds):
            hits[i] += int(np.count_nonzero(d2 <= thr))
        done += take
        chunk_index += 1
    return hits


def mc_tube_volume(body: BodySpec, t: float, samples: int = 1_000_000, seed: int = 0) -> McEstimate:
    """Hit-or-miss estimate of Vol(body + t*ball) over [-1-t, 1+t]^n."""
    if t <= 0:
        raise ValueError("tube radius t must be positive")
    if samples < 1000:
        raise ValueError("use at least 1000 samples")
    n = ambient_dim(body)
    if n > DIMENSION_CAP:
        raise ValueError(
            f"ambient dimension {n} exceeds the Monte-Carlo cap of {DIMENSION_CAP}"
        )
    start = perf_counter()
    box_half = 1.0 + t
    hits = _hit_counts(body, [t], box_half, samples, seed)[0]
    box_volume = (2.0 * box_half) ** n
    p = hits / samples
    volume = box_volume * p
    stderr = box_volume * float(np.sqrt(max(p * (1.0 - p), 1e-300) / samples))
    return McEstimate(
        volume=volume,
        stderr=stderr,
        hits=int(hits),
        samples=samples,
        t=t,
        seed=seed,
        elapsed=perf_counter() - start,
    )


def mc_tube_volumes(
    body: BodySpec, ts: list[float], samples: int = 1_000_000, seed: int = 0
) -> list[McEstimate]:
    """Estimates for several radii from one shared sample stream and a common
    bounding box sized by the largest radius.  Because the hit sets are then
    nested pointwise, the estimates are monotone in t for any fixed seed."""
    if not ts or any(t <= 0 for t in ts):
        raise ValueError("tube radii must be positive")
    if samples < 1000:
        raise ValueError("use at least 1000 samples")
    n = ambient_dim(body)
    if n > DIMENSION_CAP:
        raise ValueError(
            f"ambient dimension {n} exceeds the Monte-Carlo cap of {DIMENSION_CAP}"
        )
    start = perf_counter()
    box_half = 1.0 + max(ts)
    hits = _hit_counts(body, list(ts), box_half, samples, seed)
    box_volume = (2.0 * box_half) ** n
    out = []
    for t, h in zip(ts, hits):
        p = h / samples
        out.append(
            McEstimate(
                volume=box_volume * p,
                stderr=box_volume * float(np.sqrt(max(p * (1.0 - p), 1e-300) / samples)),
                hits=int(h),
                samples=samples,
                t=t,
                seed=seed,
                elapsed=perf_counter() - start,
            )
        )
    return out
