"""Random test domains for invariant checks."""
from __future__ import annotations

import numpy as np

from ..domains import ComplexEllipsoid, DomainError, HalfSpacePolytope, sample_interior


def random_polytope(n: int, faces: int, rng: np.random.Generator) -> HalfSpacePolytope:
    """Bounded polytope with ``faces`` random complex normals and offsets in [0.5, 1.5].

    The origin is always interior. The last normal is minus a positive
    combination of the others; together with the spanning first ``faces - 1``
    normals this makes them positively span ``R^{2n}``, so the polytope is
    bounded for every draw.
    """
    if faces <= 2 * n:
        raise ValueError(f"a bounded polytope in C^{n} needs more than {2 * n} faces")
    A = rng.normal(size=(faces - 1, n)) + 1j * rng.normal(size=(faces - 1, n))
    A /= np.linalg.norm(A, axis=1)[:, None]
    last = -rng.uniform(0.5, 1.5, size=faces - 1) @ A
    A = np.vstack([A, last])
    b = rng.uniform(0.5, 1.5, size=faces)
    P = HalfSpacePolytope(A, b)
    if not P.bounded:
        raise DomainError("normals failed to span; degenerate draw")
    return P


def random_ellipsoid(n: int, rng: np.random.Generator, low: float = 0.5, high: float = 4.0) -> ComplexEllipsoid:
    return ComplexEllipsoid(rng.uniform(low, high, size=n))


def random_base_point(d, rng: np.random.Generator) -> np.ndarray:
    pts = sample_interior(d, 8, rng)
    if pts.shape[0] == 0:
        return d.interior_point()
    return pts[0]
