"""Minimal basis of a domain at an interior point, rotation to standard
position, and the lower-triangular map built from supporting hyperplanes.

Indices are 0-based: ``vectors[j]``, ``scales[j]`` and ``witnesses[j]`` are
the (j+1)-st basis vector, scale and boundary point of the construction, and
``hyperplanes[j]`` passes through ``witnesses[j]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .domains import (
    AffineImage,
    Domain,
    DomainError,
    SolverError,
    UnboundedDomainError,
    UnsupportedRepresentation,
    nearest_boundary_in_slice,
    sample_interior,
    supporting_normal,
)
from .linalg import (
    GEOM_TOL,
    LINALG_TOL,
    AffineSubspace,
    ComplexAffineMap,
    as_cvector,
    check_orthonormal,
    cnorm,
    hermitian_inner,
    orthonormal_complement,
    unitary_to_standard,
)

NORMAL_TOL = 1e-8
DISJOINT_TOL = 1e-9


class DegenerateNormalError(SolverError):
    """Supporting normal incompatible with minimality of the basis."""


@dataclass(frozen=True)
class MinimalBasis:
    base_point: np.ndarray
    vectors: tuple
    scales: np.ndarray
    witnesses: tuple

    def __post_init__(self):
        q = as_cvector(self.base_point)
        vecs = tuple(as_cvector(v) for v in self.vectors)
        wit = tuple(as_cvector(w) for w in self.witnesses)
        tau = np.asarray(self.scales, dtype=float)
        n = q.size
        if not (len(vecs) == len(wit) == tau.size == n):
            raise ValueError("a minimal basis has n vectors, scales and witnesses")
        if np.any(tau <= 0):
            raise ValueError("scales must be positive")
        if np.any(np.diff(tau) < -GEOM_TOL * tau[1:]):
            raise ValueError(f"scales must be nondecreasing, got {tau}")
        if check_orthonormal(vecs) > LINALG_TOL:
            raise ValueError("basis vectors are not orthonormal")
        for e, t, w in zip(vecs, tau, wit):
            if cnorm(w - q - t * e) > GEOM_TOL * (1 + t):
                raise ValueError("witness inconsistent with vector and scale")
        object.__setattr__(self, "base_point", q)
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "witnesses", wit)
        object.__setattr__(self, "scales", tau)

    @property
    def n(self) -> int:
        return self.base_point.size

    @property
    def matrix(self) -> np.ndarray:
        """Columns are the basis vectors."""
        return np.column_stack(self.vectors)

    def coordinates(self, z) -> np.ndarray:
        """Coordinates ``<z - q, e_j>`` of one point or of each row of a batch."""
        z = np.asarray(z, dtype=complex)
        return (z - self.base_point) @ self.matrix.conj()

    def orthonormality_residual(self) -> float:
        return check_orthonormal(self.vectors)

    def is_standard(self, tol: float = LINALG_TOL) -> bool:
        return bool(np.max(np.abs(self.matrix - np.eye(self.n))) <= tol)


def compute_minimal_basis(d: Domain, q) -> MinimalBasis:
    """Build the minimal basis of ``d`` at ``q``.

    Step j takes the nearest boundary point of ``d`` within the slice through
    ``q`` orthogonal to the vectors found so far.

    Raises
    ------
    UnboundedDomainError
        For domains flagged unbounded.
    SolverError
        When a slice solve fails; ``slice_index`` names the step.
    """
    if not d.bounded:
        raise UnboundedDomainError(f"minimal basis needs a bounded domain, got {d!r}")
    q = as_cvector(q)
    if q.size != d.n:
        raise DomainError("base point dimension does not match the domain")
    if not d.contains(q):
        raise DomainError("base point is not in the domain")
    vectors, scales, witnesses = [], [], []
    for j in range(d.n):
        dirs = orthonormal_complement(vectors, d.n)
        sl = AffineSubspace.from_vectors(q, dirs)
        try:
            contact = nearest_boundary_in_slice(d, sl, q)
        except SolverError as exc:
            raise SolverError(str(exc), slice_index=j) from exc
        vectors.append((contact.point - q) / contact.distance)
        scales.append(contact.distance)
        witnesses.append(contact.point)
    return MinimalBasis(q, tuple(vectors), np.array(scales), tuple(witnesses))


class StandardPosition(NamedTuple):
    unitary: np.ndarray
    domain: AffineImage
    basis: MinimalBasis


def rotate_to_standard(mb: MinimalBasis, d: Domain) -> StandardPosition:
    """Rotate about ``q`` so that the minimal basis becomes the standard basis."""
    U = unitary_to_standard(mb.vectors)
    amap = ComplexAffineMap(U, mb.base_point)
    image = AffineImage(amap, d)
    witnesses = tuple(amap(w) for w in mb.witnesses)
    eye = np.eye(mb.n, dtype=complex)
    rotated = MinimalBasis(mb.base_point, tuple(eye), mb.scales.copy(), witnesses)
    return StandardPosition(U, image, rotated)


@dataclass(frozen=True)
class TriangularMap:
    """Lower-triangular ``Lambda`` with unit diagonal, its anchor, and the
    hyperplanes ``{<z - p, nu> = 0}`` whose equations form its rows."""

    matrix: np.ndarray
    anchor: np.ndarray
    hyperplanes: tuple

    def __post_init__(self):
        L = np.asarray(self.matrix, dtype=complex)
        if np.any(np.diag(L) != 1) or np.any(np.triu(L, 1) != 0):
            raise ValueError("matrix must be lower triangular with unit diagonal")
        object.__setattr__(self, "matrix", L)

    @property
    def affine_map(self) -> ComplexAffineMap:
        return ComplexAffineMap(self.matrix, self.anchor)


def triangular_map(d: Domain, mb: MinimalBasis) -> TriangularMap:
    """Assemble ``Lambda`` from supporting hyperplanes at the witnesses.

    ``d`` and ``mb`` must be in standard position (see ``rotate_to_standard``).
    Row j holds the coefficients of the hyperplane through ``witnesses[j]``,
    normalized to 1 at position j; the remaining tail of the normal must
    vanish to ``1e-8``.
    """
    if not mb.is_standard():
        raise DomainError("triangular_map needs a minimal basis in standard position")
    n = mb.n
    L = np.eye(n, dtype=complex)
    planes = []
    for j in range(n):
        p = mb.witnesses[j]
        nu = supporting_normal(d, p)
        lead = nu[j]
        if abs(lead) < NORMAL_TOL:
            raise DegenerateNormalError(f"normal coefficient {abs(lead):.2e} at the pivot", slice_index=j)
        tail = np.max(np.abs(nu[j + 1:]), initial=0.0)
        if tail > NORMAL_TOL:
            raise DegenerateNormalError(f"normal tail {tail:.2e} does not vanish", slice_index=j)
        L[j, :j] = np.conj(nu[:j] / lead)
        covector = lead * np.conj(L[j])
        planes.append((p.copy(), covector))
    return TriangularMap(L, mb.base_point.copy(), tuple(planes))


@dataclass(frozen=True)
class Certificate:
    ok: bool
    method: str
    max_value: float
    witness: np.ndarray | None = None

    def __bool__(self):
        return self.ok


def verify_hyperplane_disjoint(d: Domain, plane, samples: int = 10_000,
                               rng: np.random.Generator | None = None,
                               tol: float = DISJOINT_TOL) -> Certificate:
    """Certify that the complex hyperplane ``{<z - p, nu> = 0}`` misses ``d``.

    Checks the stronger statement ``Re <z - p, nu> < 0`` on ``d``: exactly
    through the support function when the domain has one, otherwise by Monte
    Carlo over interior samples (including samples clustered near ``p``). A
    negative certificate carries a witness in the domain whenever one was found.
    """
    p, nu = as_cvector(plane[0]), as_cvector(plane[1])
    if cnorm(nu) == 0:
        raise ValueError("zero covector")
    nu = nu / cnorm(nu)
    scale = 1.0 + float(cnorm(p))
    # a point on the boundary up to rounding is not an intersection
    depth = -float(d.level(p))
    if depth > tol * scale:
        return Certificate(False, "point", depth, p)
    offset = float(np.real(hermitian_inner(p, nu)))
    exact = None
    try:
        exact = d.support(nu) - offset
        if exact <= tol * scale:
            return Certificate(True, "support", float(exact))
    except UnsupportedRepresentation:
        pass

    rng = np.random.default_rng(0) if rng is None else rng
    Z = sample_interior(d, samples // 2, rng)
    near = []
    for eps in (1e-1, 1e-2, 1e-3, 1e-4):
        m = samples // 8
        W = p + eps * scale * (rng.normal(size=(m, d.n)) + 1j * rng.normal(size=(m, d.n)))
        near.append(W[d.contains(W)])
    Z = np.vstack([Z, *near])
    vals = np.real(hermitian_inner(Z - p, nu))
    i = int(np.argmax(vals))
    worst = float(vals[i])
    if worst > tol * scale:
        return Certificate(False, "monte_carlo", worst, Z[i])
    if exact is not None:
        return Certificate(False, "support", float(exact))
    return Certificate(True, "monte_carlo", worst)
