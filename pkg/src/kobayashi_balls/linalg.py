"""Complex linear algebra used throughout the package.

Points of C^n are 1-D complex numpy arrays. Batches of points are 2-D arrays
with one point per row. The Hermitian product is linear in the first slot:
``<u, v> = sum_j u_j * conj(v_j)``, so ``Re <u, v>`` is the Euclidean inner
product of the realified vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Single source of truth for tolerances.
LINALG_TOL = 1e-10
GEOM_TOL = 1e-7


class DimensionError(ValueError):
    pass


class RankDeficiencyError(ValueError):
    pass


def as_cvector(z) -> np.ndarray:
    v = np.asarray(z, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise DimensionError(f"expected a nonempty 1-D complex vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def hermitian_inner(u, v):
    """Return ``sum_j u_j conj(v_j)``.

    Broadcasts over leading axes, so a batch of points (rows) against a
    single vector gives one value per row.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape[-1] != v.shape[-1]:
        raise DimensionError(f"dimension mismatch: {u.shape[-1]} vs {v.shape[-1]}")
    return np.sum(u * np.conj(v), axis=-1)


def cnorm(u) -> float | np.ndarray:
    return np.sqrt(np.sum(np.abs(np.asarray(u)) ** 2, axis=-1))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # first entry of non-negligible modulus made real positive
    idx = np.flatnonzero(np.abs(v) > LINALG_TOL)
    if idx.size == 0:
        return v
    ph = v[idx[0]] / abs(v[idx[0]])
    return v / ph


def _project_out(v: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    # modified Gram-Schmidt, applied twice
    for _ in range(2):
        for b in basis:
            v = v - hermitian_inner(v, b) * b
    return v


def orthonormal_complement(vectors, n: int) -> list[np.ndarray]:
    """Orthonormal basis of the Hermitian-orthogonal complement of ``span(vectors)``.

    Parameters
    ----------
    vectors : sequence of array_like
        Linearly independent vectors of C^n (need not be orthonormal).
    n : int
        Ambient dimension.

    Returns
    -------
    list of ndarray
        ``n - len(vectors)`` orthonormal vectors, each orthogonal to every
        input. Each has its first nonzero entry real positive.

    Raises
    ------
    RankDeficiencyError
        If the inputs are linearly dependent.
    """
    basis: list[np.ndarray] = []
    for v in vectors:
        v = as_cvector(v)
        if v.size != n:
            raise DimensionError(f"vector of length {v.size} in C^{n}")
        nv = cnorm(v)
        w = _project_out(v, basis)
        nw = cnorm(w)
        if nv == 0 or nw <= LINALG_TOL * nv:
            raise RankDeficiencyError("input vectors are linearly dependent")
        basis.append(w / nw)

    k = len(basis)
    out: list[np.ndarray] = []
    candidates = [np.eye(n, dtype=complex)[i] for i in range(n)]
    for _ in range(n - k):
        # pivot on the standard vector with the largest residual
        residuals = [_project_out(c, basis + out) for c in candidates]
        norms = [cnorm(r) for r in residuals]
        i = int(np.argmax(norms))
        w = residuals[i] / norms[i]
        w = _project_out(w, basis + out)
        w = _fix_phase(w / cnorm(w))
        out.append(w)
        candidates.pop(i)
    return out


def check_orthonormal(vectors, tol: float = LINALG_TOL) -> float:
    """Return ``||B^H B - I||_max`` for the column matrix of ``vectors``."""
    B = np.column_stack([as_cvector(v) for v in vectors])
    return float(np.max(np.abs(B.conj().T @ B - np.eye(B.shape[1]))))


def unitary_to_standard(basis) -> np.ndarray:
    """Unitary ``U`` with ``U @ basis[k] = e_k`` for an orthonormal basis of C^n."""
    basis = [as_cvector(b) for b in basis]
    n = basis[0].size
    if len(basis) != n or any(b.size != n for b in basis):
        raise DimensionError("need n vectors of length n")
    if check_orthonormal(basis) > LINALG_TOL:
        raise ValueError("basis is not orthonormal")
    return np.column_stack(basis).conj().T


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def realify_matrix(V: np.ndarray) -> np.ndarray:
    """Real 2n x 2k matrix of the complex-linear map ``c -> V c`` in [Re; Im] layout."""
    return np.block([[V.real, -V.imag], [V.imag, V.real]])


def to_real(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real, z.imag], axis=-1)


def to_complex(x: np.ndarray) -> np.ndarray:
    k = x.shape[-1] // 2
    return x[..., :k] + 1j * x[..., k:]


@dataclass(frozen=True)
class AffineSubspace:
    """Complex-affine subspace ``base + span_C(directions)``."""

    base: np.ndarray
    directions: np.ndarray = field(repr=False)  # n x k, orthonormal columns

    def __post_init__(self):
        base = as_cvector(self.base)
        D = np.asarray(self.directions, dtype=complex)
        if D.ndim == 1:
            D = D.reshape(-1, 1)
        if D.shape[0] != base.size:
            raise DimensionError("directions must be columns of length n")
        if D.shape[1] and np.max(np.abs(D.conj().T @ D - np.eye(D.shape[1]))) > LINALG_TOL:
            raise ValueError("slice directions must be orthonormal")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "directions", D)

    @classmethod
    def full(cls, point) -> "AffineSubspace":
        p = as_cvector(point)
        return cls(p, np.eye(p.size, dtype=complex))

    @classmethod
    def from_vectors(cls, point, vectors) -> "AffineSubspace":
        p = as_cvector(point)
        cols = [as_cvector(v) for v in vectors]
        D = np.column_stack(cols) if cols else np.zeros((p.size, 0), dtype=complex)
        return cls(p, D)

    @property
    def dim(self) -> int:
        return self.directions.shape[1]

    def residual(self, z) -> float:
        d = as_cvector(z) - self.base
        V = self.directions
        return float(cnorm(d - V @ (V.conj().T @ d)))

    def contains_point(self, z, tol: float = GEOM_TOL) -> bool:
        scale = 1.0 + float(cnorm(self.base))
        return self.residual(z) <= tol * scale


@dataclass(frozen=True)
class ComplexAffineMap:
    """The map ``z -> anchor + matrix @ (z - anchor)``."""

    matrix: np.ndarray
    anchor: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.matrix, dtype=complex)
        a = as_cvector(self.anchor)
        if A.shape != (a.size, a.size):
            raise DimensionError("matrix must be n x n for an anchor in C^n")
        if np.linalg.cond(A) > 1e12:
            raise ValueError("affine map matrix is (numerically) singular")
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "anchor", a)

    @property
    def n(self) -> int:
        return self.anchor.size

    @property
    def inverse_matrix(self) -> np.ndarray:
        return np.linalg.inv(self.matrix)

    def is_unitary(self, tol: float = LINALG_TOL) -> bool:
        A = self.matrix
        return bool(np.max(np.abs(A.conj().T @ A - np.eye(self.n))) <= tol)

    def __call__(self, z):
        return apply_affine(self, z)

    def inverse(self, z):
        z = np.asarray(z, dtype=complex)
        return self.anchor + (z - self.anchor) @ self.inverse_matrix.T

    def then(self, other: "ComplexAffineMap") -> "ComplexAffineMap":
        """Composition ``other o self``; both maps must share the anchor."""
        if not np.allclose(self.anchor, other.anchor, atol=LINALG_TOL):
            raise ValueError("composition requires a common anchor")
        return ComplexAffineMap(other.matrix @ self.matrix, self.anchor)


def apply_affine(amap: ComplexAffineMap, z):
    """Evaluate ``anchor + matrix @ (z - anchor)`` for one point or a batch of rows."""
    z = np.asarray(z, dtype=complex)
    if z.shape[-1] != amap.n:
        raise DimensionError(f"point of dimension {z.shape[-1]} for a map on C^{amap.n}")
    return amap.anchor + (z - amap.anchor) @ amap.matrix.T
