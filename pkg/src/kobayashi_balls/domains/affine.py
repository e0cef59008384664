from __future__ import annotations

import numpy as np

from ..linalg import ComplexAffineMap, apply_affine, as_cvector, cnorm, hermitian_inner
from .base import Domain, ray_min_nearest


class AffineImage(Domain):
    """Image of a domain under an invertible complex-affine map.

    Convexity classes are preserved by such maps.
    """

    def __init__(self, amap: ComplexAffineMap, inner: Domain):
        if amap.n != inner.n:
            raise ValueError("map and domain dimensions differ")
        self.map = amap
        self.inner = inner
        self.n = inner.n
        self.convexity = inner.convexity
        self.bounded = inner.bounded
        self._Ainv = amap.inverse_matrix
        self._unitary = amap.is_unitary()

    def __repr__(self):
        return f"AffineImage({self.inner!r})"

    def forward(self, z):
        return apply_affine(self.map, z)

    def pullback(self, z):
        return self.map.inverse(z)

    def level(self, z):
        return self.inner.level(self.pullback(z))

    def interior_point(self):
        return self.forward(self.inner.interior_point())

    def extent_bound(self):
        return self.inner.extent_bound() * float(np.linalg.norm(self.map.matrix, 2))

    def ray_exit(self, z0, U):
        # same ray parameter on both sides of an affine map
        U = np.asarray(U, dtype=complex)
        return self.inner.ray_exit(self.pullback(z0), U @ self._Ainv.T)

    def _nearest(self, q, V):
        if self._unitary:
            p, dist = self.inner._nearest(self.pullback(q), self._Ainv @ V)
            return self.forward(p), dist
        return ray_min_nearest(self, q, V)

    def normal(self, p):
        p = np.asarray(p, dtype=complex)
        nu = self.inner.normal(self.pullback(p))
        # <A^-1 dz, nu> = <dz, A^-H nu>
        out = nu @ self._Ainv.conj()
        return out / np.asarray(cnorm(out))[..., None]

    def support(self, u):
        u = as_cvector(u)
        a = self.map.anchor
        shift = a - self.map.matrix @ a
        return float(np.real(hermitian_inner(shift, u))) + self.inner.support(self.map.matrix.conj().T @ u)

    def projection_disc(self, nu):
        nu = as_cvector(nu)
        disc = self.inner.projection_disc(self.map.matrix.conj().T @ nu)
        if disc is None:
            return None
        a = self.map.anchor
        shift = complex(hermitian_inner(a - self.map.matrix @ a, nu))
        return disc[0] + shift, disc[1]
