import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kobayashi_balls.basis import (
    DegenerateNormalError,
    MinimalBasis,
    TriangularMap,
    compute_minimal_basis,
    rotate_to_standard,
    triangular_map,
    verify_hyperplane_disjoint,
)
from kobayashi_balls.domains import (
    AffineImage,
    DomainError,
    EuclideanBall,
    Polydisc,
    RightHalfPlane,
    UnboundedDomainError,
    boundary_distance,
    sample_interior,
)
from kobayashi_balls.harness.generators import random_base_point, random_ellipsoid, random_polytope
from kobayashi_balls.linalg import ComplexAffineMap, cnorm, random_unitary

B2 = EuclideanBall([0, 0], 1)
D2 = Polydisc([0, 0], [1, 1])


def _check_invariants(d, q, mb):
    assert mb.orthonormality_residual() < 1e-10
    assert np.all(np.diff(mb.scales) >= -1e-12 * mb.scales[1:])
    assert abs(mb.scales[0] - boundary_distance(d, q)) < 1e-7
    s = np.linspace(0, 1, 52)[1:-1]
    for w in mb.witnesses:
        assert not d.contains(w)
        assert np.all(d.contains(q + s[:, None] * (w - q)))


def test_ball_basis():
    mb = compute_minimal_basis(B2, [0.5, 0])
    assert mb.scales == pytest.approx([0.5, np.sqrt(0.75)], abs=1e-9)
    assert np.allclose(np.abs(mb.vectors[0]), [1, 0], atol=1e-9)
    assert abs(mb.vectors[1][0]) < 1e-9 and abs(abs(mb.vectors[1][1]) - 1) < 1e-9


def test_polydisc_basis():
    mb = compute_minimal_basis(D2, [0.5, 0.2])
    assert mb.scales == pytest.approx([0.5, 0.8], abs=1e-12)
    assert np.allclose(np.abs(mb.vectors[0]), [1, 0]) and np.allclose(np.abs(mb.vectors[1]), [0, 1])


def test_ball_center_basis_invariants_only():
    mb = compute_minimal_basis(B2, [0, 0])
    assert mb.scales == pytest.approx([1, 1], abs=1e-9)
    _check_invariants(B2, np.zeros(2, dtype=complex), mb)


def test_basis_rejects_unbounded_and_outside():
    with pytest.raises(UnboundedDomainError):
        compute_minimal_basis(RightHalfPlane(), [1])
    with pytest.raises(DomainError):
        compute_minimal_basis(B2, [1, 1])


def test_minimal_basis_validation():
    e = np.eye(2, dtype=complex)
    with pytest.raises(ValueError):
        MinimalBasis(np.zeros(2), (e[0], e[1]), np.array([0.8, 0.5]), (0.8 * e[0], 0.5 * e[1]))
    with pytest.raises(ValueError):
        MinimalBasis(np.zeros(2), (e[0], e[0]), np.array([0.5, 0.8]), (0.5 * e[0], 0.8 * e[0]))


def test_rotation_identity_for_standard_basis():
    mb = compute_minimal_basis(D2, [0.5, 0.2])
    sp = rotate_to_standard(mb, D2)
    assert np.allclose(np.abs(sp.unitary), np.eye(2))
    q = mb.base_point
    for z in sample_interior(D2, 20, np.random.default_rng(0)):
        assert sp.domain.contains(z) == D2.contains(sp.unitary.conj().T @ (z - q) + q)


def test_rotation_swaps_coordinates():
    q = np.array([0.2, 0.5], dtype=complex)
    mb = compute_minimal_basis(D2, q)
    assert np.allclose(np.abs(mb.vectors[0]), [0, 1])
    sp = rotate_to_standard(mb, D2)
    assert np.allclose(np.abs(sp.unitary), [[0, 1], [1, 0]])
    again = compute_minimal_basis(sp.domain, q)
    assert again.scales == pytest.approx([0.5, 0.8], abs=1e-7)
    assert again.is_standard(1e-7) or np.allclose(np.abs(again.matrix), np.eye(2), atol=1e-7)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_rotated_polytope_keeps_scales(seed):
    rng = np.random.default_rng(seed)
    d = random_polytope(2, int(rng.integers(6, 15)), rng)
    q = random_base_point(d, rng)
    mb = compute_minimal_basis(d, q)
    sp = rotate_to_standard(mb, d)
    assert compute_minimal_basis(sp.domain, q).scales == pytest.approx(mb.scales, abs=1e-7)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_scales_unitarily_invariant(seed):
    rng = np.random.default_rng(seed)
    d = random_polytope(3, int(rng.integers(7, 16)), rng)
    q = random_base_point(d, rng)
    U = random_unitary(3, rng)
    img = AffineImage(ComplexAffineMap(U, np.zeros(3)), d)
    a = compute_minimal_basis(d, q).scales
    b = compute_minimal_basis(img, U @ q).scales
    assert b == pytest.approx(a, abs=1e-7)


def test_ball_triangular_map():
    mb = compute_minimal_basis(B2, [0.5, 0])
    sp = rotate_to_standard(mb, B2)
    lam = triangular_map(sp.domain, sp.basis)
    alpha = 0.5 / np.sqrt(0.75)
    assert lam.matrix[0, 0] == 1 and lam.matrix[0, 1] == 0 and lam.matrix[1, 1] == 1
    assert abs(lam.matrix[1, 0]) == pytest.approx(alpha, abs=1e-7)
    for plane in lam.hyperplanes:
        assert verify_hyperplane_disjoint(sp.domain, plane)


def test_polydisc_triangular_map_is_identity():
    mb = compute_minimal_basis(D2, [0.5, 0.2])
    sp = rotate_to_standard(mb, D2)
    assert np.allclose(triangular_map(sp.domain, sp.basis).matrix, np.eye(2), atol=1e-12)


def test_triangular_map_needs_standard_position():
    mb = compute_minimal_basis(D2, [0.2, 0.5])
    with pytest.raises(DomainError):
        triangular_map(D2, mb)


def test_triangular_map_structure_enforced():
    with pytest.raises(ValueError):
        TriangularMap(np.array([[1, 0.1], [0, 1]]), np.zeros(2), ())
    with pytest.raises(ValueError):
        TriangularMap(np.array([[1, 0], [0.3, 2]]), np.zeros(2), ())


def test_degenerate_normal_detected():
    # ellipse with axes at 45 degrees; declaring the coordinate axes a minimal basis is wrong
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    d = AffineImage(ComplexAffineMap(h @ np.diag([1.0, 2.0]), np.zeros(2)), B2)
    e = np.eye(2, dtype=complex)
    t = float(d.ray_exit(np.zeros(2), e[0]))
    assert float(d.ray_exit(np.zeros(2), e[1])) == pytest.approx(t)
    fake = MinimalBasis(np.zeros(2), (e[0], e[1]), np.array([t, t]), (t * e[0], t * e[1]))
    with pytest.raises(DegenerateNormalError) as info:
        triangular_map(d, fake)
    assert info.value.slice_index == 0


def test_disjointness_examples():
    assert verify_hyperplane_disjoint(B2, ([1, 0], [1, 0]))
    cert = verify_hyperplane_disjoint(B2, ([0.5, 0], [1, 0]))
    assert not cert and np.allclose(cert.witness, [0.5, 0])
    assert verify_hyperplane_disjoint(D2, ([0, 1], [0, 1]))


def test_disjointness_monte_carlo_finds_witness():
    d = random_ellipsoid(2, np.random.default_rng(4))
    p = np.array([1.0, 0.0], dtype=complex) * d.ray_exit(np.zeros(2), np.array([1, 0]))
    cert = verify_hyperplane_disjoint(d, (p, np.array([1, 1])), samples=2000)
    assert not cert and cert.method == "monte_carlo"
    assert d.contains(cert.witness)


@pytest.mark.parametrize("seed", range(6))
def test_random_domains_full_chain(seed):
    rng = np.random.default_rng(seed)
    n = 2 + seed % 2
    for d in (random_polytope(n, int(rng.integers(2 * n + 1, 21)), rng), random_ellipsoid(n, rng)):
        q = random_base_point(d, rng)
        mb = compute_minimal_basis(d, q)
        _check_invariants(d, q, mb)
        sp = rotate_to_standard(mb, d)
        lam = triangular_map(sp.domain, sp.basis)
        assert np.all(np.diag(lam.matrix) == 1) and np.all(np.triu(lam.matrix, 1) == 0)
        for plane in lam.hyperplanes:
            assert verify_hyperplane_disjoint(sp.domain, plane, samples=4000, rng=rng)
