import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kobayashi_balls.bounds import HullGauge
from kobayashi_balls.domains import (
    AffineImage,
    ComplexEllipsoid,
    DomainError,
    EuclideanBall,
    Polydisc,
    SlitPlane,
    sample_interior,
    unit_disc,
)
from kobayashi_balls.harness.generators import random_polytope
from kobayashi_balls.linalg import ComplexAffineMap, random_unitary
from kobayashi_balls.oracles import (
    DistanceBracket,
    ball_distance,
    convex_bracket,
    exact_distance,
    exact_distance_batch,
    hull_lempert,
    poincare_disc,
    product_distance,
    slit_plane_distance,
)

B2 = EuclideanBall([0, 0], 1)
in_disc = st.tuples(st.floats(0, 0.999), st.floats(0, 2 * np.pi)).map(lambda t: t[0] * np.exp(1j * t[1]))
off_slit = st.tuples(st.floats(-3, 3), st.floats(1e-3, 2 * np.pi - 1e-3)).map(lambda t: 10 ** t[0] * np.exp(1j * t[1]))


def mp_poincare(a, b):
    a, b = mp.mpc(a), mp.mpc(b)
    return float(mp.atanh(abs((a - b) / (1 - mp.conj(b) * a))))


def mp_ball(z, w):
    z = [mp.mpc(x) for x in z]
    w = [mp.mpc(x) for x in w]
    zw = sum(a * mp.conj(b) for a, b in zip(z, w))
    nz = sum(abs(a) ** 2 for a in z)
    nw = sum(abs(b) ** 2 for b in w)
    return float(mp.atanh(mp.sqrt(1 - (1 - nz) * (1 - nw) / abs(1 - zw) ** 2)))


def mp_slit(z, w):
    def root(x):
        x = mp.mpc(x)
        arg = mp.arg(x) % (2 * mp.pi)
        return mp.sqrt(abs(x)) * mp.expj(arg / 2)

    s, t = root(z), root(w)
    return float(mp.atanh(abs((s - t) / (s - mp.conj(t)))))


def test_poincare_examples():
    assert poincare_disc(0, 0) == 0
    assert poincare_disc(0, 0.5) == pytest.approx(float(mp.atanh(0.5)), abs=1e-15)
    with pytest.raises(ValueError):
        poincare_disc(1, 0)


@given(in_disc, in_disc)
def test_poincare_against_high_precision(a, b):
    assert poincare_disc(a, b) == pytest.approx(mp_poincare(a, b), rel=1e-9, abs=1e-12)


@given(in_disc, in_disc)
def test_poincare_moebius_invariance(a, b):
    def swap(z):  # exchanges 0 and 0.3
        return (0.3 - z) / (1 - 0.3 * z)

    assert abs(swap(0.0) - 0.3) < 1e-15 and abs(swap(0.3)) < 1e-15
    if max(abs(a), abs(b)) < 0.99:
        assert abs(poincare_disc(swap(a), swap(b)) - poincare_disc(a, b)) < 1e-10


def test_product_distance_examples():
    a, b = poincare_disc(0, 0.5), poincare_disc(0, 0.2)
    assert a == pytest.approx(0.5493, abs=1e-4) and b == pytest.approx(0.2027, abs=1e-4)
    assert product_distance([a, b]) == a
    assert product_distance([0, 0, 0]) == 0
    assert product_distance([0.7]) == 0.7
    with pytest.raises(ValueError):
        product_distance([])


def test_polydisc_exact_is_max_of_factor_distances():
    rng = np.random.default_rng(0)
    D = Polydisc([0, 0], [1, 1])
    for z, w in zip(sample_interior(D, 50, rng), sample_interior(D, 50, rng)):
        assert exact_distance(D, z, w) == max(poincare_disc(z[0], w[0]), poincare_disc(z[1], w[1]))


def test_ball_examples():
    z = np.array([0.3 + 0.1j, -0.4j])
    assert ball_distance([0, 0], 1, [0, 0], z) == pytest.approx(float(mp.atanh(np.linalg.norm(z))), abs=1e-14)
    q, w = np.array([0.5, 0]), np.array([0.5, 0.3])
    b = convex_bracket(B2, q, w)
    assert b.contains(ball_distance([0, 0], 1, q, w))
    with pytest.raises(ValueError):
        ball_distance([0, 0], 1, [1, 0], [0, 0])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_ball_against_high_precision_and_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    z, w = sample_interior(B2, 2, rng)
    val = ball_distance([0, 0], 1, z, w)
    assert val == pytest.approx(mp_ball(z, w), rel=1e-8, abs=1e-12)
    U = random_unitary(2, rng)
    assert abs(ball_distance([0, 0], 1, U @ z, U @ w) - val) < 1e-10


def test_ball_on_complex_line_through_center_is_disc_distance():
    u = np.array([0.6, 0.8j])
    assert ball_distance([0, 0], 1, 0.2 * u, -0.7j * u) == pytest.approx(poincare_disc(0.2, -0.7j), abs=1e-14)


def test_hull_lempert_examples():
    h = HullGauge([0, 0], [0.5, 0.8])
    assert hull_lempert(h, [0, 0]) == 0
    assert hull_lempert(h, [0.2, 0.2]) == pytest.approx(float(mp.atanh(0.65)), abs=1e-14)
    assert hull_lempert(h, [0.2, 0.2]) == pytest.approx(0.775299, abs=1e-6)
    assert hull_lempert(h, [0.5, 0.0]) is None
    assert hull_lempert(h, [0.4, 0.4]) is None


def test_hull_lempert_monotone_along_rays():
    rng = np.random.default_rng(1)
    h = HullGauge([0.1, -0.2j], [0.5, 0.8])
    for _ in range(50):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.sum(np.abs(v) / h.scales)
        vals = [hull_lempert(h, h.center + t * v) for t in np.linspace(0, 0.999, 40)]
        assert np.all(np.diff(vals) > 0)


def test_slit_examples():
    assert slit_plane_distance(-1, -1) == 0
    assert slit_plane_distance(-1, -4) == pytest.approx(float(mp.atanh(mp.mpf(1) / 3)), abs=1e-15)
    for t in (4.0, 2.0, 10.0, 100.0):
        assert abs(slit_plane_distance(-t, -1) - 0.25 * np.log(t)) < 1e-12
    assert slit_plane_distance(-4, -1) == pytest.approx(0.5 * np.log(2), abs=1e-15)
    with pytest.raises(ValueError):
        slit_plane_distance(2.0, -1)


@given(off_slit, off_slit, st.floats(1e-3, 1e3))
def test_slit_properties(z, w, t):
    d = slit_plane_distance(z, w)
    assert d == pytest.approx(mp_slit(z, w), rel=1e-8, abs=1e-12)
    assert slit_plane_distance(w, z) == pytest.approx(d, abs=1e-12)
    assert abs(slit_plane_distance(t * z, t * w) - d) < 1e-12 * max(1, d) * 10


def test_slit_conjugation_symmetry():
    # the slit plane is symmetric under complex conjugation
    rng = np.random.default_rng(3)
    for _ in range(200):
        z, w = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert slit_plane_distance(np.conj(z), np.conj(w)) == pytest.approx(slit_plane_distance(z, w), abs=1e-12)


def test_distances_vanish_only_on_diagonal():
    rng = np.random.default_rng(4)
    for _ in range(100):
        z = sample_interior(B2, 1, rng)[0]
        assert ball_distance([0, 0], 1, z, z) < 1e-12
        assert poincare_disc(z[0], z[0]) < 1e-12
        assert slit_plane_distance(-abs(z[0]) - 0.1, -abs(z[0]) - 0.1) < 1e-12
        w = z + 1e-6
        if B2.contains(w):
            assert ball_distance([0, 0], 1, z, w) > 1e-12
        assert poincare_disc(z[0], z[0] + 1e-6) > 1e-12


def test_exact_distance_dispatch():
    assert exact_distance(unit_disc(), [0], [0.5]) == pytest.approx(poincare_disc(0, 0.5))
    assert exact_distance(ComplexEllipsoid([1.5, 1]), [0, 0], [0.1, 0]) is None
    A = AffineImage(ComplexAffineMap(np.array([[2, 1j], [0, 0.5]]), [1, 0]), B2)
    z, w = np.array([0.1, 0.2j]), np.array([-0.3, 0.1])
    assert exact_distance(A, A.forward(z), A.forward(w)) == pytest.approx(ball_distance([0, 0], 1, z, w), abs=1e-12)
    W = sample_interior(A, 20, np.random.default_rng(5))
    batch = exact_distance_batch(A, W[0], W)
    assert np.allclose(batch, [exact_distance(A, W[0], x) for x in W], atol=1e-14)


def test_bracket_degenerate_and_disc():
    b = convex_bracket(B2, [0.1, 0.2], [0.1, 0.2])
    assert (b.lower, b.upper) == (0, 0)
    b = convex_bracket(unit_disc(), [0], [0.5])
    assert b.width < 1e-9
    assert b.lower == pytest.approx(float(mp.atanh(0.5)), abs=1e-12)


def test_bracket_requires_convex_and_inside():
    with pytest.raises(DomainError):
        convex_bracket(SlitPlane(), [-1], [-2])
    with pytest.raises(DomainError):
        convex_bracket(B2, [0, 0], [2, 0])


def test_bracket_invariant():
    with pytest.raises(ValueError):
        DistanceBracket(1.0, 0.5, "a", "b")


@pytest.mark.parametrize("d", [unit_disc(), B2, Polydisc([0, 0.1j], [1, 0.5]),
                               AffineImage(ComplexAffineMap(np.array([[1, 0.5], [0, 2]]), [0, 0]), B2),
                               ComplexEllipsoid([1.0, 1.0])], ids=repr)
def test_bracket_contains_exact(d):
    rng = np.random.default_rng(6)
    # generic slice solver domains are slow; fewer pairs there
    Z = sample_interior(d, 150 if exact_distance(d, d.interior_point(), d.interior_point()) is not None
                        and not isinstance(d, AffineImage) else 30, rng)
    for z, w in zip(Z[::2], Z[1::2]):
        b = convex_bracket(d, z, w)
        e = exact_distance(d, z, w)
        if e is None:  # the round ellipsoid is the ball
            e = ball_distance([0, 0], 1, z, w)
        assert b.lower - 1e-9 <= e <= b.upper + 1e-9


def test_bracket_on_polytope_is_consistent():
    rng = np.random.default_rng(7)
    P = random_polytope(2, 10, rng)
    Z = sample_interior(P, 20, rng)
    for z, w in zip(Z[::2], Z[1::2]):
        b = convex_bracket(P, z, w)
        assert 0 < b.lower <= b.upper < np.inf
