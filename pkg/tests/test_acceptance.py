"""Acceptance criteria. Each test prints one PASS/FAIL line (also summarized
at the end of the pytest run)."""
import time

import numpy as np
import pytest

from kobayashi_balls.basis import (
    compute_minimal_basis,
    rotate_to_standard,
    triangular_map,
    verify_hyperplane_disjoint,
)
from kobayashi_balls.bounds import halfplane_distance, prop2_planar_lower
from kobayashi_balls.domains import (
    ConvexityClass,
    EuclideanBall,
    Polydisc,
    Product,
    RightHalfPlane,
    SlitPlane,
    boundary_distance,
    sample_interior,
    unit_disc,
)
from kobayashi_balls.harness import (
    config_from_dict,
    run_metric_properties,
    run_projection_diagnostic,
    run_sandwich,
    run_sharpness,
    run_tau_decay,
)
from kobayashi_balls.harness.generators import random_base_point, random_ellipsoid, random_polytope
from kobayashi_balls.oracles import convex_bracket, exact_distance, poincare_disc, slit_plane_distance

pytestmark = pytest.mark.acceptance
RADII = [0.25, 0.5, 1.0, 2.0]
B2 = {"type": "ball", "center": [0, 0], "radius": 1}
D2 = {"type": "polydisc", "center": [0, 0], "radii": [1, 1]}


def test_c01_disc_tightness(criterion):
    criterion(1, "disc tightness of the inner/outer polydisc")
    t0 = time.perf_counter()
    rep = run_sandwich(config_from_dict({"domain": {"type": "disc"}, "base_point": [0], "radii": RADII,
                                         "samples": 10_000, "seed": 1}))
    elapsed = time.perf_counter() - t0
    inner = [e for e in rep.experiments if e.name.endswith("_inner")]
    criterion(1, f"disc tightness: {rep.violation_count} violations over {len(inner)} radii, {elapsed:.2f}s")
    assert rep.violation_count == 0
    assert all(e.checked == 10_000 for e in inner)
    assert elapsed < 1.0


def test_c02_sandwich_ball_and_polydisc(criterion):
    criterion(2, "sandwich on B2 and D2")
    t0 = time.perf_counter()
    reps = [run_sandwich(config_from_dict({"domain": B2, "base_point": [0.5, 0], "radii": RADII,
                                           "samples": 10_000, "seed": 2})),
            run_sandwich(config_from_dict({"domain": D2, "base_point": [0.5, 0.2], "radii": RADII,
                                           "samples": 10_000, "seed": 2}))]
    elapsed = time.perf_counter() - t0
    v = sum(r.violation_count for r in reps)
    oracles = {e.details["oracle"] for r in reps for e in r.experiments}
    criterion(2, f"sandwich on B2 and D2: {v} violations, oracles {sorted(oracles)}, {elapsed:.2f}s")
    assert v == 0 and oracles == {"exact"}
    assert elapsed < 10.0


def _planar_pairs(kind, rng, m):
    if kind == "disc":
        r = np.sqrt(rng.uniform(size=(2, m))) * (1 - 1e-9)
        return r * np.exp(2j * np.pi * rng.uniform(size=(2, m)))
    if kind == "half":
        return 10 ** rng.uniform(-3, 3, size=(2, m)) + 1j * rng.uniform(-1e3, 1e3, size=(2, m)) * \
            10 ** rng.uniform(-3, 0, size=(2, m))
    mod = 10 ** rng.uniform(-3, 3, size=(2, m))
    return mod * np.exp(1j * rng.uniform(1e-9, 2 * np.pi - 1e-9, size=(2, m)))


def test_c03_planar_lower_bounds(criterion):
    criterion(3, "planar lower bounds")
    rng = np.random.default_rng(3)
    m = 100_000
    total = 0
    cases = [("half", RightHalfPlane(), halfplane_distance, ConvexityClass.CONVEX),
             ("disc", unit_disc(), poincare_disc, ConvexityClass.CONVEX),
             ("slit", SlitPlane(), slit_plane_distance, ConvexityClass.C_CONVEX)]
    for kind, f, exact, cls in cases:
        z, w = _planar_pairs(kind, rng, m)
        dw = Product([f]).factor_distances(w[:, None])[:, 0]
        assert np.all(dw > 0)
        lower = prop2_planar_lower(z, w, dw, cls)
        value = exact(z, w)
        total += int(np.sum(lower > value * (1 + 1e-12)))
    equality = abs(prop2_planar_lower(3, 1, boundary_distance(RightHalfPlane(), [1]), ConvexityClass.CONVEX)
                   - halfplane_distance(3, 1))
    criterion(3, f"planar lower bounds: {total} violations over 3x{m} pairs, equality gap {equality:.1e}")
    assert total == 0
    assert equality < 1e-12


def test_c04_quarter_sharp(criterion):
    criterion(4, "slit plane saturates the quarter bound")
    rep = run_sharpness(config_from_dict({"sharpness": {"t": [2, 10, 100]}}))
    res = rep.experiment("slit_quarter").details["residuals"]
    criterion(4, f"slit plane saturates the quarter bound: max residual {max(res):.1e}")
    assert max(res) < 1e-12
    for t in (2, 10, 100):
        assert abs(slit_plane_distance(-t, -1) - 0.25 * np.log(t)) < 1e-12


def test_c05_half_sharp(criterion):
    criterion(5, "disc ratios approach 1")
    rep = run_sharpness(config_from_dict({"sharpness": {"eps": [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]}}))
    d = rep.experiment("disc_half").details
    criterion(5, f"disc ratios approach 1: increasing={d['increasing']}, final {d['final_ratio']:.4f}")
    assert d["increasing"]
    assert d["final_ratio"] >= 0.95
    assert abs(d["final_ratio"] - 0.9522) <= 0.005


def test_c06_cstar_metric(criterion):
    criterion(6, "punctured-plane metric")
    t0 = time.perf_counter()
    rep = run_metric_properties(config_from_dict({"metric": {"triples": 1_000_000, "base_points": 20,
                                                             "step": 1e-6}, "seed": 42}))
    elapsed = time.perf_counter() - t0
    res = rep.experiment("derivative").details["max_residual"]
    criterion(6, f"punctured-plane metric: {rep.experiment('triangle').violations} triangle violations, "
                 f"derivative residual {res:.1e}, {elapsed:.2f}s")
    assert rep.passed
    assert res < 1e-4
    assert elapsed < 5.0


def _basis_chain(d, q, rng):
    mb = compute_minimal_basis(d, q)
    ok = mb.orthonormality_residual() < 1e-10
    ok &= bool(np.all(np.diff(mb.scales) >= -1e-12 * mb.scales[1:]))
    ok &= abs(mb.scales[0] - boundary_distance(d, q)) < 1e-7
    sp = rotate_to_standard(mb, d)
    lam = triangular_map(sp.domain, sp.basis)
    for plane in lam.hyperplanes:
        ok &= bool(verify_hyperplane_disjoint(sp.domain, plane, samples=10_000, rng=rng))
    return ok


def test_c07_minimal_basis_random_domains(criterion):
    criterion(7, "minimal-basis invariants on random domains")
    t0 = time.perf_counter()
    bad = []
    for i in range(100):
        rng = np.random.default_rng([7, i])
        n = 2 + i % 2
        d = random_polytope(n, int(rng.integers(max(6, 2 * n + 1), 21)), rng)
        if not _basis_chain(d, random_base_point(d, rng), rng):
            bad.append(("polytope", i))
    for i in range(100):
        rng = np.random.default_rng([70, i])
        d = random_ellipsoid(2 + i % 2, rng)
        if not _basis_chain(d, random_base_point(d, rng), rng):
            bad.append(("ellipsoid", i))
    elapsed = time.perf_counter() - t0
    criterion(7, f"minimal-basis invariants on 200 random domains: {len(bad)} failures, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 60.0


def test_c08_projection(criterion):
    criterion(8, "projection observation")
    rep = run_projection_diagnostic(config_from_dict({"domain": B2, "base_point": [0.5, 0],
                                                      "projection": {"directions": [128, 512]}}))
    row = rep.experiments[0].details["coordinates"][1]
    e128, e512 = (abs(e - np.sqrt(0.75)) for e in row["estimates"])
    poly = run_projection_diagnostic(config_from_dict({"domain": D2, "base_point": [0.5, 0.2]}))
    perr = max(max(r["errors"]) for r in poly.experiments[0].details["coordinates"])
    criterion(8, f"projection observation: B2 errors {e128:.1e} (128), {e512:.1e} (512); D2 error {perr:.1e}")
    assert e512 < 1e-3 and e128 < 4e-3 and e512 <= e128
    assert perr < 1e-12
    assert rep.passed and poly.passed


def test_c09_tau_decay(criterion):
    criterion(9, "scale decay")
    ts = [1e-1, 1e-2, 1e-3, 1e-4, 5e-5]
    ball = run_tau_decay(config_from_dict({"domain": B2, "tau_decay": {"boundary_point": [1, 0], "t": ts}}))
    d = ball.experiments[0].details
    err = max(abs(s[1] - np.sqrt(2 * t - t * t)) for t, s in zip(d["t"], d["scales"]) if t >= 1e-4)
    poly = run_tau_decay(config_from_dict({"domain": D2, "tau_decay": {"boundary_point": [1, 0.2], "t": ts}}))
    p = poly.experiments[0].details
    perr = max(abs(s[1] - 0.8) for s in p["scales"])
    criterion(9, f"scale decay: B2 error {err:.1e}, last {d['last_scale']:.3e} ({d['flag']}); "
                 f"D2 deviation {perr:.1e} ({p['flag']})")
    assert err < 1e-6
    assert d["last_scale"] < 1e-2 and d["flag"] == "decay"
    assert perr < 1e-9 and p["flag"] == "no-decay"


def test_c10_bracket_soundness(criterion):
    criterion(10, "bracket soundness")
    domains = [unit_disc(), EuclideanBall([0, 0], 1), Polydisc([0, 0], [1, 1])]
    worst = np.inf
    counts = []
    for k, d in enumerate(domains):
        rng = np.random.default_rng([10, k])
        n = 0
        while n < 10_000:
            Z = sample_interior(d, 2 * (10_000 - n) + 16, rng)
            for z, w in zip(Z[::2], Z[1::2]):
                if n == 10_000:
                    break
                b = convex_bracket(d, z, w)
                e = exact_distance(d, z, w)
                worst = min(worst, e - b.lower, b.upper - e)
                n += 1
        counts.append(n)
    criterion(10, f"bracket soundness: {sum(counts)} pairs, worst slack {worst:.1e}")
    assert counts == [10_000] * 3
    assert worst >= -1e-9
