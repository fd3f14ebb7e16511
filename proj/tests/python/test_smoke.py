import math

import numpy as np
import pytest

import srgeom


def diag(*vals):
    return np.diag(np.asarray(vals, dtype=float))


def random_spd(rng, p):
    g = rng.standard_normal((p, p))
    q, r = np.linalg.qr(g)
    q = q @ np.diag(np.sign(np.diag(r)))
    vals = np.exp(rng.uniform(-1.5, 1.5, size=p))
    return (q * vals) @ q.T


def test_distance_same_frame_scaling():
    # Same frame, same axis: only the log-diagonal gap remains.
    assert srgeom.d_sr(diag(4, 1, 1), diag(9, 1, 1)) == pytest.approx(
        math.log(9 / 4), abs=1e-12
    )


def test_distance_symmetry_and_zero():
    rng = np.random.default_rng(7)
    X, Y = random_spd(rng, 3), random_spd(rng, 3)
    assert srgeom.d_sr(X, Y) == pytest.approx(srgeom.d_sr(Y, X), abs=1e-10)
    assert srgeom.d_sr(X, X) == pytest.approx(0.0, abs=1e-7)


def test_report_fields():
    rep = srgeom.d_sr_report(diag(4, 1, 1), diag(9, 4, 1))
    assert rep["case"] == "mid->top"
    assert rep["stratum_x"] == [2, 1]
    assert rep["stratum_y"] == [1, 1, 1]
    assert rep["branch"].startswith("ell")


def test_classify_curve_endpoints():
    X, Y = diag(4, 1, 1), diag(9, 4, 1)
    cs = srgeom.classify(X, Y)
    assert len(cs) >= 1 and not cs.infinite
    for c in cs.curves:
        np.testing.assert_allclose(c.eval(0.0), X, atol=1e-9)
        np.testing.assert_allclose(c.eval(1.0), Y, atol=1e-9)
        assert c.length == pytest.approx(srgeom.d_sr(X, Y), abs=1e-9)


def test_infinite_family():
    cs = srgeom.classify(diag(4, 1, 1), diag(0.25, 1, 1))
    assert cs.infinite and cs.cardinality == -1
    assert len(cs.curves) == 8


def test_stepwise_agrees():
    rng = np.random.default_rng(11)
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    X = diag(5, 2, 2)
    Y = (q * np.array([9.0, 3.0, 1.0])) @ q.T
    a = srgeom.classify(X, Y)
    b = srgeom.classify_stepwise(X, Y)
    assert len(a) == len(b)
    assert all(
        srgeom.curves_equal(ca, cb) for ca, cb in zip(a.curves, b.curves)
    )


def test_oracle_matches():
    X = diag(5, 2, 2)
    Y = diag(1, 3, 3)
    assert srgeom.d_sr(X, Y) == pytest.approx(
        srgeom.brute_force_oracle(X, Y), abs=5e-4
    )


def test_fiber_counts():
    assert srgeom.fiber(diag(8, 5, 1))["num_components"] == 24
    f = srgeom.fiber(diag(6, 6, 2))
    assert f["num_components"] == 6 and f["component_dim"] == 1
    f = srgeom.fiber(diag(5, 5, 5))
    assert f["num_components"] == 1 and f["component_dim"] == 3


def test_reduce_and_grassmann():
    assert srgeom.sign_change_reducible(-np.eye(4)) == [-1, -1, -1, -1]
    w = np.zeros((6, 2))
    w[0, 0] = w[1, 1] = 1.0
    scan = srgeom.best_coordinate_plane(w)
    assert scan["J"] == [0, 1] and scan["dist"] == pytest.approx(0.0, abs=1e-12)


def test_count_strata():
    assert srgeom.count_strata(4) == (5, 15)
