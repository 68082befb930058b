from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from richtwist.errors import IndexOutOfRange
from richtwist.fixedpoint import (
    _batch_pluckers,
    _batch_points,
    _batch_twist,
    check_fixed_point,
    example_model,
    fixed_point_matrix,
    fixed_point_report,
    flag_deviation,
    log_ratios,
    residual,
    search_no_fixed_point,
)
from richtwist.matgroup import Mat, x_gen
from richtwist.positroid import musp_twist, plucker, project
from richtwist.twist import mr_parametrize


def test_fixed_point_matrix_shape():
    g = fixed_point_matrix(5)
    assert g.is_upper_triangular()
    assert all(g[i, i] == 1.0 for i in range(1, 6))
    assert g[1, 2] == pytest.approx(2.0)  # sqrt(C(4,1) C(1,1))
    assert g[2, 4] == pytest.approx(math.sqrt(3 * 3))
    with pytest.raises(IndexOutOfRange):
        fixed_point_matrix(9)
    with pytest.raises(IndexOutOfRange):
        fixed_point_matrix(1)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_conjectured_fixed_point(n):
    report = check_fixed_point(n)
    assert report["within_tol"], report
    assert report["deviation"] < 1e-9


def test_flag_deviation_detects_other_points():
    g = fixed_point_matrix(3)
    assert flag_deviation(g, g) == 0.0
    # rescaling columns is invisible, a different flag is not
    scaled = g @ Mat.diag([2.0, 0.5, 1.0])
    assert flag_deviation(g, scaled) < 1e-12
    assert flag_deviation(g, g @ x_gen(1, 1.0, 3)) > 1e-3


def test_model_structure():
    model = example_model()
    assert model.k == 4 and model.dim == 5
    assert len(model.necklace) == 8 and len(model.nonzero) == 66
    # the slice is the null space of the centred exponent matrix
    A = model.frozen_exponents
    centred = A - A.mean(axis=0)
    assert np.allclose(centred @ model.slice_basis, 0.0)
    # on the slice every frozen equals 1
    assert np.allclose(A @ model.slice_basis, 0.0)


def test_batch_path_matches_exact():
    model = example_model()
    P = model.pds
    rng = np.random.default_rng(5)
    log_t = rng.uniform(-1, 1, size=(1, len(P.jv)))
    exact_t = {r: Fraction(float(math.exp(x))).limit_denominator(10**6) for r, x in zip(P.jv, log_t[0])}
    exact = project(mr_parametrize(P, exact_t).flag(), model.k)
    log_t = np.array([[math.log(exact_t[r]) for r in P.jv]])
    M = _batch_points(model, log_t)
    assert np.allclose(M[0], np.array([[float(x) for x in row] for row in exact.M.rows]), atol=1e-9)
    before = _batch_pluckers(model, M)[0]
    after = _batch_pluckers(model, _batch_twist(model, M))[0]
    tau = musp_twist(exact, "right")
    for F, b, a in zip(model.nonzero, before, after):
        assert b == pytest.approx(float(plucker(exact, F)), rel=1e-9)
        assert a == pytest.approx(float(plucker(tau, F)), rel=1e-9)


def test_residual_zero_only_for_proportional_ratios():
    model = example_model()
    s = np.zeros((1, model.dim))
    r = log_ratios(model, s)
    assert r.shape == (1, 66)
    assert residual(model, s)[0] == pytest.approx((r.max() - r.min()) / 2)
    assert residual(model, s)[0] > 0


def test_search_small_run_is_deterministic():
    a = search_no_fixed_point(starts=200, refine=2, seed=1)
    b = search_no_fixed_point(starts=200, refine=2, seed=1)
    assert a == b
    assert a["slice_dim"] == 5 and a["box"] == [-3.0, 3.0]
    assert a["residual_infimum"] <= a["multistart_min"]
    assert all(abs(x) <= 3.0 + 1e-12 for x in a["best_point"])
    # frozens stay pinned to 1 along the slice
    assert np.allclose(a["frozen_values"], 1.0)


def test_report_shape():
    report = fixed_point_report(3, starts=100, seed=0)
    assert report["conjecture"]["within_tol"]
    assert set(report) == {"conjecture", "no_fixed_point_example", "no_positive_solution_found"}
    assert report["no_positive_solution_found"] == (report["no_fixed_point_example"]["residual_infimum"] > 1e-6)
