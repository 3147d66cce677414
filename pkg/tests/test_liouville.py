"""Boundary-value solver for u'' = -8 a^2 x e^u.

Oracles: the a = 0 case is exactly linear; for a > 0 the plugged-back ODE
residual of the packaged evaluator is checked directly on off-grid points,
and the raw discretization converges at second order.
"""

import math

import numpy as np
import pytest

from g2torsion.liouville import LiouvilleConfig, refinement_orders, solve_liouville

RNG = np.random.default_rng(11)


def test_zero_parameter_solution_is_linear():
    sol = solve_liouville(0.0, domain=(1.0, 3.0), boundary=(-1.0, 2.0))
    xs = np.linspace(1.0, 3.0, 17)
    want = -1.0 + (xs - 1.0) * 1.5
    assert np.max(np.abs(sol.u(xs) - want)) < 1e-12
    assert np.max(np.abs(sol.du(xs) - 1.5)) < 1e-10
    assert np.max(np.abs(sol.d2u(xs))) < 1e-10
    assert sol.residual_norm < 1e-12


def test_solution_meets_boundary_and_residual_cap():
    sol = solve_liouville(0.5)
    assert abs(sol.u(1.0)) < 1e-12
    assert abs(sol.u(2.0)) < 1e-12
    assert sol.residual_norm < 1e-10
    assert sol.iterations > 0


def test_evaluator_satisfies_ode_off_grid():
    """u'' + 8 a^2 x e^u ~ 0 at arbitrary points, not just nodes."""
    a = 0.5
    sol = solve_liouville(a)
    xs = 1.0 + RNG.random(50)
    residual = sol.d2u(xs) + 8 * a * a * xs * np.exp(sol.u(xs))
    # between nodes the quintic interpolant's u'' drifts from the ODE by
    # its own interpolation error, a few 1e-8 at the default grid
    assert np.max(np.abs(residual)) < 2e-7


def test_evaluator_derivative_consistency():
    """The packaged derivative evaluators are the actual derivatives of u."""
    sol = solve_liouville(0.5)
    xs = np.linspace(1.05, 1.95, 19)
    h = 1e-6
    fd_du = (sol.u(xs + h) - sol.u(xs - h)) / (2 * h)
    fd_d2u = (sol.du(xs + h) - sol.du(xs - h)) / (2 * h)
    assert np.max(np.abs(fd_du - sol.du(xs))) < 1e-8
    assert np.max(np.abs(fd_d2u - sol.d2u(xs))) < 1e-6


def test_solution_is_concave_for_positive_parameter():
    sol = solve_liouville(0.5)
    assert sol.is_concave()
    assert np.all(sol.u(np.linspace(1.01, 1.99, 21)) > 0.0)  # above the chord


def test_rhs_helper_matches_definition():
    a = 0.45
    sol = solve_liouville(a)
    xs = np.array([1.25, 1.5, 1.75])
    want = -8 * a * a * xs * np.exp(sol.u(xs))
    assert np.allclose(sol.rhs(xs), want, rtol=0, atol=1e-13)


def test_refinement_is_second_order():
    orders = refinement_orders(0.5, grids=(25, 50, 100))
    assert all(o > 1.9 for o in orders), orders


def test_richardson_improves_raw_solution():
    ref = solve_liouville(0.5, n=1600, richardson=True)
    raw = solve_liouville(0.5, n=50, richardson=False)
    rich = solve_liouville(0.5, n=50, richardson=True)
    err_raw = float(np.max(np.abs(raw.values - ref.u(raw.grid))))
    err_rich = float(np.max(np.abs(rich.values - ref.u(rich.grid))))
    assert err_rich < err_raw / 20


def test_config_validation():
    with pytest.raises(ValueError, match="x0 > 0"):
        LiouvilleConfig(a=0.5, x0=0.0)
    with pytest.raises(ValueError, match="empty domain"):
        LiouvilleConfig(a=0.5, x0=2.0, x1=1.0)
    with pytest.raises(ValueError, match="nonnegative"):
        LiouvilleConfig(a=-1.0)
    with pytest.raises(ValueError, match="coarse"):
        LiouvilleConfig(a=0.5, n=2)


def test_residual_cap_is_enforced():
    """An unreachable cap raises instead of silently returning a bad solve."""
    with pytest.raises(RuntimeError):
        solve_liouville(0.5, n=8, richardson=False, residual_cap=1e-30)


def test_supercritical_parameter_fails_cleanly():
    """Beyond the fold (no solution exists) the solver reports divergence

    with its own error instead of leaking overflow from the linear algebra."""
    with pytest.raises(RuntimeError, match="did not converge"):
        solve_liouville(0.7)
