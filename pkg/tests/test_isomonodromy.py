"""Vertex constraints, semiaxis solutions, and residue-matrix audits."""
import cmath
import math

import numpy as np
import pytest

from hexpatterns import isomonodromy as iso
from hexpatterns.errors import PoleAt, SingularDenominator, SingularStep
from hexpatterns.fgh import EdgeFieldTriple
from hexpatterns.geometry import INFINITY, is_infinite
from hexpatterns.lattice import LatticePoint, shift
from hexpatterns.lax import quadratic_forms, transition_matrix

SECTOR_SEEDS = (1.0, 1.0, cmath.exp(0.9j), cmath.exp(0.4j))


def _sector(alpha, beta, n):
    params = iso.ConstraintParams(alpha, beta)
    u, v, w = iso.solve_constrained_sector(params, *SECTOR_SEEDS, n)
    return params, u, v, w


def _interior_points(u, n):
    star_steps = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))
    for k in range(1, n):
        for l in range(1, n):
            p = LatticePoint(k, l)
            if all(shift(p, dk, dl) in u for dk, dl in star_steps):
                yield p


# -- parameters ----------------------------------------------------------------


def test_gamma_defaults_to_complement():
    params = iso.ConstraintParams(0.3, 0.25)
    assert abs(params.gamma - 0.45) < 1e-15
    params.with_gamma_consistency_checked()


def test_inconsistent_gamma_rejected():
    params = iso.ConstraintParams(0.3, 0.25, gamma=0.5)
    with pytest.raises(ValueError):
        params.with_gamma_consistency_checked()


# -- semiaxis recurrence -------------------------------------------------------


def test_axis_solve_argument_validation():
    params = iso.ConstraintParams(0.3, 0.3)
    with pytest.raises(ValueError):
        iso.axis_solve(params, 1.0, 1.0, 0)
    with pytest.raises(ValueError):
        iso.axis_solve(params, 1.0, 1.0, 5, axis="x")


def test_axis_solve_satisfies_constraints():
    params = iso.ConstraintParams(0.3 + 0.1j, 0.2 - 0.05j)
    sol = iso.axis_solve(params, 1.0, 1.0, 20)
    assert iso.axis_constraint_residuals(sol, params) < 1e-12
    for k in range(20):
        assert abs(sol.f[k] * sol.g[k] * sol.h[k] - 1.0) < 1e-12
        assert abs(sol.u[k + 1] - sol.u[k] - sol.f[k]) < 1e-12
        assert abs(sol.w[k + 1] - sol.w[k] - sol.h[k]) < 1e-12


def test_axis_solve_detects_singular_seed():
    params = iso.ConstraintParams(0.3, 0.3)
    with pytest.raises(SingularStep):
        iso.axis_solve(params, 1.0, 1e-30, 5)


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.4])
def test_axis_solve_matches_closed_form(alpha):
    params = iso.ConstraintParams(alpha, alpha)
    sol = iso.axis_solve(params, 1.0, 1.0, 30)
    closed = iso.closed_form_axis(alpha, 30)
    worst = 0.0
    for got, want in zip((sol.u, sol.v, sol.w), (closed.u, closed.v, closed.w)):
        for a, b in zip(got, want):
            worst = max(worst, abs(a - b) / max(1.0, abs(b)))
    assert worst < 1e-10


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.4])
def test_closed_form_anchor_values(alpha):
    closed = iso.closed_form_axis(alpha, 4)
    assert abs(closed.u[1] - 1.0) < 1e-15
    assert abs(closed.v[1] - 1.0) < 1e-15
    assert abs(closed.u[2] - 2.0) < 1e-12
    assert abs(closed.w[2] - (1 - alpha) / alpha) < 1e-12


def test_closed_form_steps_equal_in_pairs():
    # consecutive increments agree within each residue run
    closed = iso.closed_form_axis(0.3, 28)
    for k in range(1, 9):
        du1 = closed.u[3 * k + 1] - closed.u[3 * k]
        du2 = closed.u[3 * k + 2] - closed.u[3 * k + 1]
        assert abs(du1 - du2) < 1e-12 * max(1.0, abs(du1))
        dv1 = closed.v[3 * k] - closed.v[3 * k - 1]
        dv2 = closed.v[3 * k + 1] - closed.v[3 * k]
        assert abs(dv1 - dv2) < 1e-12 * max(1.0, abs(dv1))
        dw1 = closed.w[3 * k] - closed.w[3 * k - 1]
        dw2 = closed.w[3 * k + 1] - closed.w[3 * k]
        assert abs(dw1 - dw2) < 1e-12 * max(1.0, abs(dw1))
        assert abs(closed.f[3 * k] - closed.f[3 * k + 1]) < 1e-14
        assert abs(closed.g[3 * k + 1] - closed.g[3 * k + 2]) < 1e-14
        assert abs(closed.h[3 * k - 1] - closed.h[3 * k]) < 1e-14


@pytest.mark.parametrize("alpha", [0.0, 0.5])
def test_closed_form_poles(alpha):
    with pytest.raises(PoleAt):
        iso.closed_form_axis(alpha, 10)


# -- degenerate-exponent limits ------------------------------------------------


def test_limit_case_validation():
    with pytest.raises(ValueError):
        iso.closed_form_axis_limits("bogus", 5)


def _double_factorial(n):
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def test_z32log_limit_tables():
    sol = iso.closed_form_axis_limits("z32log", 25)
    assert sol.u[4] == 6.0
    assert sol.v[0] == 0 and sol.v[1] == 0
    assert is_infinite(sol.w[0])
    for i in range(2, 26):
        k, r = divmod(i, 3)
        ck = 2 ** k * math.factorial(k) / _double_factorial(2 * k - 1)
        assert abs(sol.u[i] - ck * (2 * k + r)) < 1e-12 * max(1.0, ck)
        k2 = (i + 1) // 3
        dk = _double_factorial(2 * k2 - 1) / (2 ** k2 * math.factorial(k2 - 1))
        r2 = i - 3 * k2
        assert abs(sol.v[i] - dk * (2 * k2 + r2)) < 1e-12 * max(1.0, dk)
    for k in range(1, 8):
        assert abs(sol.h[3 * k - 1] - 1.0 / k) < 1e-15
        assert abs(sol.h[3 * k] - 1.0 / k) < 1e-15
        assert abs(sol.h[3 * k + 1] - 2.0 / (2 * k + 1)) < 1e-15


def test_logz3_limit_tables():
    sol = iso.closed_form_axis_limits("logz3", 25)
    assert is_infinite(sol.u[0]) and is_infinite(sol.u[1]) and is_infinite(sol.v[0])
    assert sol.u[2] == 0 and sol.v[1] == 0
    assert sol.w[0] == 0
    for i in range(25):
        if i < 2:
            assert is_infinite(sol.f[i])
        elif i % 3 == 1:
            assert abs(sol.f[i] - 1.0 / ((i - 1) // 3)) < 1e-15
        else:
            assert abs(sol.f[i] - 1.0 / ((i + 1) // 3)) < 1e-15
        if i < 1:
            assert is_infinite(sol.g[i])
        else:
            assert abs(sol.g[i] - 1.0 / ((i + 2) // 3)) < 1e-15
    for k in range(9):
        assert abs(sol.w[3 * k] - k ** 3) < 1e-12 * max(1.0, k ** 3)


# -- constrained sector --------------------------------------------------------


def test_interior_constraints_hold():
    n = 8
    params, u, v, w = _sector(0.3, 0.25, n)
    checked = 0
    for p in _interior_points(u, n):
        star = iso.star_data(u, v, p)
        r1, r2 = iso.constraint_residual(star, u[p], v[p], params)
        r3 = iso.constraint_residual_w(star, w[p], params)
        c2, c3 = iso.constraint_residual_cyclic(star, v[p], w[p], params)
        of = iso.one_field_constraint_residual(star.f, u[p], params.alpha, p)
        assert max(abs(r1), abs(r2), abs(r3)) < 1e-9
        assert max(abs(c2), abs(c3)) < 1e-9
        assert abs(of) < 1e-9
        checked += 1
    assert checked == (n - 1) ** 2


def test_constraint_invariant_under_representative_shift():
    params, u, v, _ = _sector(0.3, 0.25, 6)
    p = LatticePoint(3, 2)
    star = iso.star_data(u, v, p)
    r1a, r2a = iso.constraint_residual(star, u[p], v[p], params)
    r1b, r2b = iso.constraint_residual(star, u[p], v[p], params,
                                       representative=(4, 3, 1))
    assert abs(r1a - r1b) < 1e-12
    assert abs(r2a - r2b) < 1e-12


def test_adjacent_stars_share_edge_fields():
    _, u, v, _ = _sector(0.3, 0.25, 6)
    p = LatticePoint(2, 2)
    q = shift(p, 1, 0)
    star_p = iso.star_data(u, v, p)
    star_q = iso.star_data(u, v, q)
    assert star_p.f[0] == star_q.f[3]
    assert star_p.g[0] == star_q.g[3]


def test_singular_denominator_detected():
    # S_0 = f0*g0 + g0*f3 + f3*g3 = 1 + 1 - 2 = 0
    star = iso.StarData(f=(1.0,) * 6, g=(1.0, 1.0, 1.0, -2.0, 1.0, 1.0),
                        h=(1.0,) * 6, representative=LatticePoint(1, 0, 0))
    params = iso.ConstraintParams(0.3, 0.3)
    with pytest.raises(SingularDenominator):
        iso.constraint_residual(star, 1.0, 1.0, params)


# -- residue matrices ----------------------------------------------------------


def test_q_matrix_shape():
    assert iso.Q_MATRIX.shape == (3, 3)
    expect = np.zeros((3, 3))
    expect[2, 0] = 1.0
    assert np.array_equal(iso.Q_MATRIX, expect)


def test_null_vectors_annihilate_edge_matrix():
    triple = EdgeFieldTriple.from_fg(1.3 - 0.4j, 0.7 + 0.2j)
    xi, eta = iso.null_vectors(triple)
    lm1 = transition_matrix(triple, "mu", -1.0)
    assert np.abs(lm1 @ xi).max() < 1e-14
    assert np.abs(eta @ lm1).max() < 1e-14


def test_projectors_are_idempotent_and_resolve_identity():
    params, u, v, _ = _sector(0.3, 0.25, 6)
    p = LatticePoint(3, 3)
    star = iso.star_data(u, v, p)
    total = np.zeros((3, 3), dtype=complex)
    for j in (0, 2, 4):
        pj = iso.projector(star, j)
        assert np.abs(pj @ pj - pj).max() < 1e-12
        assert np.linalg.matrix_rank(pj, tol=1e-10) == 1
        total += pj
    assert np.abs(total - np.eye(3)).max() < 1e-12


def test_residue_matrix_d_is_upper_triangular():
    alpha = 0.35
    params, u, v, w = _sector(alpha, alpha, 6)
    quad = quadratic_forms(u, v, w)
    mats = iso.build_iso_matrices(u, v, quad, params)
    p = LatticePoint(2, 3)
    d = mats[p].D
    assert np.allclose(np.diag(d), [-alpha, 0.0, alpha])
    assert np.abs(np.tril(d, -1)).max() == 0.0
    assert abs(d[0, 1] - alpha * u[p]) < 1e-14
    assert abs(d[1, 2] - alpha * v[p]) < 1e-14
    c = mats[p].C
    expect_c = 2 * mats[p].P[0] + 3 * mats[p].P[2]
    assert np.abs(c - expect_c).max() < 1e-12
    a_val = mats[p].a_of(0.5)
    assert np.abs(a_val - (c / 1.5 + d / 0.5)).max() < 1e-14


def test_deformation_equations_audit():
    params, u, v, w = _sector(0.35, 0.35, 8)
    quad = quadratic_forms(u, v, w)
    mats = iso.build_iso_matrices(u, v, quad, params)
    report = iso.audit_iso_equations(mats, u, v, params)
    assert report.edges_checked == 120
    assert report.c_residual < 1e-9
    assert report.d_residual < 1e-9
    assert report.cd_residual < 1e-9
    assert report.projector_sum_residual < 1e-10
    assert report.cd_entry_r1_match < 1e-9
    assert report.cd_entry_r2_match < 1e-9
    assert report.cd13_shift_residual < 1e-9
    assert report.null_vector_residual < 1e-12
    # the index-swapped reading of the corner equation is genuinely different
    assert report.cd13_alt_reading_residual > 0.1
