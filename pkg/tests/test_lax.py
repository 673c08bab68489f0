"""Transition matrices, wave-function transport, field recovery, squares."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexpatterns import lax
from hexpatterns.errors import (DisconnectedPath, NotFlat, PathDependent,
                                ShapeViolation, TripleNotUnit)
from hexpatterns.fgh import EdgeFieldTriple, VertexField, edge_fields, fourth_point
from hexpatterns.lattice import (LatticePoint, OrientedEdge, downward_triangles,
                                 hex_star, sector_points, upward_triangles)

finite_complex = st.complex_numbers(min_magnitude=0.3, max_magnitude=3.0,
                                    allow_nan=False, allow_infinity=False)


def _random_poly(rng, degree):
    shape = (3, 3, degree + 1)
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def _eval_scalar(coeffs, x):
    return sum(c * x ** k for k, c in enumerate(coeffs))


# -- polynomial matrix helpers -------------------------------------------------


def test_poly_identity_evaluates_to_identity():
    for x in (0.0, 1.5, -0.3 + 2j):
        assert np.allclose(lax.poly_eval(lax.poly_identity(), x), np.eye(3))


def test_poly_mul_evaluates_to_matrix_product():
    rng = np.random.default_rng(11)
    for da, db in ((1, 1), (2, 1), (1, 3)):
        a, b = _random_poly(rng, da), _random_poly(rng, db)
        prod = lax.poly_mul(a, b)
        assert prod.shape == (3, 3, da + db + 1)
        for x in (0.4, -1.2 + 0.7j):
            expect = lax.poly_eval(a, x) @ lax.poly_eval(b, x)
            assert np.allclose(lax.poly_eval(prod, x), expect)


def test_poly_adjugate_times_matrix_is_determinant():
    rng = np.random.default_rng(12)
    a = _random_poly(rng, 1)
    prod = lax.poly_mul(lax.poly_adjugate(a), a)
    det = lax.poly_det(a)
    for x in (0.3, 1.1 - 0.4j):
        expect = _eval_scalar(det, x) * np.eye(3)
        assert np.allclose(lax.poly_eval(prod, x), expect)


def test_poly_det_matches_numpy():
    rng = np.random.default_rng(13)
    a = _random_poly(rng, 2)
    det = lax.poly_det(a)
    for x in (0.7, -0.2 + 0.9j):
        assert abs(_eval_scalar(det, x)
                   - np.linalg.det(lax.poly_eval(a, x))) < 1e-10


def test_poly_divide_linear_round_trip():
    rng = np.random.default_rng(14)
    p = rng.normal(size=5) + 1j * rng.normal(size=5)
    blown = lax.poly_scalar_mul(p, np.array([1.0, 1.0]))
    quo, rem = lax.poly_divide_linear(blown)
    assert abs(rem) < 1e-12
    assert np.allclose(quo, p)


# -- transition matrices -------------------------------------------------------


@given(f=finite_complex, g=finite_complex)
def test_transition_matrix_determinants(f, g):
    triple = EdgeFieldTriple.from_fg(f, g)
    for mu in (0j, 0.5, -0.3 + 0.2j):
        det = np.linalg.det(lax.transition_matrix(triple, "mu", mu))
        assert abs(det - (1 + mu)) < 1e-10
    for lam in (0.4, 0.7 + 0.2j):
        det = np.linalg.det(lax.transition_matrix(triple, "lambda", lam))
        assert abs(det - 1.0) < 1e-10


@given(f=finite_complex, g=finite_complex, mu=finite_complex)
def test_transition_matrix_poly_matches_pointwise(f, g, mu):
    triple = EdgeFieldTriple.from_fg(f, g)
    evaluated = lax.poly_eval(lax.transition_matrix_poly(triple), mu)
    assert np.allclose(evaluated, lax.transition_matrix(triple, "mu", mu))


def test_transition_matrix_det_as_polynomial():
    triple = EdgeFieldTriple.from_fg(2.0 + 1j, 0.5 - 0.25j)
    det = lax.poly_det(lax.transition_matrix_poly(triple))
    assert np.allclose(det[:2], [1.0, 1.0])
    assert np.allclose(det[2:], 0.0)


def test_non_unit_triple_rejected():
    with pytest.raises(TripleNotUnit):
        lax.transition_matrix(EdgeFieldTriple(f=1.0, g=1.0, h=2.0))


def test_unknown_gauge_rejected():
    triple = EdgeFieldTriple.from_fg(1.0, 1.0)
    with pytest.raises(ValueError):
        lax.transition_matrix(triple, "sigma", 0.1)


# keep lam**3 away from -1 so the branch prefactor stays bounded
small_lambda = st.complex_numbers(min_magnitude=0.05, max_magnitude=0.8,
                                  allow_nan=False, allow_infinity=False)


@given(f=finite_complex, g=finite_complex, lam=small_lambda)
def test_spectral_rotation_symmetry(f, g, lam):
    triple = EdgeFieldTriple.from_fg(f, g)
    assert lax.spectral_rotation_residual(triple, lam) < 1e-12


# -- flatness on solved patterns -----------------------------------------------


def test_triangle_products_are_scalar(bundle_03):
    u, v = bundle_03.fields["u"], bundle_03.fields["v"]
    n = bundle_03.n
    checked = 0
    for tri in upward_triangles(n) + downward_triangles(n):
        try:
            triples = lax.triangle_edge_triples(u, v, tri)
        except KeyError:
            continue
        assert lax.check_zero_curvature(*triples) < 1e-11
        checked += 1
    assert checked > 50


def test_triangle_product_detects_corruption(bundle_03):
    u, v = bundle_03.fields["u"], bundle_03.fields["v"]
    tri = upward_triangles(bundle_03.n)[0]
    t1, t2, t3 = lax.triangle_edge_triples(u, v, tri)
    # rescale keeps f*g*h = 1 but breaks the product identity
    bad = EdgeFieldTriple(f=t2.f * 1.1, g=t2.g / 1.1, h=t2.h)
    assert lax.check_zero_curvature(t1, bad, t3) > 1e-3


# -- transport -----------------------------------------------------------------


def _path(*pts):
    return [LatticePoint(*p) for p in pts]


def test_transport_is_path_independent(bundle_03):
    u, v = bundle_03.fields["u"], bundle_03.fields["v"]
    path_a = _path((0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3))
    path_b = _path((0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3), (3, 3))
    psi_a = lax.transport(u, v, path_a)
    psi_b = lax.transport(u, v, path_b)
    assert psi_a.denom_power == psi_b.denom_power == 0
    assert psi_a.poly.shape == psi_b.poly.shape
    assert np.allclose(psi_a.poly, psi_b.poly, atol=1e-10)


def test_transport_backtrack_is_identity(bundle_03):
    u, v = bundle_03.fields["u"], bundle_03.fields["v"]
    psi = lax.transport(u, v, _path((0, 0), (1, 0), (0, 0)))
    assert psi.denom_power == 1
    for mu in (0j, 0.4 - 0.3j):
        assert np.allclose(psi.at(mu), np.eye(3), atol=1e-12)


def test_hexagon_loop_is_identity(bundle_03):
    u, v = bundle_03.fields["u"], bundle_03.fields["v"]
    star = hex_star(LatticePoint(1, 1)).vertices
    loop = list(star) + [star[0]]
    assert lax.loop_winding(loop) == 0
    psi = lax.transport(u, v, loop)
    assert psi.denom_power == 3
    for mu in (0j, 0.5, -0.3 + 0.2j):
        assert np.allclose(psi.at(mu), np.eye(3), atol=1e-11)


def test_transport_rejects_non_steps(bundle_03):
    u, v = bundle_03.fields["u"], bundle_03.fields["v"]
    with pytest.raises(DisconnectedPath):
        lax.transport(u, v, _path((0, 0), (2, 0)))


def test_loop_winding_unit_cases():
    triangle = _path((0, 0), (1, 0), (1, 1), (0, 0))
    assert lax.loop_winding(triangle) == 1
    assert lax.loop_winding(triangle[::-1]) == -1
    with pytest.raises(ValueError):
        lax.loop_winding(_path((0, 0), (1, 0)))
    with pytest.raises(DisconnectedPath):
        lax.loop_winding(_path((0, 0), (2, 2), (0, 0)))


# -- field recovery from the spectral coefficient ------------------------------


def test_sym_extract_round_trip(bundle_03):
    u, v, w = (bundle_03.fields[tag] for tag in "uvw")
    window = sector_points(6)
    wave = lax.transport_along(u, v, (0, 0), window, gauge="lambda")
    assert all(LatticePoint(*p) in wave for p in window)
    su, sv, sw = lax.sym_extract(wave)
    base = LatticePoint(0, 0)
    worst = 0.0
    for p in su.points():
        worst = max(worst, abs(su[p] - (u[p] - u[base])),
                    abs(sv[p] - (v[p] - v[base])),
                    abs(sw[p] - (w[p] - w[base])))
    assert worst < 1e-10


def test_sym_extract_rejects_wrong_shape():
    bad = np.zeros((3, 3, 2), dtype=complex)
    bad[:, :, 0] = np.eye(3)
    bad[1, 0, 1] = 0.3
    values = {LatticePoint(0, 0): lax.WaveFunction(lax.poly_identity(), 0, "lambda"),
              LatticePoint(1, 0): lax.WaveFunction(bad, 0, "lambda")}
    with pytest.raises(ShapeViolation):
        lax.sym_extract(values)


def test_sym_extract_rejects_mu_gauge():
    values = {LatticePoint(0, 0): lax.WaveFunction(lax.poly_identity(), 0, "mu")}
    with pytest.raises(ValueError):
        lax.sym_extract(values)


# -- quadratic forms -----------------------------------------------------------


def test_quadratic_forms_telescope(bundle_03):
    u, v, w = (bundle_03.fields[tag] for tag in "uvw")
    quad = lax.quadratic_forms(u, v, w)
    base = LatticePoint(0, 0)
    scale = max(u.finite_scale() * v.finite_scale(), 1.0)
    pairs = ((quad.a, quad.ap, u, v), (quad.b, quad.bp, v, w),
             (quad.c, quad.cp, w, u))
    for plain, primed, x, y in pairs:
        for p in plain.points():
            expect = x[p] * y[p] - x[base] * y[base]
            assert abs(plain[p] + primed[p] - expect) < 1e-10 * scale


def test_quadratic_forms_detect_path_dependence(bundle_03):
    u, v = bundle_03.fields["u"], bundle_03.fields["v"]
    w = VertexField("w")
    for p in bundle_03.fields["w"].points():
        w[p] = bundle_03.fields["w"][p]
    w[LatticePoint(2, 2)] += 0.5
    with pytest.raises(PathDependent):
        lax.quadratic_forms(u, v, w)


# -- square extension ----------------------------------------------------------


def _square_edges(rng):
    u0, u1, u2, v0, v1, v2 = rng.normal(size=6) + 1j * rng.normal(size=6)
    u3, v3 = fourth_point(u0, u1, u2, v0, v1, v2)
    u, v = VertexField("u"), VertexField("v")
    corners = ((0, 0, u0, v0), (1, 0, u1, v1), (0, 1, u2, v2), (1, 1, u3, v3))
    for k, l, uval, vval in corners:
        u[(k, l)] = uval
        v[(k, l)] = vval
    P = LatticePoint
    l1 = edge_fields(u, v, OrientedEdge(P(0, 0), P(1, 0)))
    l2 = edge_fields(u, v, OrientedEdge(P(1, 0), P(1, 1)))
    l3 = edge_fields(u, v, OrientedEdge(P(0, 0), P(0, 1)))
    l4 = edge_fields(u, v, OrientedEdge(P(0, 1), P(1, 1)))
    return (u0, v0, u3, v3), (l1, l2, l3, l4)


def test_square_extension_recovers_diagonal():
    rng = np.random.default_rng(21)
    for _ in range(20):
        (u0, v0, u3, v3), (l1, l2, l3, l4) = _square_edges(rng)
        l0 = lax.square_extension(l2, l1, l4, l3)
        assert abs(l0.f - (u0 - u3)) < 1e-9 * max(1.0, abs(l0.f))
        assert abs(l0.g - (v0 - v3)) < 1e-9 * max(1.0, abs(l0.g))
        assert abs(l0.f * l0.g * l0.h - 1.0) < 1e-12
        for mu in (0j, 0.3 + 0.1j):
            prod = (lax.transition_matrix(l0, "mu", mu)
                    @ lax.transition_matrix(l2, "mu", mu)
                    @ lax.transition_matrix(l1, "mu", mu))
            assert np.abs(prod - (1 + mu) * np.eye(3)).max() < 1e-10


def test_square_extension_rejects_non_flat():
    rng = np.random.default_rng(22)
    _, (l1, l2, l3, l4) = _square_edges(rng)
    bad = EdgeFieldTriple(f=l4.f * 1.05, g=l4.g / 1.05, h=l4.h)
    with pytest.raises(NotFlat):
        lax.square_extension(l2, l1, bad, l3)
