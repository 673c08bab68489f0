"""Lattice combinatorics and the planar embedding."""
import cmath

import pytest
from hypothesis import given, strategies as st

from hexpatterns.lattice import (DIRECTIONS, EPS, OMEGA, LatticePoint,
                                 OrientedEdge, canonicalize, downward_triangles,
                                 embed, hex_star, is_positive, neighbors,
                                 sector_points, shift, star_edges,
                                 step_direction, sublattice_index,
                                 upward_triangles)

ints = st.integers(min_value=-50, max_value=50)


def test_omega_is_primitive_cube_root():
    assert abs(OMEGA ** 3 - 1) < 1e-15
    assert abs(OMEGA - 1) > 1
    assert abs(EPS - cmath.exp(1j * cmath.pi / 3)) < 1e-15


def test_directions_embed_as_sixth_roots():
    origin = LatticePoint(0, 0)
    for t, (dk, dl) in enumerate(DIRECTIONS):
        q = shift(origin, dk, dl)
        assert abs(embed(q) - EPS ** t) < 1e-14


@given(ints, ints, ints)
def test_canonicalize_removes_diagonal(k, l, m):
    p = canonicalize(k, l, m)
    assert p.m == 0
    assert abs(embed(p) - embed((k, l, m))) < 1e-12 * (1 + abs(k) + abs(l) + abs(m))


@given(ints, ints, ints, st.integers(min_value=-5, max_value=5))
def test_embed_invariant_mod_diagonal(k, l, m, d):
    scale = 1 + abs(k) + abs(l) + abs(m) + abs(d)
    assert abs(embed((k + d, l + d, m + d)) - embed((k, l, m))) < 1e-12 * scale


@given(ints, ints)
def test_positive_steps_raise_sublattice_index(k, l):
    p = LatticePoint(k, l)
    for dk, dl in ((1, 0), (0, 1), (-1, -1)):
        q = shift(p, dk, dl)
        assert sublattice_index(q) == (sublattice_index(p) + 1) % 3


def test_neighbors_at_unit_distance():
    p = LatticePoint(3, -2)
    for q in neighbors(p):
        assert abs(abs(embed(q) - embed(p)) - 1.0) < 1e-14


def test_hex_star_counterclockwise_from_eps():
    star = hex_star((0, 0))
    assert len(star.vertices) == 6
    # first vertex at eps, then one sixth of a turn each
    for t, q in enumerate(star.vertices):
        assert abs(embed(q) - EPS ** (t + 1)) < 1e-14


def test_star_edges_all_positive_and_indexed_by_direction():
    p = LatticePoint(2, 5)
    edges = star_edges(p)
    assert len(edges) == 6
    for t, e in enumerate(edges):
        assert is_positive(e)
        endpoint = shift(p, *DIRECTIONS[t])
        assert {e.tail, e.head} == {p, endpoint}
        # even directions leave p, odd ones enter it
        assert (e.tail == p) == (t % 2 == 0)


@given(ints, ints)
def test_step_direction_roundtrip(k, l):
    p = LatticePoint(k, l)
    for t, (dk, dl) in enumerate(DIRECTIONS):
        assert step_direction(p, shift(p, dk, dl)) == t
    assert step_direction(p, shift(p, 2, 0)) is None


def test_is_positive_matches_direction_parity():
    p = LatticePoint(0, 0)
    for t, (dk, dl) in enumerate(DIRECTIONS):
        e = OrientedEdge(p, shift(p, dk, dl))
        assert is_positive(e) == (t % 2 == 0)


def test_sector_points_count_and_range():
    pts = sector_points(4)
    assert len(pts) == 25
    assert all(0 <= p.k <= 4 and 0 <= p.l <= 4 and p.m == 0 for p in pts)


@pytest.mark.parametrize("maker", [upward_triangles, downward_triangles])
def test_triangles_counterclockwise(maker):
    tris = maker(3)
    assert len(tris) == 9
    for tri in tris:
        a, b, c = (embed(p) for p in tri)
        cross = ((b - a).conjugate() * (c - b)).imag
        assert cross > 0.5


def test_triangles_tile_the_sector():
    # each interior edge is shared by one up and one down triangle
    n = 3
    edge_count = {}
    for tri in upward_triangles(n) + downward_triangles(n):
        for i in range(3):
            e = frozenset((tri[i], tri[(i + 1) % 3]))
            edge_count[e] = edge_count.get(e, 0) + 1
    assert set(edge_count.values()) <= {1, 2}
    assert sum(1 for v in edge_count.values() if v == 2) > 0
