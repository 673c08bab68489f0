"""Triangular lattice combinatorics and its planar embedding.

Points are integer triples (k, l, m) embedded at k + l*omega + m*omega**2
with omega = exp(2*pi*i/3).  Two triples describe the same point iff they
differ by a multiple of (1, 1, 1); the canonical representative has m = 0.
The six lattice directions are the powers of eps = exp(i*pi/3) = 1 + omega.
"""
import cmath
from dataclasses import dataclass
from typing import NamedTuple

OMEGA = cmath.exp(2j * cmath.pi / 3)
EPS = 1 + OMEGA  # exp(i*pi/3); note eps = -omega**2, eps**2 = omega, eps**3 = -1

# eps**t as (dk, dl) offsets, t = 0..5
DIRECTIONS = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))
# positively oriented steps: +1, +omega, +omega**2 = (1,0), (0,1), (-1,-1)
POSITIVE_STEPS = ((1, 0), (0, 1), (-1, -1))


class LatticePoint(NamedTuple):
    k: int
    l: int
    m: int = 0


class OrientedEdge(NamedTuple):
    tail: LatticePoint
    head: LatticePoint


def canonicalize(k: int, l: int, m: int = 0) -> LatticePoint:
    """Representative with m = 0: subtract (m, m, m)."""
    return LatticePoint(k - m, l - m, 0)


def embed(p) -> complex:
    """Planar position k + l*omega + m*omega**2."""
    k, l, m = p
    return k + l * OMEGA + m * OMEGA * OMEGA


def sublattice_index(p) -> int:
    """(k + l + m) mod 3; p is a hexagon center of the family with this index."""
    k, l, m = p
    return (k + l + m) % 3


def shift(p, dk: int, dl: int) -> LatticePoint:
    return LatticePoint(p[0] + dk, p[1] + dl, 0)


def step_direction(tail, head):
    """Direction index t with head - tail = eps**t, or None if not neighbors."""
    d = (head[0] - tail[0] - (head[2] - tail[2]),
         head[1] - tail[1] - (head[2] - tail[2]))
    try:
        return DIRECTIONS.index(d)
    except ValueError:
        return None


def is_positive(e: OrientedEdge) -> bool:
    """Positively oriented edges point along +1, +omega or +omega**2."""
    return step_direction(e.tail, e.head) in (0, 2, 4)


def neighbors(p):
    """The six lattice neighbors, counterclockwise from p + 1."""
    return tuple(shift(p, dk, dl) for dk, dl in DIRECTIONS)


@dataclass(frozen=True)
class HexStar:
    """An elementary hexagon: center plus its six vertices counterclockwise."""
    center: LatticePoint
    vertices: tuple


def hex_star(center) -> HexStar:
    """Six neighbors counterclockwise starting at center + eps."""
    c = LatticePoint(*center) if not isinstance(center, LatticePoint) else center
    order = (1, 2, 3, 4, 5, 0)  # eps**1 .. eps**6
    verts = tuple(shift(c, *DIRECTIONS[t]) for t in order)
    return HexStar(center=c, vertices=verts)


def star_edges(p):
    """The six edges at a vertex, indexed by direction t = 0..5.

    Even t: outgoing edge (p, p + eps**t); odd t: incoming edge
    (p + eps**t, p).  With this labelling every edge in the star is
    positively oriented.
    """
    out = []
    for t, (dk, dl) in enumerate(DIRECTIONS):
        q = shift(p, dk, dl)
        out.append(OrientedEdge(p, q) if t % 2 == 0 else OrientedEdge(q, p))
    return tuple(out)


def sector_points(n: int):
    """All k + l*omega with 0 <= k, l <= n ((n+1)**2 points)."""
    return [LatticePoint(k, l, 0) for k in range(n + 1) for l in range(n + 1)]


def upward_triangles(n: int):
    """Positively traversed triangles (p, p+1, p+1+omega) inside the sector."""
    tris = []
    for k in range(n):
        for l in range(n):
            p = LatticePoint(k, l, 0)
            tris.append((p, shift(p, 1, 0), shift(p, 1, 1)))
    return tris


def downward_triangles(n: int):
    """Positively traversed triangles (p, p+1+omega, p+omega) inside the sector."""
    tris = []
    for k in range(n):
        for l in range(n):
            p = LatticePoint(k, l, 0)
            tris.append((p, shift(p, 1, 1), shift(p, 0, 1)))
    return tris
