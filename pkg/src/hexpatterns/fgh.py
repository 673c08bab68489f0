"""Edge-field system on the triangular lattice.

A pair of vertex fields (u, v) is a solution when on every positively
traversed elementary triangle (z1, z2, z3)

    (u2 - u1) / (u3 - u2)  =  (v3 - v2) / (v1 - v3),

equivalently when the third field w integrating h = 1/(f*g) over edges is
well defined (f and g are the u- and v-differences along an edge).  Solutions
restrict to multi-ratio -1 lattices on all three fields.
"""
import collections
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (DegenerateTriangle, InconsistentAroundVertex,
                     IndeterminateRatio, PathDependent, PropagationError,
                     SplitPointsCoincide, ZeroEdge)
from .geometry import INFINITY, TAU, is_infinite, multi_ratio
from .lattice import (DIRECTIONS, LatticePoint, OrientedEdge, hex_star,
                      is_positive, sector_points, shift, step_direction)


@dataclass
class VertexField:
    """Map from lattice points to extended-complex values."""
    tag: str
    values: dict = field(default_factory=dict)

    def __getitem__(self, p):
        return self.values[LatticePoint(*p)]

    def __setitem__(self, p, val):
        self.values[LatticePoint(*p)] = val

    def __contains__(self, p):
        return LatticePoint(*p) in self.values

    def get(self, p, default=None):
        return self.values.get(LatticePoint(*p), default)

    def items(self):
        return self.values.items()

    def points(self):
        return self.values.keys()

    def finite_scale(self) -> float:
        vals = [abs(z) for z in self.values.values() if not is_infinite(z)]
        return max(vals) if vals else 1.0


@dataclass(frozen=True)
class EdgeFieldTriple:
    f: complex
    g: complex
    h: complex

    @classmethod
    def from_fg(cls, f: complex, g: complex) -> "EdgeFieldTriple":
        return cls(f=f, g=g, h=1.0 / (f * g))


def edge_fields(u: VertexField, v: VertexField, e: OrientedEdge) -> EdgeFieldTriple:
    """(f, g, h) on a positively oriented edge; f*g*h = 1 by construction."""
    if not is_positive(e):
        raise ValueError("edge must be positively oriented")
    f = u[e.head] - u[e.tail]
    g = v[e.head] - v[e.tail]
    if f == 0 or g == 0:
        raise ZeroEdge(f"vanishing difference on edge {tuple(e.tail)}->{tuple(e.head)}")
    return EdgeFieldTriple.from_fg(f, g)


def triangle_residual(u: VertexField, v: VertexField, tri) -> complex:
    """(u2-u1)/(u3-u2) - (v3-v2)/(v1-v3) on a positively traversed triangle."""
    z1, z2, z3 = tri
    du_den = u[z3] - u[z2]
    dv_den = v[z1] - v[z3]
    if du_den == 0 or dv_den == 0:
        raise DegenerateTriangle(f"zero denominator on triangle {tuple(z1)}")
    return (u[z2] - u[z1]) / du_den - (v[z3] - v[z2]) / dv_den


def fourth_point(u0, u1, u2, v0, v1, v2):
    """Values at the far rhombus corner from the three near corners.

    Corners: z0, its two split neighbors z1, z2, and z3 opposite z0.  The u
    value follows from the two triangle relations; v3 from back-substitution.
    An infinite v3 is returned as INFINITY, not an error.
    """
    if v1 == v2:
        raise SplitPointsCoincide("v1 = v2")
    u3 = u0 + (u1 - u0) * (v1 - v0) / (v1 - v2) + (u2 - u0) * (v2 - v0) / (v2 - v1)
    if u0 == u3:
        return u3, INFINITY
    v3 = v1 + (v1 - v0) * (u1 - u0) / (u0 - u3)
    return u3, v3


def fourth_point_reverse(u1, u2, u3, v1, v2, v3):
    """Inverse of fourth_point: recover the near corner from the other three."""
    if u1 == u2:
        raise SplitPointsCoincide("u1 = u2")
    r1 = (v3 - v1) * (u3 - u1)
    r2 = (v3 - v2) * (u3 - u2)
    v0 = v3 + (r1 - r2) / (u1 - u2)
    if v0 == v3:
        return INFINITY, v0
    u0 = u1 - r1 / (v0 - v3)
    return u0, v0


def solve_sector(u_boundary, v_boundary, n: int):
    """Fill the sector 0 <= k, l <= n from values on the two semiaxes.

    Boundary maps must define (k, 0) and (0, l) for 0 <= k, l <= n.  Interior
    cells are filled along anti-diagonals k + l = const: each cell depends
    only on its south, west and south-west neighbors.
    """
    U = VertexField("u")
    V = VertexField("v")
    for k in range(n + 1):
        U[(k, 0)] = u_boundary[(k, 0)]
        V[(k, 0)] = v_boundary[(k, 0)]
        U[(0, k)] = u_boundary[(0, k)]
        V[(0, k)] = v_boundary[(0, k)]
    for s in range(0, 2 * n - 1):
        for k in range(max(0, s - n + 1), min(s, n - 1) + 1):
            l = s - k
            cell = (k + 1, l + 1)
            if cell in U:
                continue
            try:
                u3, v3 = fourth_point(U[(k, l)], U[(k + 1, l)], U[(k, l + 1)],
                                      V[(k, l)], V[(k + 1, l)], V[(k, l + 1)])
            except SplitPointsCoincide as exc:
                raise PropagationError(f"fourth point failed at cell {cell}: {exc}",
                                       cell=cell) from exc
            U[cell] = u3
            V[cell] = v3
    return U, V


def solve_from_zigzag(u_zigzag, v_zigzag, kmin: int, kmax: int, smin: int, smax: int):
    """Fill the window kmin..kmax (in k) and smin..smax (in k+l) from zigzag data.

    Input maps must define every point of the window with k + l in {0, 1}.
    Propagation runs forward (growing k+l, by fourth_point) and backward
    (shrinking k+l, by fourth_point_reverse).
    """
    U = VertexField("u")
    V = VertexField("v")
    for (k, l), val in u_zigzag.items():
        U[(k, l)] = val
    for (k, l), val in v_zigzag.items():
        V[(k, l)] = val

    for sigma in range(2, smax + 1):
        for k in range(kmin, kmax + 1):
            cell = (k, sigma - k)
            if cell in U:
                continue
            near = ((k - 1, sigma - k - 1), (k, sigma - k - 1), (k - 1, sigma - k))
            if not all(p in U for p in near):
                continue
            try:
                u3, v3 = fourth_point(U[near[0]], U[near[1]], U[near[2]],
                                      V[near[0]], V[near[1]], V[near[2]])
            except SplitPointsCoincide as exc:
                raise PropagationError(f"forward fill failed at {cell}", cell=cell) from exc
            U[cell] = u3
            V[cell] = v3
    for sigma in range(-1, smin - 1, -1):
        for k in range(kmin, kmax + 1):
            cell = (k, sigma - k)
            if cell in U:
                continue
            far = ((k + 1, sigma - k), (k, sigma - k + 1), (k + 1, sigma - k + 1))
            if not all(p in U for p in far):
                continue
            try:
                u0, v0 = fourth_point_reverse(U[far[0]], U[far[1]], U[far[2]],
                                              V[far[0]], V[far[1]], V[far[2]])
            except SplitPointsCoincide as exc:
                raise PropagationError(f"backward fill failed at {cell}", cell=cell) from exc
            U[cell] = u0
            V[cell] = v0
    return U, V


_TREE_STEPS = ((1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1))


def _edge_h(u, v, p, q, positive):
    """h = 1/(f*g) across the positively oriented version of edge p-q."""
    a, b = (p, q) if positive else (q, p)
    if any(is_infinite(x) for x in (u[a], u[b], v[a], v[b])):
        return None
    f = u[b] - u[a]
    g = v[b] - v[a]
    if f == 0 or g == 0:
        return None
    return 1.0 / (f * g)


def third_field(u: VertexField, v: VertexField, anchor=None, anchor_value=0j,
                tau: float = TAU, seeds=None) -> VertexField:
    """Integrate h = 1/(f*g) over edges, starting from seed values.

    Either a single anchor or a seeds map may be given.  Raises
    PathDependent when the increments fail to close around a triangle or
    when integration reaches a seed with a conflicting value.  Points
    unreachable through non-degenerate finite edges get INFINITY.
    """
    if seeds is None:
        if anchor is None:
            raise ValueError("need an anchor or a seeds map")
        seeds = {anchor: anchor_value}
    w = VertexField("w")
    for p, val in seeds.items():
        w[LatticePoint(*p)] = val
    queue = collections.deque(w.points())
    domain = set(u.points()) & set(v.points())
    seen = set(w.points())
    seed_scale = max((abs(z) for z in w.values.values()
                      if not is_infinite(z)), default=1.0)
    while queue:
        p = queue.popleft()
        for dk, dl in _TREE_STEPS:
            q = shift(p, dk, dl)
            if q not in domain:
                continue
            positive = (dk, dl) in ((1, 0), (0, 1), (-1, -1))
            h = _edge_h(u, v, p, q, positive)
            if h is None:
                continue
            val = w[p] + (h if positive else -h)
            if q in seen:
                if is_infinite(w[q]) or \
                        abs(val - w[q]) > tau * max(1.0, seed_scale, abs(val)):
                    raise PathDependent(
                        f"h-integration conflicts with value at {tuple(q)}")
                continue
            w[q] = val
            seen.add(q)
            queue.append(q)
    # closure audit on elementary triangles fully inside the domain
    scale = max(u.finite_scale(), v.finite_scale())
    hscale = max((abs(z) for z in w.values.values() if not is_infinite(z)), default=1.0)
    for p in list(seen):
        for corners in (((0, 0), (1, 0), (1, 1)), ((0, 0), (0, 1), (1, 1))):
            tri = [shift(p, dk, dl) for dk, dl in corners]
            if not all(t in seen for t in tri):
                continue
            hs = []
            for i in range(3):
                a, b = tri[i], tri[(i + 1) % 3]
                positive = step_direction(a, b) in (0, 2, 4)
                h = _edge_h(u, v, a, b, positive)
                if h is None:
                    hs = None
                    break
                hs.append(h if positive else -h)
            if hs is None:
                continue
            if abs(sum(hs)) > tau * max(1.0, hscale, scale):
                raise PathDependent(f"h-increments do not close around {tuple(tri[0])}")
    for p in domain:
        if p not in seen:
            w[p] = INFINITY
    return w


def companion_field(u: VertexField, seeds, tau: float = TAU) -> VertexField:
    """Propagate the partner field from u and seed values at two neighbors.

    Requires u to define a multi-ratio -1 lattice; disagreement between the
    two triangle routes into a cell signals that and raises
    InconsistentAroundVertex.
    """
    v = VertexField("v")
    for p, val in seeds.items():
        v[p] = val
    scale = u.finite_scale()
    domain = set(u.points())
    queue = collections.deque(v.points())
    pending = True
    while pending:
        pending = False
        for p in list(domain):
            if p in v:
                continue
            val = _solve_companion_at(u, v, p, tau, scale)
            if val is not None:
                v[p] = val
                pending = True
    return v


def _companion_from_triangle(u, v, tri, unknown_idx, tau, scale):
    """Solve the triangle relation for the single unknown v value."""
    z1, z2, z3 = tri
    try:
        r = (u[z2] - u[z1]) / (u[z3] - u[z2])
    except ZeroDivisionError:
        return None
    # (v3 - v2) = r * (v1 - v3)
    if unknown_idx == 2:
        den = 1 + r
        if den == 0:
            return None
        return (v[z2] + r * v[z1]) / den
    if unknown_idx == 0:
        if r == 0:
            return None
        return (v[z3] - v[z2]) / r + v[z3]
    return v[z3] - r * (v[z1] - v[z3])


def _solve_companion_at(u, v, p, tau, scale):
    candidates = []
    for corners in (((0, 0), (1, 0), (1, 1)), ((0, 0), (0, 1), (1, 1))):
        for base_dk, base_dl in ((0, 0), (-1, 0), (0, -1), (-1, -1), (1, 1), (1, 0), (0, 1)):
            tri = [shift(p, dk + base_dk, dl + base_dl) for dk, dl in corners]
            if p not in tri:
                continue
            if not all(t in u for t in tri):
                continue
            idx = tri.index(LatticePoint(*p))
            known = [t for i, t in enumerate(tri) if i != idx]
            if not all(t in v for t in known):
                continue
            val = _companion_from_triangle(u, v, tri, idx, tau, scale)
            if val is not None:
                candidates.append(val)
    if not candidates:
        return None
    vscale = max((abs(c) for c in candidates), default=1.0)
    for c in candidates[1:]:
        if abs(c - candidates[0]) > tau * max(1.0, vscale):
            raise InconsistentAroundVertex(
                f"triangle routes disagree at {tuple(p)}: spread "
                f"{abs(c - candidates[0]):.3e}")
    return candidates[0]


@dataclass
class MRReport:
    """Worst multi-ratio deviation per center sublattice, with exclusions."""
    max_deviation: float
    per_sublattice: dict
    worst_cell: tuple
    excluded: list


def verify_mr(fld: VertexField, centers=None, tau: float = TAU) -> MRReport:
    """Max |M + 1| over elementary hexagons of all three sublattices.

    Hexagons with an infinite or repeated-adjacent value are excluded and
    listed; centers defaults to every point whose six neighbors carry values.
    """
    from . import kernels

    if centers is None:
        centers = [p for p in fld.points()]
    worst = 0.0
    worst_cell = None
    per = {0: 0.0, 1: 0.0, 2: 0.0}
    excluded = []
    batch_vals = []
    batch_meta = []
    for c in centers:
        star = hex_star(c)
        if not all(p in fld for p in star.vertices):
            continue
        vals = [fld[p] for p in star.vertices]
        j = (c[0] + c[1] + c[2]) % 3 if len(c) == 3 else (c[0] + c[1]) % 3
        if any(is_infinite(z) for z in vals):
            try:
                m = multi_ratio(vals)
            except IndeterminateRatio:
                excluded.append(tuple(c))
                continue
            if is_infinite(m):
                excluded.append(tuple(c))
                continue
            dev = abs(m + 1)
            per[j] = max(per[j], dev)
            if dev > worst:
                worst, worst_cell = dev, tuple(c)
            continue
        batch_vals.append(vals)
        batch_meta.append((tuple(c), j))
    if batch_vals:
        devs = kernels.hexagon_mr_deviations(np.array(batch_vals, dtype=complex))
        for (cell, j), dev in zip(batch_meta, devs):
            if not math.isfinite(dev):
                excluded.append(cell)
                continue
            per[j] = max(per[j], float(dev))
            if dev > worst:
                worst, worst_cell = float(dev), cell
    return MRReport(max_deviation=worst, per_sublattice=per,
                    worst_cell=worst_cell, excluded=excluded)
