"""Circle patterns from constrained lattice solutions.

A multi-ratio -1 field restricted to a hexagonal sublattice sends the six
vertices of every elementary hexagon to six concyclic points; the value at
the hexagon center is the circle's center.  This module generates the
power-law patterns (u, v, w discretizing z**(3*alpha), z**(3*alpha) and
z**(3*gamma)) plus their two degenerate rescalings, extends patterns by
reflections of a chosen point, propagates rows of circles, assembles
rational-exponent patterns over the full plane, and verifies the results.
"""
import cmath
import collections
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np

from .errors import (CircleConstructionFailure, CircularityViolation,
                     IndeterminateRatio, PropagationError, SeamMismatch,
                     SplitPointsCoincide)
from .fgh import (MRReport, VertexField, fourth_point, third_field,
                  verify_mr)
from .geometry import (INFINITY, TAU, Circle, Line, circle_through,
                       fit_circle_with_center, is_infinite, multi_ratio,
                       reflect_in_circle, solve_sixth_point, tol_for)
from .isomonodromy import (ConstraintParams, axis_solve,
                           closed_form_axis_limits)
from .lattice import (DIRECTIONS, LatticePoint, hex_star, sector_points,
                      shift, sublattice_index)

# which sublattice's points are the circle centers of each field
CIRCLE_CENTER_SUBLATTICE = {"u": 1, "v": 2, "w": 0}

# margin keeping the generic exponent away from its degenerate limits
EPS_ALPHA = 1e-6

# dead zone for sign-based orientation and overlap predicates
ETA = 1e-12


@dataclass
class CirclePattern:
    """Circles of one field over one center sublattice, plus vertex values."""
    tag: str
    sublattice: int
    n: int
    circles: dict                  # center LatticePoint -> Circle
    values: VertexField            # field restricted to non-center points
    deviations: dict               # center -> fit deviation
    excluded: list                 # centers with infinite or missing data
    alpha: float = 0.0
    gamma: float = 0.0

    def worst_deviation(self):
        if not self.deviations:
            return 0.0, None
        center = max(self.deviations, key=self.deviations.get)
        return self.deviations[center], tuple(center)


@dataclass
class FieldReport:
    """Verification results for a single field."""
    tag: str
    mr_max: float = 0.0
    mr_per_sublattice: dict = dataclass_field(default_factory=dict)
    mr_worst_cell: tuple = None
    mr_excluded: list = dataclass_field(default_factory=list)
    circularity_max: float = 0.0
    circularity_worst_cell: tuple = None
    circle_count: int = 0
    circles_excluded: list = dataclass_field(default_factory=list)
    immersed: bool = True
    immersion_bad_pairs: int = 0
    immersion_inconclusive: int = 0
    embedded: bool = True
    overlap_pairs: int = 0
    overlap_inconclusive: int = 0


@dataclass
class VerificationReport:
    """Per-field verification reports with an aggregate pass predicate."""
    fields: dict                   # tag -> FieldReport

    def passed(self, tol: float = 1e-8) -> bool:
        for rep in self.fields.values():
            if rep.mr_max >= tol or rep.circularity_max >= tol:
                return False
            if not rep.immersed or not rep.embedded:
                return False
        return True


@dataclass
class PatternBundle:
    """Fields and circle patterns of one generated configuration."""
    kind: str
    alpha: float
    beta: float
    gamma: float
    theta: float
    n: int
    fields: dict                   # tag -> VertexField
    patterns: dict                 # tag -> CirclePattern
    report: VerificationReport = None


def build_circle_pattern(fld: VertexField, tag: str, n: int,
                         alpha: float = 0.0, gamma: float = 0.0,
                         tol: float = 1e-8) -> CirclePattern:
    """Fit circles at every full interior hexagon of the tag's sublattice.

    Centers whose star carries an infinite value are excluded and listed.
    Raises CircularityViolation when the worst fit deviation exceeds the
    scale-relative tolerance.
    """
    j = CIRCLE_CENTER_SUBLATTICE[tag]
    circles = {}
    deviations = {}
    excluded = []
    for p in sector_points(n):
        if sublattice_index(p) != j:
            continue
        star = hex_star(p)
        if not all(q in fld for q in star.vertices) or p not in fld:
            continue
        spokes = [fld[q] for q in star.vertices]
        center = fld[p]
        if is_infinite(center) or any(is_infinite(z) for z in spokes):
            excluded.append(tuple(p))
            continue
        radius, dev = fit_circle_with_center(spokes, center)
        circles[LatticePoint(*p)] = Circle(center=center, radius=radius)
        deviations[LatticePoint(*p)] = dev
    values = VertexField(tag)
    for p, z in fld.items():
        if sublattice_index(p) != j:
            values[p] = z
    pattern = CirclePattern(tag=tag, sublattice=j, n=n, circles=circles,
                            values=values, deviations=deviations,
                            excluded=excluded, alpha=alpha, gamma=gamma)
    if deviations:
        worst, cell = pattern.worst_deviation()
        scale = max(abs(c.center) + c.radius for c in circles.values())
        if worst > tol_for(scale, tol):
            raise CircularityViolation(
                f"{tag}-circle at {cell} deviates by {worst:.3e}")
    return pattern


def generate_zalpha(alpha: float, n: int, theta: float = None,
                    tol: float = 1e-8) -> PatternBundle:
    """Patterns of the power-law family from four seed values.

    Seeds u(1) = v(1) = 1 and u(omega) = v(omega) = exp(i*theta) with the
    matching angle theta = 2*pi*alpha; passing a different theta produces
    the deformed (generally non-immersed) configuration.
    """
    if not (EPS_ALPHA < alpha < 0.5 - EPS_ALPHA):
        raise ValueError(f"alpha must lie in ({EPS_ALPHA}, {0.5 - EPS_ALPHA})")
    if theta is None:
        theta = 2 * math.pi * alpha
    gamma = 1.0 - 2.0 * alpha
    params = ConstraintParams(alpha=alpha, beta=alpha)
    rot = cmath.exp(1j * theta)
    from .isomonodromy import solve_constrained_sector
    u, v, w = solve_constrained_sector(params, 1.0 + 0j, 1.0 + 0j, rot, rot, n)
    fields = {"u": u, "v": v, "w": w}
    patterns = {
        tag: build_circle_pattern(fields[tag], tag, n, alpha=alpha,
                                  gamma=gamma, tol=tol)
        for tag in ("u", "v", "w")
    }
    return PatternBundle(kind="zalpha", alpha=alpha, beta=alpha, gamma=gamma,
                         theta=theta, n=n, fields=fields, patterns=patterns)


# -- degenerate exponents ------------------------------------------------------


def _limit_tables(case: str):
    """Near-origin values that the split-point propagation cannot reach.

    Keys are (k, l) pairs; INFINITY entries mark genuine poles of the
    rescaled fields.
    """
    ipi = 1j * math.pi
    if case == "z32log":
        table_u = {(1, 1): 0j}
        table_v = {(1, 1): 1j / math.pi}
        seeds_w = {(1, 0): 0j}
        return table_u, table_v, seeds_w
    table_u = {(1, 1): ipi, (2, 1): ipi, (1, 2): ipi, (2, 2): 1 + ipi}
    table_v = {(1, 1): INFINITY, (2, 1): 0j, (1, 2): 2 * ipi, (2, 2): ipi}
    seeds_w = {(0, 0): 0j, (1, 0): 0j, (0, 1): 0j, (2, 0): 0j, (0, 2): 0j,
               (1, 1): 0j, (2, 2): 0j,
               (2, 1): 1j / math.pi, (1, 2): -1j / math.pi}
    return table_u, table_v, seeds_w


def _fill_limit_sector(U: VertexField, V: VertexField, n: int,
                       tau: float = TAU):
    """Anti-diagonal split-point sweep tolerating preset and infinite cells.

    A cell whose inputs contain an infinite value, or whose split points
    coincide, must have its output preset (from the near-origin tables);
    otherwise PropagationError.  Computable preset cells are verified.
    """
    scale = max(U.finite_scale(), V.finite_scale())
    for s in range(0, 2 * n - 1):
        for k in range(max(0, s - n + 1), min(s, n - 1) + 1):
            l = s - k
            cell = (k + 1, l + 1)
            near = ((k, l), (k + 1, l), (k, l + 1))
            vals = [U[p] for p in near] + [V[p] for p in near]
            preset = cell in U and cell in V
            if any(is_infinite(z) for z in vals):
                if not preset:
                    raise PropagationError(
                        f"infinite input and no preset value at cell {cell}",
                        cell=cell)
                continue
            try:
                u3, v3 = fourth_point(vals[0], vals[1], vals[2],
                                      vals[3], vals[4], vals[5])
            except SplitPointsCoincide as exc:
                if not preset:
                    raise PropagationError(
                        f"fourth point failed at cell {cell}: {exc}",
                        cell=cell) from exc
                continue
            if preset:
                du = 0.0 if is_infinite(U[cell]) else abs(u3 - U[cell])
                dv = 0.0 if is_infinite(V[cell]) else abs(v3 - V[cell])
                if max(du, dv) > tol_for(scale, tau):
                    raise PropagationError(
                        f"preset value at {cell} disagrees with propagation",
                        cell=cell)
                continue
            U[cell] = u3
            V[cell] = v3


def generate_limit_pattern(case: str, n: int, tol: float = 1e-8) -> PatternBundle:
    """Patterns of the two degenerate exponents.

    case "z32log": the alpha -> 1/2 limit; u and v discretize z**(3/2)
    while w becomes logarithmic (w jumps by pi*i between half sectors and
    has a pole at the origin).  case "logz3": the alpha -> 0 limit; u and
    v are logarithmic, w discretizes z**3 with w(3k) = k**3 on the axis.
    """
    if case not in ("z32log", "logz3"):
        raise ValueError(f"case must be 'z32log' or 'logz3', got {case!r}")
    if n < 2:
        raise ValueError("n must be at least 2")
    ax = closed_form_axis_limits(case, n + 1)
    table_u, table_v, seeds_w = _limit_tables(case)
    U = VertexField("u")
    V = VertexField("v")
    twist = 2j * math.pi
    for i in range(n + 1):
        U[(i, 0)] = ax.u[i]
        V[(i, 0)] = ax.v[i]
        if case == "z32log":
            # exp(2*pi*i*alpha) = -1 at alpha = 1/2
            U[(0, i)] = -ax.u[i]
            V[(0, i)] = -ax.v[i]
        else:
            # the logarithmic fields gain 2*pi*i per third of a turn
            U[(0, i)] = ax.u[i] if is_infinite(ax.u[i]) else ax.u[i] + twist
            V[(0, i)] = ax.v[i] if is_infinite(ax.v[i]) else ax.v[i] + twist
    for (k, l), z in table_u.items():
        U[(k, l)] = z
    for (k, l), z in table_v.items():
        V[(k, l)] = z
    _fill_limit_sector(U, V, n)
    w_seeds = dict(seeds_w)
    if case == "logz3":
        # both w semiaxes are finite but unreachable across the u, v poles
        for i in range(n + 1):
            w_seeds[(i, 0)] = ax.w[i]
            w_seeds[(0, i)] = ax.w[i]
    W = third_field(U, V, anchor=None, seeds=w_seeds)
    fields = {"u": U, "v": V, "w": W}
    alpha = 0.5 if case == "z32log" else 0.0
    gamma = 1.0 - 2.0 * alpha
    patterns = {
        tag: build_circle_pattern(fields[tag], tag, n, alpha=alpha,
                                  gamma=gamma, tol=tol)
        for tag in ("u", "v", "w")
    }
    return PatternBundle(kind=case, alpha=alpha, beta=alpha, gamma=gamma,
                         theta=2 * math.pi * alpha, n=n, fields=fields,
                         patterns=patterns)


# -- central extension ---------------------------------------------------------


def central_extension(pattern: CirclePattern, p_inf) -> VertexField:
    """Fill hexagon centers with reflections of p_inf in their circles.

    The reflection of infinity is the circle's center, so p_inf = INFINITY
    extends by the geometric centers.  The extension satisfies the
    multi-ratio condition on the hexagons of both complementary
    sublattices.
    """
    ext = VertexField(pattern.tag)
    for p, z in pattern.values.items():
        ext[p] = z
    for center, circ in pattern.circles.items():
        ext[center] = reflect_in_circle(p_inf, circ)
    return ext


# -- row-by-row construction ---------------------------------------------------


ROW_STEP = (1, -1)        # same-sublattice step along a row
ROW_SHIFT = (2, 1)        # from a row center to the next-row center


@dataclass
class CircleRow:
    """Consecutive same-sublattice circles carrying five vertex values each.

    Centers step by (1, -1); the unknown sixth vertex of each hexagon sits
    at center + eps (direction 1), pointing toward the next row.
    """
    centers: list
    values: dict                   # LatticePoint -> complex
    circles: dict = None           # center -> Circle, optional

    KNOWN_DIRECTIONS = (0, 2, 3, 4, 5)

    def known_points(self, center):
        return [shift(center, *DIRECTIONS[t]) for t in self.KNOWN_DIRECTIONS]


def circle_row_from_field(fld: VertexField, start, count: int) -> CircleRow:
    """Extract a row of count circles with centers start + r*(1, -1)."""
    centers = [shift(LatticePoint(*start), r * ROW_STEP[0], r * ROW_STEP[1])
               for r in range(count)]
    row = CircleRow(centers=centers, values={})
    for c in centers:
        for q in row.known_points(c):
            row.values[q] = fld[q]
    return row


def _second_intersection(point, c1: Circle, c2: Circle):
    """The other intersection of two circles: mirror across the center line."""
    sep = abs(c2.center - c1.center)
    if sep == 0:
        raise CircleConstructionFailure("concentric circles do not intersect twice")
    axis = Line(anchor=c1.center, direction=(c2.center - c1.center) / sep)
    return reflect_in_circle(point, axis)


def circle_row_propagate(row: CircleRow, tau: float = TAU):
    """Complete the row's sixth points and build the next row of circles.

    Returns (sixth_values, next_row).  Each sixth point solves the
    multi-ratio condition from the five known vertices; the next-row
    circle through three of the new points determines two more vertices
    as second intersections with its row neighbors.
    """
    sixth = {}
    for c in row.centers:
        star = hex_star(c)
        # star vertices run eps, eps**2, ..., eps**6; the first is unknown
        known = [row.values[q] for q in star.vertices[1:]]
        val = solve_sixth_point(*known)
        if is_infinite(val):
            raise CircleConstructionFailure(
                f"sixth point at {tuple(star.vertices[0])} is infinite")
        sixth[star.vertices[0]] = val

    next_centers = [shift(c, *ROW_SHIFT) for c in row.centers[:-1]]
    next_values = dict(sixth)
    next_circles = {}
    for idx, nc in enumerate(next_centers):
        base = row.centers[idx]
        right = row.centers[idx + 1]
        # shared vertices: nc + eps**3 = base + eps, nc + eps**4 = base + 1,
        # nc + eps**5 = right + eps
        tri = (sixth[shift(base, 1, 1)],
               row.values[shift(base, 1, 0)],
               sixth[shift(right, 1, 1)])
        circ = circle_through(*tri)
        if not isinstance(circ, Circle):
            raise CircleConstructionFailure(
                f"next-row circle at {tuple(nc)} degenerates to a line")
        next_circles[nc] = circ
        next_values[shift(nc, *DIRECTIONS[4])] = row.values[shift(base, 1, 0)]
    for idx in range(len(next_centers) - 1):
        a, b = next_centers[idx], next_centers[idx + 1]
        # the circles at a and b share a + eps**5 (known) and a + 1
        shared = next_values[shift(a, *DIRECTIONS[5])]
        other = _second_intersection(shared, next_circles[a], next_circles[b])
        next_values[shift(a, 1, 0)] = other
    # only centers with all five known vertices can seed another generation
    probe = CircleRow(centers=[], values=next_values)
    complete = [c for c in next_centers
                if all(q in next_values for q in probe.known_points(c))]
    next_row = CircleRow(centers=complete, values=next_values,
                         circles=next_circles)
    return sixth, next_row


# -- full-plane assembly -------------------------------------------------------


@dataclass
class SectorCopy:
    """One rotated copy of a sector pattern."""
    rotation: complex
    values: dict                   # LatticePoint -> complex
    circles: dict                  # center -> Circle


@dataclass
class AssembledPattern:
    tag: str
    angle: Fraction                # turn fraction per copy
    copies: list
    turning: int                   # total full turns after all copies

    @property
    def copy_count(self):
        return len(self.copies)


def assemble_full_plane(pattern: CirclePattern, alpha) -> AssembledPattern:
    """Rotated copies of the sector tiling the plane for rational exponents.

    u- and v-patterns rotate by 2*pi*alpha per copy, the w-pattern by
    2*pi*gamma with gamma = 1 - 2*alpha; alpha must be a Fraction (an
    irrational exponent never closes up).
    """
    if isinstance(alpha, int):
        alpha = Fraction(alpha)
    if not isinstance(alpha, Fraction):
        raise ValueError("alpha must be a Fraction; irrational exponents "
                         "do not close up")
    if pattern.tag == "w":
        angle = (1 - 2 * alpha) % 1
    else:
        angle = alpha % 1
    if angle == 0:
        raise ValueError("rotation angle vanishes; nothing to assemble")
    copies_needed = angle.denominator
    turning = (angle * copies_needed).numerator
    rot_step = cmath.exp(2j * math.pi * float(angle))
    base_values = {LatticePoint(*p): z for p, z in pattern.values.items()}
    for center, circ in pattern.circles.items():
        base_values.setdefault(LatticePoint(*center), circ.center)
    copies = []
    rot = 1.0 + 0j
    for c in range(copies_needed):
        vals = {p: (z if is_infinite(z) else rot * z)
                for p, z in base_values.items()}
        circles = {p: Circle(center=rot * circ.center, radius=circ.radius)
                   for p, circ in pattern.circles.items()}
        copies.append(SectorCopy(rotation=rot, values=vals, circles=circles))
        rot *= rot_step
    assembled = AssembledPattern(tag=pattern.tag, angle=angle, copies=copies,
                                 turning=turning)
    _check_seams(assembled, pattern.n)
    return assembled


def _check_seams(assembled: AssembledPattern, n: int):
    """Each copy's l-semiaxis must coincide with the next copy's k-semiaxis."""
    copies = assembled.copies
    count = len(copies)
    scale = max((abs(z) for copy in copies for z in copy.values.values()
                 if not is_infinite(z)), default=1.0)
    worst = 0.0
    worst_at = None
    for c, copy in enumerate(copies):
        succ = copies[(c + 1) % count]
        for i in range(n + 1):
            pl = LatticePoint(0, i)
            pk = LatticePoint(i, 0)
            if pl not in copy.values or pk not in succ.values:
                continue
            a, b = copy.values[pl], succ.values[pk]
            if is_infinite(a) or is_infinite(b):
                if is_infinite(a) != is_infinite(b):
                    raise SeamMismatch(f"pole mismatch at seam point {i}")
                continue
            dev = abs(a - b)
            if dev > worst:
                worst, worst_at = dev, (c, i)
    if worst > tol_for(scale):
        raise SeamMismatch(
            f"seam {worst_at[0]} deviates by {worst:.3e} at index {worst_at[1]}")


# -- verification --------------------------------------------------------------


def _finite_image_triangles(fld: VertexField, n: int):
    """Lattice triangles of the sector with all-finite image corners.

    Returns (points array, index triples, id map) for the overlap kernel.
    """
    ids = {}
    coords = []
    for p in sector_points(n):
        z = fld.get(p)
        if z is None or is_infinite(z):
            continue
        ids[p] = len(coords)
        coords.append((z.real, z.imag))
    tris = []
    for k in range(n):
        for l in range(n):
            p = LatticePoint(k, l)
            up = (p, shift(p, 1, 0), shift(p, 1, 1))
            down = (p, shift(p, 1, 1), shift(p, 0, 1))
            for tri in (up, down):
                if all(q in ids for q in tri):
                    tris.append(tuple(ids[q] for q in tri))
    points = np.array(coords, dtype=float) if coords else np.zeros((0, 2))
    tris_arr = np.array(tris, dtype=np.int64) if tris else np.zeros((0, 3), dtype=np.int64)
    return points, tris_arr, ids


# shared lattice edges and the two opposite vertices of their flanking triangles
_EDGE_CASES = (
    ((1, 0), (1, 1), (0, -1)),     # edge p -> p+1: apexes p+1+omega, p-omega
    ((0, 1), (1, 1), (-1, 0)),     # edge p -> p+omega: apexes p+1+omega, p-1
    ((1, 1), (1, 0), (0, 1)),      # diagonal p -> p+1+omega: apexes p+1, p+omega
)


def immersion_scan(fld: VertexField, n: int, eta: float = ETA):
    """Count folded interior edges: opposite vertices on the same image side.

    Returns (bad_pairs, inconclusive).  An edge is inconclusive when either
    normalized cross product falls inside the eta dead zone.
    """
    bad = 0
    inconclusive = 0
    for p in sector_points(n):
        zp = fld.get(p)
        if zp is None or is_infinite(zp):
            continue
        for (ed, c1, c2) in _EDGE_CASES:
            q = shift(p, *ed)
            a = shift(p, *c1)
            b = shift(p, *c2)
            vals = [fld.get(x) for x in (q, a, b)]
            if any(z is None or is_infinite(z) for z in vals):
                continue
            zq, za, zb = vals
            edge = zq - zp
            if edge == 0:
                inconclusive += 1
                continue
            s1 = (edge.conjugate() * (za - zp)).imag
            s2 = (edge.conjugate() * (zb - zp)).imag
            n1 = abs(edge) * abs(za - zp)
            n2 = abs(edge) * abs(zb - zp)
            if n1 == 0 or n2 == 0 or abs(s1) < eta * n1 or abs(s2) < eta * n2:
                inconclusive += 1
                continue
            if (s1 > 0) == (s2 > 0):
                bad += 1
    return bad, inconclusive


def embedding_scan(fld: VertexField, n: int, eta: float = ETA):
    """All-pairs overlap count among finite image triangles."""
    from . import kernels

    points, tris, _ = _finite_image_triangles(fld, n)
    if len(tris) == 0:
        return 0, 0
    return kernels.triangle_overlap_count(points, tris, eta)


def verify_pattern(fields: dict, n: int, patterns: dict = None,
                   tol: float = 1e-8, eta: float = ETA) -> VerificationReport:
    """Multi-ratio, circularity, immersion and embeddedness of all fields."""
    reports = {}
    for tag, fld in fields.items():
        rep = FieldReport(tag=tag)
        mr = verify_mr(fld)
        rep.mr_max = mr.max_deviation
        rep.mr_per_sublattice = mr.per_sublattice
        rep.mr_worst_cell = mr.worst_cell
        rep.mr_excluded = mr.excluded
        if patterns is not None and tag in patterns:
            pattern = patterns[tag]
        else:
            pattern = build_circle_pattern(fld, tag, n, tol=math.inf)
        if pattern.deviations:
            worst, cell = pattern.worst_deviation()
            rep.circularity_max = worst
            rep.circularity_worst_cell = cell
        rep.circle_count = len(pattern.circles)
        rep.circles_excluded = [tuple(c) for c in pattern.excluded]
        rep.immersion_bad_pairs, rep.immersion_inconclusive = \
            immersion_scan(fld, n, eta)
        rep.immersed = rep.immersion_bad_pairs == 0
        rep.overlap_pairs, rep.overlap_inconclusive = embedding_scan(fld, n, eta)
        rep.embedded = rep.overlap_pairs == 0
        reports[tag] = rep
    return VerificationReport(fields=reports)


# -- geometric properties of single hexagons -----------------------------------


def hexagon_central_symmetry(values, tau: float = TAU):
    """Moebius map sending a multi-ratio -1 hexagon to a centrally symmetric one.

    Solves T(w[j+3]) = -T(w[j]) for T = (a*z + b)/(c*z + d) through the
    linear system in (a*c, a*d + b*c, b*d); a nontrivial solution exists
    exactly on multi-ratio -1 hexagons.  Returns (coeffs, residual) where
    the residual is the worst |T(w[j+3]) + T(w[j])| after normalization.
    """
    w = [complex(z) for z in values]
    if len(w) != 6:
        raise ValueError("need six hexagon values")
    rows = []
    for j in range(3):
        rows.append([2 * w[j] * w[j + 3], w[j] + w[j + 3], 2.0])
    mat = np.array(rows, dtype=complex)
    vh = np.linalg.svd(mat)[2]
    # complex SVD: right singular vectors are the conjugated rows of vh
    x, y, z = np.conj(vh[-1])
    # factor (x, y, z) = (a*c, a*d + b*c, b*d); take a = 1 when possible
    if abs(x) > 1e-300:
        a = 1.0 + 0j
        c = x
        disc = cmath.sqrt(y * y - 4 * x * z)
        b = (y + disc) / (2 * x)
        d = y - b * c
    else:
        a, c = 1.0 + 0j, 0j
        d = y
        b = z / d if d != 0 else 0j
    coeffs = (a, b, c, d)
    from .geometry import mobius_apply
    imgs = [mobius_apply(coeffs, z) for z in w]
    scale = max(abs(z) for z in imgs)
    residual = max(abs(imgs[j] + imgs[j + 3]) for j in range(3)) / max(scale, 1e-300)
    return coeffs, residual


def side_length_product_residual(values) -> float:
    """| |w1-w2||w3-w4||w5-w6| - |w2-w3||w4-w5||w6-w1| | / scale."""
    w = list(values)
    num = abs(w[0] - w[1]) * abs(w[2] - w[3]) * abs(w[4] - w[5])
    den = abs(w[1] - w[2]) * abs(w[3] - w[4]) * abs(w[5] - w[0])
    return abs(num - den) / max(num, den, 1e-300)


# role rotation of the isosceles triangle shapes: the field whose circle
# centers live on sublattice i carries the equidistant fan at cells based
# at sublattice-i points
_BY_SUBLATTICE = {1: "u", 2: "v", 0: "w"}


def isosceles_residuals(fields: dict, n: int) -> float:
    """Worst deviation from the cascade of isosceles elementary triangles.

    On every rhombus cell (z0, z0+1, z0+omega, z0+1+omega) of an
    equal-exponent solution, one field fans out equidistantly from its
    corner value, one is isosceles toward the split corners, and one fans
    into the far corner, the roles rotating with the cell's sublattice.
    """
    worst = 0.0
    for k in range(n):
        for l in range(n):
            z0 = LatticePoint(k, l)
            corners = (z0, shift(z0, 1, 0), shift(z0, 0, 1), shift(z0, 1, 1))
            i = sublattice_index(z0)
            fan = fields[_BY_SUBLATTICE[i]]
            iso = fields[_BY_SUBLATTICE[(i + 1) % 3]]
            sink = fields[_BY_SUBLATTICE[(i + 2) % 3]]
            if not all(p in fan and p in iso and p in sink for p in corners):
                continue
            a0, a1, a2, a3 = (fan[p] for p in corners)
            b0, b1, b2, b3 = (iso[p] for p in corners)
            c0, c1, c2, c3 = (sink[p] for p in corners)
            if any(is_infinite(z) for z in
                   (a0, a1, a2, a3, b0, b1, b2, b3, c0, c1, c2, c3)):
                continue
            r = abs(a1 - a0)
            scale = max(r, 1.0)
            worst = max(worst,
                        abs(abs(a2 - a0) - r) / scale,
                        abs(abs(a3 - a0) - r) / scale)
            s1 = abs(b0 - b1)
            s2 = abs(b0 - b2)
            worst = max(worst,
                        abs(abs(b3 - b1) - s1) / max(s1, 1.0),
                        abs(abs(b3 - b2) - s2) / max(s2, 1.0))
            t = abs(c3 - c0)
            scale = max(t, 1.0)
            worst = max(worst,
                        abs(abs(c3 - c1) - t) / scale,
                        abs(abs(c3 - c2) - t) / scale)
    return worst
