"""Non-autonomous vertex constraints, semiaxis recurrences with closed
forms, the constrained sector solver, and the residue matrices of the
monodromy-preserving linear problem together with their equation audits.

The constraint ties the fields at a vertex to the six surrounding edge
triples, weighted by a cover representative (k, l, m):

    alpha*u = k*f0*g0*f3/S0 + l*f2*g2*f5/S2 + m*f4*g4*f1/S4,
    beta*v  = k*g0*f3*g3/S0 + l*g2*f5*g5/S2 + m*g4*f1*g1/S4,
    gamma*w = k/S0 + l/S2 + m/S4,          gamma = 1 - alpha - beta,

with S_j = f_j*g_j + g_j*f_{j+3} + f_{j+3}*g_{j+3}.  Solutions constrained
on the two semiaxes stay constrained everywhere, which is what makes the
z**(3*alpha) patterns computable from two seed values.
"""
from dataclasses import dataclass

import numpy as np

from .errors import PoleAt, SingularDenominator, SingularStep
from .fgh import VertexField, edge_fields, solve_sector, third_field
from .geometry import INFINITY, TAU, is_infinite
from .lattice import LatticePoint, OrientedEdge, shift, star_edges

_TINY = 1e-14


@dataclass(frozen=True)
class ConstraintParams:
    """Exponent parameters; gamma defaults to 1 - alpha - beta.

    phi and psi are the affine offsets of the constraint right-hand sides;
    they stay 0 under the vanish-at-origin normalization used throughout.
    """
    alpha: complex
    beta: complex
    gamma: complex = None
    phi: complex = 0j
    psi: complex = 0j

    def __post_init__(self):
        if self.gamma is None:
            object.__setattr__(self, "gamma", 1 - self.alpha - self.beta)

    def with_gamma_consistency_checked(self, tau: float = TAU):
        if abs(self.gamma - (1 - self.alpha - self.beta)) > tau:
            raise ValueError("gamma is not 1 - alpha - beta")
        return self


@dataclass(frozen=True)
class StarData:
    """Edge triples (f_t, g_t, h_t), t = 0..5, around one vertex.

    Even t: outgoing edge to the neighbor at direction t; odd t: incoming
    from that neighbor.  All six are positively oriented, so f_t is always
    u(head) - u(tail).  representative fixes the (k, l, m) weights.
    """
    f: tuple
    g: tuple
    h: tuple
    representative: LatticePoint


def star_data(u: VertexField, v: VertexField, center,
              representative=None) -> StarData:
    center = LatticePoint(*center)
    triples = [edge_fields(u, v, e) for e in star_edges(center)]
    rep = LatticePoint(*representative) if representative is not None else center
    return StarData(f=tuple(t.f for t in triples),
                    g=tuple(t.g for t in triples),
                    h=tuple(t.h for t in triples),
                    representative=rep)


def _denominator(star: StarData, j: int) -> complex:
    f, g = star.f, star.g
    return f[j] * g[j] + g[j] * f[(j + 3) % 6] + f[(j + 3) % 6] * g[(j + 3) % 6]


def _denominator_scale(star: StarData) -> float:
    return max(max(abs(x) for x in star.f) * max(abs(x) for x in star.g), 1.0)


def constraint_residual(star: StarData, u_value: complex, v_value: complex,
                        params: ConstraintParams, representative=None):
    """(r1, r2): the two constraint defects at one vertex.

    Terms whose integer weight vanishes are skipped, so axis points do not
    need off-axis star data.
    """
    rep = LatticePoint(*representative) if representative is not None \
        else star.representative
    f, g = star.f, star.g
    scale = _denominator_scale(star)
    r1 = -params.alpha * u_value
    r2 = -params.beta * v_value
    for n, j in zip(rep, (0, 2, 4)):
        if n == 0:
            continue
        s = _denominator(star, j)
        if abs(s) <= _TINY * scale:
            raise SingularDenominator(f"S_{j} vanishes at {tuple(rep)}")
        r1 += n * f[j] * g[j] * f[(j + 3) % 6] / s
        r2 += n * g[j] * f[(j + 3) % 6] * g[(j + 3) % 6] / s
    return r1, r2


def constraint_residual_w(star: StarData, w_value: complex,
                          params: ConstraintParams,
                          representative=None) -> complex:
    """Third-field constraint defect gamma*w - sum of weighted 1/S_j."""
    rep = LatticePoint(*representative) if representative is not None \
        else star.representative
    scale = _denominator_scale(star)
    r3 = -params.gamma * w_value
    for n, j in zip(rep, (0, 2, 4)):
        if n == 0:
            continue
        s = _denominator(star, j)
        if abs(s) <= _TINY * scale:
            raise SingularDenominator(f"S_{j} vanishes at {tuple(rep)}")
        r3 += n / s
    return r3


def constraint_residual_cyclic(star: StarData, v_value: complex,
                               w_value: complex, params: ConstraintParams,
                               representative=None):
    """(r2, r3) evaluated through the cyclically shifted formulation.

    The constraint system is invariant under (f, g, h) -> (g, h, f) with
    (u, v, w) -> (v, w, u) and (alpha, beta, gamma) -> (beta, gamma, alpha),
    which re-expresses the second and third constraints via T_j built from
    (g, h) instead of S_j from (f, g).
    """
    rep = LatticePoint(*representative) if representative is not None \
        else star.representative
    g, h = star.g, star.h
    scale = max(max(abs(x) for x in g) * max(abs(x) for x in h), 1.0)
    r2 = -params.beta * v_value
    r3 = -params.gamma * w_value
    for n, j in zip(rep, (0, 2, 4)):
        if n == 0:
            continue
        t = g[j] * h[j] + h[j] * g[(j + 3) % 6] + g[(j + 3) % 6] * h[(j + 3) % 6]
        if abs(t) <= _TINY * scale:
            raise SingularDenominator(f"T_{j} vanishes at {tuple(rep)}")
        r2 += n * g[j] * h[j] * g[(j + 3) % 6] / t
        r3 += n * h[j] * g[(j + 3) % 6] * h[(j + 3) % 6] / t
    return r2, r3


def one_field_constraint_residual(f_values, u_value: complex, alpha: complex,
                                  representative) -> complex:
    """First constraint defect written in the u-differences alone."""
    f = tuple(f_values)
    rep = LatticePoint(*representative)
    scale = max(max(abs(x) for x in f) ** 2, 1.0)
    res = -alpha * u_value
    for n, (a, b, c, d, e, s) in zip(rep, ((0, 3, 1, 2, 0, 2),
                                           (2, 5, 3, 4, 2, 4),
                                           (4, 1, 5, 0, 4, 0))):
        if n == 0:
            continue
        den = (f[e] - f[s]) * (f[c] - f[b])
        if abs(den) <= _TINY * scale:
            raise SingularDenominator(f"difference denominator vanishes "
                                      f"at {tuple(rep)}")
        res += n * f[a] * f[b] * (f[c] + f[d]) / den
    return res


# -- semiaxis recurrences -----------------------------------------------------


@dataclass
class AxisSolution:
    """Sequences on one semiaxis; u, v, w run 0..kmax, f, g, h run 0..kmax-1."""
    axis: str
    alpha: complex
    beta: complex
    u: list
    v: list
    w: list
    f: list
    g: list
    h: list


def axis_solve(params: ConstraintParams, u1: complex, v1: complex,
               kmax: int, axis: str = "k") -> AxisSolution:
    """March the constraint along a semiaxis from the two seed values.

    Seeds u(0) = v(0) = w(0) = 0, u(1), v(1) given.  Each step solves the
    on-axis constraint pair for the next edge fields:

        f(k) = alpha*u(k) * g(k-1) / (beta*v(k)),
        g(k) = beta*v(k) / (k - alpha*u(k)/f(k-1) - beta*v(k)/g(k-1)),

    then extends u, v by the new f, g and w by h = 1/(f*g).  The same
    recurrence serves both semiaxes; axis only labels which one the seeds
    came from.
    """
    if axis not in ("k", "l"):
        raise ValueError(f"axis must be 'k' or 'l', got {axis!r}")
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    a, b = params.alpha, params.beta
    u = [0j, complex(u1)]
    v = [0j, complex(v1)]
    f = [complex(u1)]
    g = [complex(v1)]
    h = [1 / (f[0] * g[0])]
    w = [0j, h[0]]
    for k in range(1, kmax):
        scale = max(abs(f[k - 1]), abs(g[k - 1]), 1e-300)
        if abs(b * v[k]) <= _TINY * scale or abs(g[k - 1]) <= _TINY * scale:
            raise SingularStep(f"edge field vanishes before step {k}", k=k)
        den = k - a * u[k] / f[k - 1] - b * v[k] / g[k - 1]
        if abs(den) <= _TINY * max(abs(k), 1.0):
            raise SingularStep(f"recurrence denominator vanishes at step {k}",
                               k=k)
        fk = a * u[k] * g[k - 1] / (b * v[k])
        gk = b * v[k] / den
        f.append(fk)
        g.append(gk)
        if fk == 0 or gk == 0:
            raise SingularStep(f"degenerate edge produced at step {k}", k=k)
        h.append(1 / (fk * gk))
        u.append(u[k] + fk)
        v.append(v[k] + gk)
        w.append(w[k] + h[k])
    return AxisSolution(axis=axis, alpha=a, beta=b,
                        u=u, v=v, w=w, f=f, g=g, h=h)


def axis_constraint_residuals(sol: AxisSolution, params: ConstraintParams) -> float:
    """Max defect of the two on-axis constraints over the computed run."""
    worst = 0.0
    for k in range(1, len(sol.f)):
        s = (sol.f[k] * sol.g[k] + sol.g[k] * sol.f[k - 1]
             + sol.f[k - 1] * sol.g[k - 1])
        r1 = k * sol.f[k] * sol.g[k] * sol.f[k - 1] / s \
            - params.alpha * sol.u[k]
        r2 = k * sol.g[k] * sol.f[k - 1] * sol.g[k - 1] / s \
            - params.beta * sol.v[k]
        worst = max(worst, abs(r1), abs(r2))
    return worst


def _pole_check(value: complex, alpha: complex, k: int, what: str):
    if abs(value) <= _TINY:
        raise PoleAt(f"{what} vanishes", alpha=alpha, k=k)


def closed_form_axis(alpha: complex, kmax: int) -> AxisSolution:
    """Product-form semiaxis solution for the symmetric case beta = alpha.

    Uses the running products

        Pi1(k) = prod_{j<=k} (j+2a)/(j-a),
        Pi2(k) = prod_{j<=k} (j+a)/(j-2a),
        Pi3(k) = prod_{j<=k} (j-a)(j-2a) / ((j-1+a)(j-1+2a)),

    and the residue-class formulas u(3k) = 2k/(k+2a)*Pi1(k),
    u(3k+1) = (2k+2a)/(k+2a)*Pi1(k), u(3k+2) = 2*Pi1(k), the v-analogues
    with Pi2, and w built from Pi3; f, g, h come out constant on runs of
    three consecutive indices.  Normalization u(1) = v(1) = 1.
    """
    a = complex(alpha)
    _pole_check(a, a, 0, "alpha")
    _pole_check(1 - 2 * a, a, 0, "1 - 2*alpha")
    kk = kmax // 3 + 2
    pi1 = [1 + 0j]
    pi2 = [1 + 0j]
    pi3 = [1 + 0j]
    for j in range(1, kk + 1):
        _pole_check(j - a, a, j, "j - alpha")
        _pole_check(j - 2 * a, a, j, "j - 2*alpha")
        den3 = (j - 1 + a) * (j - 1 + 2 * a)
        _pole_check(den3, a, j, "(j-1+alpha)(j-1+2*alpha)")
        pi1.append(pi1[-1] * (j + 2 * a) / (j - a))
        pi2.append(pi2[-1] * (j + a) / (j - 2 * a))
        pi3.append(pi3[-1] * (j - a) * (j - 2 * a) / den3)

    def u_at(i):
        k, r = divmod(i, 3)
        if r == 0:
            _pole_check(k + 2 * a, a, k, "k + 2*alpha")
            return 2 * k / (k + 2 * a) * pi1[k]
        if r == 1:
            _pole_check(k + 2 * a, a, k, "k + 2*alpha")
            return (2 * k + 2 * a) / (k + 2 * a) * pi1[k]
        return 2 * pi1[k]

    def v_at(i):
        if i % 3 == 2:
            k = (i + 1) // 3
            _pole_check(k + a, a, k, "k + alpha")
            return (k - a) / (k + a) * pi2[k]
        if i % 3 == 0:
            k = i // 3
            _pole_check(k + a, a, k, "k + alpha")
            return k / (k + a) * pi2[k]
        k = (i - 1) // 3
        return pi2[k]

    def w_at(i):
        if i % 3 == 2:
            k = (i + 1) // 3
            return (k - 1 + 2 * a) / (1 - 2 * a) * pi3[k]
        if i % 3 == 0:
            k = i // 3
            return k / (1 - 2 * a) * pi3[k]
        k = (i - 1) // 3
        return (k + 1 - 2 * a) / (1 - 2 * a) * pi3[k]

    def f_at(i):
        k = (i + 1) // 3 if i % 3 == 2 else (i // 3 if i % 3 == 0 else (i - 1) // 3)
        _pole_check(k + 2 * a, a, k, "k + 2*alpha")
        return 2 * a / (k + 2 * a) * pi1[k]

    def g_at(i):
        k = (i + 2) // 3 if i % 3 == 1 else ((i + 1) // 3 if i % 3 == 2 else i // 3)
        _pole_check(k + a, a, k, "k + alpha")
        return a / (k + a) * pi2[k]

    def h_at(i):
        if i % 3 == 1:
            k = (i - 1) // 3
            _pole_check(k + a, a, k, "k + alpha")
            return pi3[k] * (k + 1 - 2 * a) / (k + a)
        k = (i + 1) // 3 if i % 3 == 2 else i // 3
        return pi3[k]

    return AxisSolution(axis="k", alpha=a, beta=a,
                        u=[u_at(i) for i in range(kmax + 1)],
                        v=[v_at(i) for i in range(kmax + 1)],
                        w=[w_at(i) for i in range(kmax + 1)],
                        f=[f_at(i) for i in range(kmax)],
                        g=[g_at(i) for i in range(kmax)],
                        h=[h_at(i) for i in range(kmax)])


def closed_form_axis_limits(case: str, kmax: int) -> AxisSolution:
    """Rescaled semiaxis sequences of the two degenerate exponents.

    case "z32log" (the alpha -> 1/2 limit): with c_k = 2**k * k!/(2k-1)!!
    and d_k = (2k-1)!!/(2**k * (k-1)!),

        u(3k+r) = c_k * (2k+r),  r = 0, 1, 2;   f constant c_k on runs,
        v(3k+r) = d_k * (2k+r),  r = -1, 0, 1 (v(0) = v(1) = 0);
        h(3k)= h(3k-1) = 1/k,  h(3k+1) = 2/(2k+1);  w integrates h from
        w(1) = 0, leaving w(0) infinite.

    case "logz3" (the alpha -> 0 limit): u(0), u(1), v(0) are infinite,
    u(2) = 0, v(1) = 0, and the increments are f(i) = 1/floor((i+1)/3)
    except f(3k+1) = 1/k, g(i) = 1/floor((i+2)/3); then w(3k) = k**3.
    """
    if case not in ("z32log", "logz3"):
        raise ValueError(f"case must be 'z32log' or 'logz3', got {case!r}")
    if case == "z32log":
        c = [1.0]
        d = [0.0]  # d_0 unused; v(0)=v(1)=0
        for k in range(1, kmax // 3 + 3):
            c.append(c[-1] * 2 * k / (2 * k - 1))
            d.append(d[-1] * (2 * k - 1) / (2 * k - 2) if k > 1 else 0.5)

        def u_at(i):
            k, r = divmod(i, 3)
            return complex(c[k] * (2 * k + r))

        def v_at(i):
            if i <= 1:
                return 0j
            if i % 3 == 2:
                k = (i + 1) // 3
                return complex(d[k] * (2 * k - 1))
            if i % 3 == 0:
                k = i // 3
                return complex(d[k] * 2 * k)
            k = (i - 1) // 3
            return complex(d[k] * (2 * k + 1))

        def h_at(i):
            if i == 0:
                return INFINITY
            if i % 3 == 1:
                k = (i - 1) // 3
                return complex(2.0 / (2 * k + 1))
            k = (i + 1) // 3 if i % 3 == 2 else i // 3
            return complex(1.0 / k)

        u = [u_at(i) for i in range(kmax + 1)]
        v = [v_at(i) for i in range(kmax + 1)]
        f = [u[i + 1] - u[i] for i in range(kmax)]
        g = [v[i + 1] - v[i] for i in range(kmax)]
        h = [h_at(i) for i in range(kmax)]
        w = [INFINITY, 0j]
        for i in range(1, kmax):
            w.append(w[i] + h[i])
        return AxisSolution(axis="k", alpha=0.5, beta=0.5,
                            u=u, v=v, w=w[:kmax + 1], f=f, g=g, h=h)

    def f_at(i):
        if i < 2:
            return INFINITY
        if i % 3 == 1:
            return complex(1.0 / ((i - 1) // 3))
        return complex(1.0 / ((i + 1) // 3))

    def g_at(i):
        if i < 1:
            return INFINITY
        return complex(1.0 / ((i + 2) // 3))

    f = [f_at(i) for i in range(kmax)]
    g = [g_at(i) for i in range(kmax)]
    u = [INFINITY, INFINITY, 0j]
    for i in range(2, kmax):
        u.append(u[i] + f[i])
    v = [INFINITY, 0j]
    for i in range(1, kmax):
        v.append(v[i] + g[i])
    h = []
    for i in range(kmax):
        if is_infinite(f[i]) or is_infinite(g[i]):
            h.append(0j)
        else:
            h.append(1 / (f[i] * g[i]))
    w = [0j]
    for i in range(kmax):
        w.append(w[i] + h[i])
    return AxisSolution(axis="k", alpha=0.0, beta=0.0,
                        u=u[:kmax + 1], v=v[:kmax + 1], w=w[:kmax + 1],
                        f=f, g=g, h=h)


def solve_constrained_sector(params: ConstraintParams, u1: complex,
                             v1: complex, uomega: complex, vomega: complex,
                             n: int):
    """Fields (u, v, w) on the sector 0 <= k, l <= n from four seed values.

    Both semiaxes are built by the constraint recurrence, the interior by
    the split-point propagation, and w by integrating h = 1/(f*g) from the
    origin.  The constraint then holds at interior vertices automatically;
    callers can audit it with constraint_residual.
    """
    sol_k = axis_solve(params, u1, v1, n, axis="k")
    sol_l = axis_solve(params, uomega, vomega, n, axis="l")
    u_boundary = {}
    v_boundary = {}
    for k in range(n + 1):
        u_boundary[(k, 0)] = sol_k.u[k]
        v_boundary[(k, 0)] = sol_k.v[k]
        u_boundary[(0, k)] = sol_l.u[k]
        v_boundary[(0, k)] = sol_l.v[k]
    u, v = solve_sector(u_boundary, v_boundary, n)
    w = third_field(u, v, anchor=(0, 0), anchor_value=0j)
    return u, v, w


# -- residue matrices of the deformation equations ----------------------------


Q_MATRIX = np.array([[0, 0, 0], [0, 0, 0], [1, 0, 0]], dtype=complex)


@dataclass
class IsoMatrices:
    """Residue matrices at one vertex: A(mu) = C/(1+mu) + D/mu."""
    C: np.ndarray
    D: np.ndarray
    P: dict
    representative: LatticePoint

    def a_of(self, mu: complex) -> np.ndarray:
        return self.C / (1 + mu) + self.D / mu


def projector(star: StarData, j: int) -> np.ndarray:
    """Rank-one projector of the star direction j built from null vectors.

    P_j = xi_j eta_{j+3}^T / <xi_j, eta_{j+3}> with xi = (f*g, -g, 1)^T and
    eta = (1, -f, f*g)^T of the respective edges.
    """
    f, g = star.f, star.g
    s = _denominator(star, j)
    if abs(s) <= _TINY * _denominator_scale(star):
        raise SingularDenominator(f"S_{j} vanishes")
    xi = np.array([f[j] * g[j], -g[j], 1.0], dtype=complex)
    eta = np.array([1.0, -f[(j + 3) % 6], f[(j + 3) % 6] * g[(j + 3) % 6]], dtype=complex)
    return np.outer(xi, eta) / s


def build_iso_matrices(u: VertexField, v: VertexField, quad, params,
                       points=None) -> dict:
    """IsoMatrices at every point whose six neighbors carry u and v values.

    quad supplies the edge-integrated pair fields a and a' entering the
    13-entry of D.  C weighs the three projectors by the representative
    (k, l, m) with m = 0.
    """
    if points is None:
        points = u.points()
    out = {}
    for p in points:
        p = LatticePoint(*p)
        star_pts = [shift(p, dk, dl) for dk, dl
                    in ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))]
        if not all(q in u and q in v for q in star_pts):
            continue
        if p not in quad.a or p not in quad.ap:
            continue
        star = star_data(u, v, p)
        rep = star.representative
        pj = {j: projector(star, j) for j in (0, 2, 4)}
        c = rep.k * pj[0] + rep.l * pj[2] + rep.m * pj[4]
        a, b = params.alpha, params.beta
        d = np.array([
            [-(2 * a + b) / 3, a * u[p], b * quad.a[p] - a * quad.ap[p]],
            [0, (a - b) / 3, b * v[p]],
            [0, 0, (2 * b + a) / 3]], dtype=complex)
        out[p] = IsoMatrices(C=c, D=d, P=pj, representative=rep)
    return out


def null_vectors(triple):
    """Right and left null vectors of the edge matrix at spectral value -1."""
    xi = np.array([triple.f * triple.g, -triple.g, 1.0], dtype=complex)
    eta = np.array([1.0, -triple.f, triple.f * triple.g], dtype=complex)
    return xi, eta


@dataclass
class IsoAuditReport:
    """Max residuals of the deformation-compatibility equations."""
    c_residual: float
    d_residual: float
    cd_residual: float
    projector_sum_residual: float
    cd_entry_r1_match: float
    cd_entry_r2_match: float
    cd13_shift_residual: float
    cd13_alt_reading_residual: float
    null_vector_residual: float
    edges_checked: int


def audit_iso_equations(iso: dict, u: VertexField, v: VertexField,
                        params: ConstraintParams) -> IsoAuditReport:
    """Numerically audit the compatibility equations on every window edge.

    For each of the three positive directions with matrices at both ends:
    the spectral value -1 equation for C, the value 0 equation for D, and
    the corner-matrix equation tying C + D to the constraint.  The m-step
    uses the cover representative (k, l, m+1), realized as C + I at the
    lattice neighbor.  Also checks that the corner-equation residual matrix
    reproduces the two constraint defects entrywise, the projector sum, the
    13-entry difference equation in both the consistent reading and the
    index-swapped variant, and the null vectors.
    """
    eye = np.eye(3, dtype=complex)
    report = IsoAuditReport(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0)
    for p, mats in iso.items():
        psum = mats.P[0] + mats.P[2] + mats.P[4]
        report.projector_sum_residual = max(report.projector_sum_residual,
                                            float(np.abs(psum - eye).max()))
        for j, (dk, dl) in ((0, (1, 0)), (2, (0, 1)), (4, (-1, -1))):
            q = shift(p, dk, dl)
            if q not in iso:
                continue
            triple = edge_fields(u, v, OrientedEdge(p, q))
            lm1 = np.array([[1, triple.f, 0], [0, 1, triple.g],
                            [-triple.h, 0, 1]], dtype=complex)
            l0 = np.array([[1, triple.f, 0], [0, 1, triple.g],
                           [0, 0, 1]], dtype=complex)
            c_tail, d_tail = mats.C, mats.D
            c_head = iso[q].C + (eye if j == 4 else 0)
            d_head = iso[q].D
            report.c_residual = max(report.c_residual, float(
                np.abs(c_head @ lm1 - lm1 @ c_tail).max()))
            report.d_residual = max(report.d_residual, float(
                np.abs(d_head @ l0 - l0 @ d_tail).max()))
            r = ((c_head + d_head) @ Q_MATRIX
                 - Q_MATRIX @ (c_tail + d_tail) - Q_MATRIX)
            report.cd_residual = max(report.cd_residual,
                                     float(np.abs(r).max()))
            star_tail = star_data(u, v, p)
            star_head = star_data(u, v, q)
            r1_tail, _ = constraint_residual(star_tail, u[p], v[p], params)
            _, r2_head = constraint_residual(star_head, u[q], v[q], params)
            report.cd_entry_r1_match = max(report.cd_entry_r1_match,
                                           abs(r[2, 1] - r1_tail))
            report.cd_entry_r2_match = max(report.cd_entry_r2_match,
                                           abs(r[1, 0] + r2_head))
            cd13 = (c_head[0, 2] - c_tail[0, 2]) + (d_head[0, 2] - d_tail[0, 2])
            cd13_alt = (c_head[0, 2] - c_tail[0, 0]) + (d_head[0, 2] - d_tail[0, 2])
            report.cd13_shift_residual = max(report.cd13_shift_residual,
                                             abs(cd13))
            if j == 4:
                report.cd13_alt_reading_residual = max(
                    report.cd13_alt_reading_residual, abs(cd13_alt))
            xi, eta = null_vectors(triple)
            report.null_vector_residual = max(
                report.null_vector_residual,
                float(np.abs(lm1 @ xi).max()),
                float(np.abs(eta @ lm1).max()))
            report.edges_checked += 1
    return report
