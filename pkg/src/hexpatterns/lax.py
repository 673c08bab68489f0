"""Transition matrices, flatness audits, wave-function transport, field
recovery from the spectral derivative, and the square-lattice extension.

Two gauges are used.  The workhorse is the unipotent three-band matrix

    M(mu) = [[1, f, 0], [0, 1, g], [mu*h, 0, 1]],      det M = 1 + mu,

whose ordered product around a positively traversed elementary triangle is
(1 + mu) * I exactly when (u, v, w) solve the triangle relations.  The
spectral gauge L(lam) = (1+lam**3)**(-1/3) * [[1, lam*f, 0], [0, 1, lam*g],
[lam*h, 0, 1]] has det 1 and satisfies the twisted-loop condition; the fields
are read off the polynomial coefficients of products of its unnormalised
form, which agree with the normalised ones up to order lam**2.

Matrices of polynomials are numpy arrays of shape (3, 3, D+1), index 2 being
the coefficient degree.
"""
from dataclasses import dataclass

import numpy as np

from .errors import (DisconnectedPath, NotFlat, NotInClass, PathDependent,
                     ShapeViolation, TripleNotUnit)
from .fgh import EdgeFieldTriple, VertexField
from .geometry import TAU, is_infinite
from .lattice import OMEGA, LatticePoint, shift, step_direction

# -- polynomial 3x3 matrices --------------------------------------------------


def poly_identity() -> np.ndarray:
    out = np.zeros((3, 3, 1), dtype=complex)
    out[:, :, 0] = np.eye(3)
    return out


def poly_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    da, db = a.shape[2], b.shape[2]
    out = np.zeros((3, 3, da + db - 1), dtype=complex)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                out[i, j] += np.convolve(a[i, k], b[k, j])
    return out


def poly_eval(a: np.ndarray, x: complex) -> np.ndarray:
    powers = x ** np.arange(a.shape[2])
    return (a * powers).sum(axis=2)


def poly_scalar_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return np.convolve(p, q)


def poly_adjugate(a: np.ndarray) -> np.ndarray:
    """Adjugate with polynomial entries (transposed cofactors)."""
    d = a.shape[2]
    out = np.zeros((3, 3, 2 * d - 1), dtype=complex)
    for i in range(3):
        for j in range(3):
            r1, r2 = [r for r in range(3) if r != j]
            c1, c2 = [c for c in range(3) if c != i]
            minor = (np.convolve(a[r1, c1], a[r2, c2])
                     - np.convolve(a[r1, c2], a[r2, c1]))
            out[i, j, :len(minor)] = minor * (-1) ** (i + j)
    return out


def poly_det(a: np.ndarray) -> np.ndarray:
    t1 = np.convolve(np.convolve(a[0, 0], a[1, 1]), a[2, 2])
    t2 = np.convolve(np.convolve(a[0, 1], a[1, 2]), a[2, 0])
    t3 = np.convolve(np.convolve(a[0, 2], a[1, 0]), a[2, 1])
    t4 = np.convolve(np.convolve(a[0, 2], a[1, 1]), a[2, 0])
    t5 = np.convolve(np.convolve(a[0, 0], a[1, 2]), a[2, 1])
    t6 = np.convolve(np.convolve(a[0, 1], a[1, 0]), a[2, 2])
    return t1 + t2 + t3 - t4 - t5 - t6


def poly_divide_linear(p: np.ndarray, root_coeffs=(1.0, 1.0)):
    """Divide polynomial p by (c0 + c1*x); returns (quotient, remainder)."""
    c0, c1 = root_coeffs
    q = np.zeros(max(len(p) - 1, 1), dtype=complex)
    rem = p.astype(complex).copy()
    for i in range(len(p) - 1, 0, -1):
        q[i - 1] = rem[i] / c1
        rem[i] = 0
        rem[i - 1] -= q[i - 1] * c0
    return q, rem[0]


# -- transition matrices ------------------------------------------------------


def _check_unit(triple: EdgeFieldTriple, tau: float = TAU):
    prod = triple.f * triple.g * triple.h
    if abs(prod - 1.0) > tau * max(1.0, abs(prod)):
        raise TripleNotUnit(f"f*g*h = {prod}")


def transition_matrix_poly(triple: EdgeFieldTriple) -> np.ndarray:
    """Three-band matrix as a degree-1 polynomial in mu."""
    _check_unit(triple)
    out = np.zeros((3, 3, 2), dtype=complex)
    out[:, :, 0] = [[1, triple.f, 0], [0, 1, triple.g], [0, 0, 1]]
    out[2, 0, 1] = triple.h
    return out


def transition_matrix(triple: EdgeFieldTriple, gauge: str = "mu", spectral=0j):
    """Evaluate the transition matrix at a spectral value.

    gauge "mu": unipotent three-band form, det 1 + mu.  gauge "lambda":
    spectral form normalised by (1+lam**3)**(-1/3) (principal branch),
    det 1.
    """
    _check_unit(triple)
    f, g, h = triple.f, triple.g, triple.h
    if gauge == "mu":
        mu = spectral
        return np.array([[1, f, 0], [0, 1, g], [mu * h, 0, 1]], dtype=complex)
    if gauge == "lambda":
        lam = spectral
        raw = np.array([[1, lam * f, 0], [0, 1, lam * g], [lam * h, 0, 1]],
                       dtype=complex)
        return (1 + lam ** 3) ** (-1.0 / 3.0) * raw
    raise ValueError(f"unknown gauge {gauge!r}")


def spectral_rotation_residual(triple: EdgeFieldTriple, lam: complex) -> float:
    """Twisted-loop check: L(omega*lam) = Omega^-1 L(lam) Omega.

    Omega = diag(1, omega, omega**2).  Equivalently Omega L Omega^-1 rotates
    the spectral parameter by omega**2.
    """
    omega_diag = np.diag([1.0 + 0j, OMEGA, OMEGA ** 2])
    lhs = transition_matrix(triple, "lambda", OMEGA * lam)
    rhs = np.conj(omega_diag.T) @ transition_matrix(triple, "lambda", lam) @ omega_diag
    return float(np.abs(lhs - rhs).max())


def triangle_edge_triples(u: VertexField, v: VertexField, tri):
    """Edge triples around a triangle as a closed positive-edge cycle.

    Up triangles traverse counterclockwise, down triangles clockwise; in
    both cases the three returned edges are positively oriented and
    consecutive, as check_zero_curvature expects.
    """
    from .fgh import edge_fields
    from .lattice import OrientedEdge, is_positive
    a, b, c = tri
    if is_positive(OrientedEdge(a, b)):
        cycle = ((a, b), (b, c), (c, a))
    else:
        cycle = ((a, c), (c, b), (b, a))
    return tuple(edge_fields(u, v, OrientedEdge(*e)) for e in cycle)


def check_zero_curvature(t1: EdgeFieldTriple, t2: EdgeFieldTriple,
                         t3: EdgeFieldTriple,
                         mus=(0j, 0.5 + 0j, -0.3 + 0.2j)) -> float:
    """Residual ||M3 M2 M1 - (1+mu) I|| over sampled mu.

    The arguments are the consecutive positively oriented edges of one
    elementary triangle, in traversal order.
    """
    worst = 0.0
    for mu in mus:
        prod = (transition_matrix(t3, "mu", mu)
                @ transition_matrix(t2, "mu", mu)
                @ transition_matrix(t1, "mu", mu))
        worst = max(worst, float(np.abs(prod - (1 + mu) * np.eye(3)).max()))
    return worst


# -- wave function transport --------------------------------------------------


@dataclass
class WaveFunction:
    """Polynomial matrix divided by a tracked power of the determinant factor.

    In mu gauge the value is poly(mu) / (1+mu)**denom_power; in lambda gauge
    poly(lam) / (1+lam**3)**denom_power.  Coefficients of degree 0..2 are
    unaffected by the denominator, which is how the fields are read off.
    """
    poly: np.ndarray
    denom_power: int = 0
    gauge: str = "mu"

    def at(self, spectral: complex) -> np.ndarray:
        base = poly_eval(self.poly, spectral)
        if self.gauge == "mu":
            den = (1 + spectral) ** self.denom_power
        else:
            den = (1 + spectral ** 3) ** self.denom_power
        return base / den


def _edge_triple(u: VertexField, v: VertexField, tail, head) -> EdgeFieldTriple:
    f = u[head] - u[tail]
    g = v[head] - v[tail]
    return EdgeFieldTriple.from_fg(f, g)


def _step_poly(u, v, p, q, gauge):
    """Polynomial factor and denominator increment for the step p -> q."""
    t = step_direction(p, q)
    if t is None:
        raise DisconnectedPath(f"{tuple(p)} -> {tuple(q)} is not a lattice step")
    positive = t in (0, 2, 4)
    tail, head = (p, q) if positive else (q, p)
    triple = _edge_triple(u, v, tail, head)
    if gauge == "mu":
        mat = transition_matrix_poly(triple)
    else:
        mat = np.zeros((3, 3, 2), dtype=complex)
        mat[:, :, 0] = np.eye(3)
        mat[0, 1, 1] = triple.f
        mat[1, 2, 1] = triple.g
        mat[2, 0, 1] = triple.h
    if positive:
        return mat, 0
    return poly_adjugate(mat), 1


def transport(u: VertexField, v: VertexField, path, gauge: str = "mu") -> WaveFunction:
    """Ordered product of transition matrices along a path of lattice points.

    Positive steps multiply by the edge matrix on the left; negative steps by
    its inverse, realised as adjugate / determinant with the determinant
    power tracked in denom_power.
    """
    psi = poly_identity()
    denom = 0
    for a, b in zip(path, path[1:]):
        mat, dd = _step_poly(u, v, a, b, gauge)
        psi = poly_mul(mat, psi)
        denom += dd
    return WaveFunction(poly=psi, denom_power=denom, gauge=gauge)


def transport_along(u, v, base, window_points, gauge="lambda"):
    """Wave function at every reachable window point (base value = identity)."""
    import collections
    base = LatticePoint(*base)
    values = {base: WaveFunction(poly_identity(), 0, gauge)}
    targets = {LatticePoint(*p) for p in window_points}
    queue = collections.deque([base])
    steps = ((1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1))
    while queue:
        p = queue.popleft()
        for dk, dl in steps:
            q = shift(p, dk, dl)
            if q not in targets or q in values or q not in u or q not in v:
                continue
            mat, dd = _step_poly(u, v, p, q, gauge)
            cur = values[p]
            values[q] = WaveFunction(poly_mul(mat, cur.poly),
                                     cur.denom_power + dd, gauge)
            queue.append(q)
    return values


def loop_winding(path) -> int:
    """Net number of (1,1,1)-cover sheets crossed by a closed path.

    Each positive step contributes +1/3 turn of the cover coordinate; a
    closed loop accumulates an integer.
    """
    total = 0
    for a, b in zip(path, path[1:]):
        t = step_direction(a, b)
        if t is None:
            raise DisconnectedPath(f"{tuple(a)} -> {tuple(b)}")
        total += 1 if t in (0, 2, 4) else -1
    if total % 3:
        raise ValueError("path is not closed on the cover")
    return total // 3


def sym_extract(wave_values, tau: float = TAU):
    """Fields (u, v, w) from the first spectral coefficient of the wave function.

    Input maps lattice points to lambda-gauge WaveFunction values with
    identity at the base point.  The linear coefficient must have the cyclic
    shape with entries (0,1), (1,2), (2,0); anything else raises
    ShapeViolation.  Returned fields vanish at the base point.
    """
    u = VertexField("u")
    v = VertexField("v")
    w = VertexField("w")
    for p, psi in wave_values.items():
        if psi.gauge != "lambda":
            raise ValueError("sym_extract expects lambda-gauge wave functions")
        c0 = psi.poly[:, :, 0]
        c1 = psi.poly[:, :, 1] if psi.poly.shape[2] > 1 else np.zeros((3, 3))
        scale = max(1.0, float(np.abs(c1).max()))
        if np.abs(c0 - np.eye(3)).max() > tau * scale:
            raise ShapeViolation(f"zeroth coefficient not identity at {tuple(p)}")
        off = c1.copy()
        off[0, 1] = off[1, 2] = off[2, 0] = 0.0
        if np.abs(off).max() > tau * scale:
            raise ShapeViolation(f"linear coefficient not cyclic at {tuple(p)}")
        u[p] = c1[0, 1]
        v[p] = c1[1, 2]
        w[p] = c1[2, 0]
    return u, v, w


# -- quadratic forms ----------------------------------------------------------


@dataclass
class QuadraticForms:
    """Edge-integrated pair fields; primed and unprimed sum to products."""
    a: VertexField
    b: VertexField
    c: VertexField
    ap: VertexField
    bp: VertexField
    cp: VertexField


def quadratic_forms(u: VertexField, v: VertexField, w: VertexField,
                    anchor=(0, 0, 0), anchor_values=(0j,) * 6,
                    tau: float = TAU) -> QuadraticForms:
    """Integrate the six difference equations over a spanning tree.

    On an edge z1 -> z2: da = v(z1)*du, db = w(z1)*dv, dc = u(z1)*dw and
    da' = u(z2)*dv, db' = v(z2)*dw, dc' = w(z2)*du.  Closure is audited on
    every elementary triangle; failure raises PathDependent.  The telescoped
    sums satisfy a + a' = u*v + const, etc.
    """
    import collections
    anchor = LatticePoint(*anchor)
    fields = [VertexField(tag) for tag in ("a", "b", "c", "ap", "bp", "cp")]
    for fld, val in zip(fields, anchor_values):
        fld[anchor] = val
    a, b, c, ap, bp, cp = fields
    domain = set(u.points()) & set(v.points()) & set(w.points())
    domain = {p for p in domain
              if not any(is_infinite(x[p]) for x in (u, v, w))}

    def increments(tail, head):
        """Six increments over the positively oriented edge tail -> head."""
        du, dv, dw = u[head] - u[tail], v[head] - v[tail], w[head] - w[tail]
        return (v[tail] * du, w[tail] * dv, u[tail] * dw,
                u[head] * dv, v[head] * dw, w[head] * du)

    steps = ((1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1))
    queue = collections.deque([anchor])
    seen = {anchor}
    while queue:
        p = queue.popleft()
        for dk, dl in steps:
            q = shift(p, dk, dl)
            if q not in domain or q in seen:
                continue
            t = step_direction(p, q)
            if t in (0, 2, 4):
                incs = increments(p, q)
                sign = 1
            else:
                incs = increments(q, p)
                sign = -1
            for fld, inc in zip(fields, incs):
                fld[q] = fld[p] + sign * inc
            seen.add(q)
            queue.append(q)
    # closure audit over elementary triangles
    scale = max(u.finite_scale() * v.finite_scale(),
                v.finite_scale() * w.finite_scale(),
                w.finite_scale() * u.finite_scale(), 1.0)
    for p in seen:
        for corners in (((0, 0), (1, 0), (1, 1)), ((0, 0), (0, 1), (1, 1))):
            tri = [shift(p, dk, dl) for dk, dl in corners]
            if not all(t in seen for t in tri):
                continue
            loop_inc = [0j] * 6
            for i in range(3):
                x, y = tri[i], tri[(i + 1) % 3]
                for slot, inc in enumerate(increments(x, y)):
                    loop_inc[slot] += inc
            if max(abs(z) for z in loop_inc) > tau * scale:
                raise PathDependent(f"quadratic increments do not close at {tuple(p)}")
    return QuadraticForms(a=a, b=b, c=c, ap=ap, bp=bp, cp=cp)


# -- square-lattice extension -------------------------------------------------


def square_extension(l1: EdgeFieldTriple, l2: EdgeFieldTriple,
                     l3: EdgeFieldTriple, l4: EdgeFieldTriple,
                     tau: float = TAU) -> EdgeFieldTriple:
    """Fifth matrix completing a flat square to a triangle pair.

    Requires L1*L2 = L3*L4 (else NotFlat).  Then (1+mu)*(L1*L2)**-1 must be
    of the unipotent three-band class: entries 13, 21, 32 of the inverse
    vanish identically (else NotInClass, signalling the distinctness
    hypothesis fails).  Returns the triple of the recovered matrix.
    """
    m12 = poly_mul(transition_matrix_poly(l1), transition_matrix_poly(l2))
    m34 = poly_mul(transition_matrix_poly(l3), transition_matrix_poly(l4))
    scale = max(1.0, float(np.abs(m12).max()))
    if np.abs(m12 - m34).max() > tau * scale:
        raise NotFlat("L1*L2 != L3*L4")
    adj = poly_adjugate(m12)
    # adj / (1+mu)**2 is the inverse; its 13, 21, 32 entries must vanish
    ascale = max(1.0, float(np.abs(adj).max()))
    for i, j in ((0, 2), (1, 0), (2, 1)):
        if np.abs(adj[i, j]).max() > tau * ascale:
            raise NotInClass(f"inverse entry {(i + 1, j + 1)} does not vanish")
    # divide each entry by (1+mu) once: candidate = (1+mu) * inverse
    cand = np.zeros_like(adj[:, :, :-1])
    for i in range(3):
        for j in range(3):
            quo, rem = poly_divide_linear(adj[i, j])
            if abs(rem) > tau * ascale:
                raise NotInClass(f"entry {(i + 1, j + 1)} not divisible by 1+mu")
            cand[i, j, :len(quo)] = quo

    for i in range(3):
        if (abs(cand[i, i, 0] - 1.0) > tau * ascale
                or np.abs(cand[i, i, 1:]).max() > tau * ascale):
            raise NotInClass("diagonal is not unipotent")
    for i, j in ((0, 1), (1, 2)):
        if cand.shape[2] > 1 and np.abs(cand[i, j, 1:]).max() > tau * ascale:
            raise NotInClass(f"entry {(i + 1, j + 1)} depends on mu")
    if abs(cand[2, 0, 0]) > tau * ascale:
        raise NotInClass("corner entry has a constant term")
    if cand.shape[2] > 2 and np.abs(cand[2, 0, 2:]).max() > tau * ascale:
        raise NotInClass("corner entry is superlinear in mu")
    f0 = complex(cand[0, 1, 0])
    g0 = complex(cand[1, 2, 0])
    h0 = complex(cand[2, 0, 1]) if cand.shape[2] > 1 else 0j
    prod = f0 * g0 * h0
    if abs(prod - 1.0) > tau * max(1.0, abs(prod)):
        raise NotInClass(f"recovered triple has f*g*h = {prod}")
    return EdgeFieldTriple(f=f0, g=g0, h=h0)
