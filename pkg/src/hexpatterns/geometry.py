"""Extended-complex-plane primitives: multi-ratio, Moebius maps, circles.

The point at infinity is the sentinel INFINITY; any complex with an infinite
component is treated as infinite.  Arithmetic follows Riemann-sphere
conventions (1/0 = inf, 1/inf = 0).
"""
import math
from dataclasses import dataclass

from .errors import DegenerateMap, DuplicatePoints, IndeterminateRatio

INFINITY = complex(math.inf, math.inf)

# scale-relative tolerance: residuals compare against TAU * max(1, scale)
TAU = 1e-9


def is_infinite(z) -> bool:
    return math.isinf(z.real) or math.isinf(z.imag)


def tol_for(scale: float, tau: float = TAU) -> float:
    return tau * max(1.0, scale)


def multi_ratio(points):
    """Alternating ratio prod(w1-w2, w3-w4, ...) / prod(w2-w3, ..., w_2p-w1).

    An infinite entry contributes the limit of its two factors (-1).  A zero
    denominator gives INFINITY; a matching zero numerator and denominator
    raise IndeterminateRatio.
    """
    n = len(points)
    if n < 4 or n % 2:
        raise ValueError("multi_ratio needs an even number (>= 4) of points")
    num_factors = []
    den_factors = []
    sign = 1.0
    for j in range(0, n, 2):
        a, b, c = points[j], points[j + 1], points[(j + 2) % n]
        # numerator factor (w_{2j+1} - w_{2j+2}), denominator (w_{2j+2} - w_{2j+3})
        for pair, bucket in (((a, b), num_factors), ((b, c), den_factors)):
            p, q = pair
            if is_infinite(p) and is_infinite(q):
                raise IndeterminateRatio("two adjacent infinite points")
            bucket.append(None if (is_infinite(p) or is_infinite(q)) else p - q)
    # an infinite point sits in exactly one factor of each bucket; the pair
    # of dropped factors tends to -1
    dropped_num = num_factors.count(None)
    dropped_den = den_factors.count(None)
    if dropped_num != dropped_den:
        raise IndeterminateRatio("unbalanced infinite factors")
    sign = (-1.0) ** dropped_num
    num = 1.0 + 0j
    den = 1.0 + 0j
    num_zero = any(f == 0 for f in num_factors if f is not None)
    den_zero = any(f == 0 for f in den_factors if f is not None)
    if num_zero and den_zero:
        raise IndeterminateRatio("matching zero factors in numerator and denominator")
    if den_zero:
        return INFINITY
    for f in num_factors:
        if f is not None:
            num *= f
    for f in den_factors:
        if f is not None:
            den *= f
    return sign * num / den


def mobius_apply(coeffs, z):
    """(a*z + b) / (c*z + d) with Riemann-sphere conventions."""
    a, b, c, d = coeffs
    det = a * d - b * c
    scale = max(abs(a), abs(b), abs(c), abs(d), 1.0)
    if abs(det) <= 1e-14 * scale * scale:
        raise DegenerateMap("ad - bc = 0")
    if is_infinite(z):
        return INFINITY if c == 0 else a / c
    den = c * z + d
    if den == 0:
        return INFINITY
    return (a * z + b) / den


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def point_at(self, angle: float) -> complex:
        return self.center + self.radius * complex(math.cos(angle),
                                                   math.sin(angle))


@dataclass(frozen=True)
class Line:
    """Degenerate circle through infinity: anchor point plus unit direction."""
    anchor: complex
    direction: complex


def circle_through(a, b, c):
    """The unique circle (or line, when collinear) through three points.

    A single infinite input yields the line through the two finite points.
    """
    pts = [a, b, c]
    inf_count = sum(is_infinite(p) for p in pts)
    if inf_count >= 2:
        raise DuplicatePoints("more than one point at infinity")
    finite = [p for p in pts if not is_infinite(p)]
    scale = max(max(abs(p) for p in finite), 1.0)
    for i in range(len(finite)):
        for j in range(i + 1, len(finite)):
            if abs(finite[i] - finite[j]) <= 1e-14 * scale:
                raise DuplicatePoints("coincident input points")
    if inf_count == 1:
        p, q = finite
        return Line(anchor=p, direction=(q - p) / abs(q - p))
    # solve the two perpendicular-bisector equations relative to c
    A = a - c
    B = b - c
    cross = A.real * B.imag - A.imag * B.real
    if abs(cross) <= 1e-13 * scale * scale:
        d = (b - a) / abs(b - a)
        return Line(anchor=a, direction=d)
    sa = abs(A) ** 2
    sb = abs(B) ** 2
    x = (sa * B.imag - sb * A.imag) / (2 * cross)
    y = (sb * A.real - sa * B.real) / (2 * cross)
    center = c + complex(x, y)
    return Circle(center=center, radius=abs(complex(x, y)))


def mobius_circle(coeffs, circ):
    """Image of a circle or line under a Moebius map, via three points.

    The image center is generally not the image of the center.
    """
    if isinstance(circ, Line):
        pts = [circ.anchor, circ.anchor + circ.direction,
               circ.anchor - circ.direction]
    else:
        pts = [circ.point_at(a) for a in (0.0, 2.0, 4.0)]
    return circle_through(*[mobius_apply(coeffs, p) for p in pts])


def reflect_in_circle(p, circ):
    """Inversion in a proper circle, mirror reflection in a line.

    reflect(inf) is the center for a proper circle, inf for a line.
    """
    if isinstance(circ, Line):
        if is_infinite(p):
            return INFINITY
        d = circ.direction
        return circ.anchor + d * ((p - circ.anchor) / d).conjugate()
    if is_infinite(p):
        return circ.center
    dz = p - circ.center
    if dz == 0:
        return INFINITY
    return circ.center + circ.radius * circ.radius / dz.conjugate()


def fit_circle_with_center(points, center):
    """Radius = mean distance to center; deviation = max | |p-c| - radius |."""
    dists = [abs(p - center) for p in points]
    radius = sum(dists) / len(dists)
    return radius, max(abs(d - radius) for d in dists)


def solve_sixth_point(w2, w3, w4, w5, w6):
    """The value w1 making multi_ratio(w1..w6) = -1 (a Moebius solve in w1)."""
    A = (w3 - w4) * (w5 - w6)
    B = (w2 - w3) * (w4 - w5)
    if A == B:
        return INFINITY
    return (A * w2 - B * w6) / (A - B)
