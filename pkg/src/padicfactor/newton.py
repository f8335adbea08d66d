"""Newton polygons of phi-expansions: lower hulls of the value cloud
(s, mu(a_s phi^s)), principal parts, slope components, polygon sums, and
value reading.

A polygon keeps both its hull vertices (strictly increasing slopes,
collinear interior points dropped) and the full finite cloud, so interior
points stay queryable.  Zero coefficients contribute no cloud point; the
zero polynomial gives the empty polygon.
"""

from fractions import Fraction

from .arith import INFINITY
from .valuation import phi_expansion


class NewtonPolygon(object):
    __slots__ = ('vertices', 'cloud')

    def __init__(self, vertices, cloud=None):
        vv = tuple((int(s), Fraction(q)) for s, q in vertices)
        object.__setattr__(self, 'vertices', vv)
        if cloud is None:
            cloud = dict(vv)
        object.__setattr__(self, 'cloud', dict(cloud))

    def __setattr__(self, name, value):
        raise AttributeError('NewtonPolygon is immutable')

    @property
    def is_empty(self):
        return not self.vertices

    @property
    def left(self):
        return self.vertices[0]

    @property
    def right(self):
        return self.vertices[-1]

    @property
    def length(self):
        """Abscissa of the right endpoint."""
        return self.vertices[-1][0]

    def slopes(self):
        out = []
        for (s0, q0), (s1, q1) in zip(self.vertices, self.vertices[1:]):
            out.append(Fraction(q1 - q0, s1 - s0))
        return out

    def sides(self, e_prev=1):
        """(slope, horizontal length, degree) per side; the degree divides
        the length by the ramification of the slope over the value group
        (1/e_prev)Z."""
        out = []
        for (s0, q0), (s1, q1) in zip(self.vertices, self.vertices[1:]):
            slope = Fraction(q1 - q0, s1 - s0)
            e = (e_prev * slope).denominator
            out.append((slope, s1 - s0, (s1 - s0) // e))
        return out

    def __eq__(self, other):
        if isinstance(other, NewtonPolygon):
            return self.vertices == other.vertices
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __repr__(self):
        return 'NewtonPolygon(%r)' % (list(self.vertices),)


class Component(object):
    """The segment of a polygon touched by a line of slope -lambda:
    abscissas s_lo..s_hi, left-endpoint ordinate u/e_prev."""

    __slots__ = ('s_lo', 's_hi', 'u')

    def __init__(self, s_lo, s_hi, u):
        object.__setattr__(self, 's_lo', int(s_lo))
        object.__setattr__(self, 's_hi', int(s_hi))
        object.__setattr__(self, 'u', int(u))

    def __setattr__(self, name, value):
        raise AttributeError('Component is immutable')

    def __eq__(self, other):
        if isinstance(other, Component):
            return (self.s_lo, self.s_hi, self.u) == \
                (other.s_lo, other.s_hi, other.u)
        return NotImplemented

    def __repr__(self):
        return 'Component(s_lo=%d, s_hi=%d, u=%d)' % (self.s_lo, self.s_hi, self.u)


def _lower_hull(points):
    """Lower convex hull of (s, q) points with distinct s, sorted by s;
    collinear interior points are dropped."""
    hull = []
    for s, q in points:
        while len(hull) >= 2:
            s0, q0 = hull[-2]
            s1, q1 = hull[-1]
            # pop while the middle point is not strictly below the chord
            if (q - q1) * (s1 - s0) <= (q1 - q0) * (s - s1):
                hull.pop()
            else:
                break
        hull.append((s, q))
    return hull


def newton_polygon(mu, phi, g):
    """Polygon of g with respect to (mu, phi): lower hull of the points
    (s, mu(a_s phi^s)) over the canonical phi-expansion of g."""
    if g.is_zero:
        return NewtonPolygon((), {})
    vphi = mu.valuate(phi)
    cloud = {}
    for s, a in enumerate(phi_expansion(g, phi)):
        if not a.is_zero:
            cloud[s] = mu.valuate(a) + s * vphi
    return NewtonPolygon(_lower_hull(sorted(cloud.items())), cloud)


def principal_part(N):
    """The sides of strictly negative slope; the left endpoint alone when
    there are none."""
    if N.is_empty:
        return N
    keep = [N.vertices[0]]
    for (s0, q0), (s1, q1) in zip(N.vertices, N.vertices[1:]):
        if q1 - q0 >= 0:
            break
        keep.append((s1, q1))
    sub = {s: q for s, q in N.cloud.items() if s <= keep[-1][0]}
    return NewtonPolygon(keep, sub)


def value_from_polygon(N, lam):
    """Ordinate at which the touching line of slope -lam meets the
    vertical axis: the value of g under [mu; (phi, lam)]."""
    if N.is_empty:
        return INFINITY
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError('lambda must be nonnegative')
    return min(q + s * lam for s, q in N.vertices)


def lambda_component(N, lam, e_prev=1):
    """Endpoints of the polygon segment lying on the touching line of
    slope -lam, with the left ordinate as the integer u over 1/e_prev."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError('lambda must be positive')
    if N.is_empty:
        raise ValueError('empty polygon has no components')
    vmin = min(q + s * lam for s, q in N.vertices)
    touch = [s for s, q in N.vertices if q + s * lam == vmin]
    s_lo, s_hi = min(touch), max(touch)
    u = e_prev * N.cloud[s_lo] if s_lo in N.cloud else \
        e_prev * dict(N.vertices)[s_lo]
    if u.denominator != 1:
        raise ValueError('left ordinate not in the value group (1/%d)Z' % e_prev)
    return Component(s_lo, s_hi, u.numerator)


def polygon_add(N1, N2):
    """Sum of polygons: left endpoints add as vectors, sides of both merge
    by increasing slope.  The empty polygon is absorbing."""
    if N1.is_empty or N2.is_empty:
        return NewtonPolygon((), {})
    sides = []
    for N in (N1, N2):
        for (s0, q0), (s1, q1) in zip(N.vertices, N.vertices[1:]):
            sides.append((Fraction(q1 - q0, s1 - s0), s1 - s0))
    sides.sort(key=lambda t: t[0])
    s = N1.left[0] + N2.left[0]
    q = N1.left[1] + N2.left[1]
    verts = [(s, q)]
    for slope, ds in sides:
        s += ds
        q += slope * ds
        if len(verts) >= 2:
            s0, q0 = verts[-2]
            s1, q1 = verts[-1]
            if (q - q1) * (s1 - s0) == (q1 - q0) * (s - s1):
                verts.pop()
        verts.append((s, q))
    return NewtonPolygon(verts)
