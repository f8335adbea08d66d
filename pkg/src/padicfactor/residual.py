"""Residual polynomial operators over the residue tower of an inductive
valuation: the twisted coefficient maps R_{level,alpha}, the normalized
operators R_level, epsilon units, homogeneous triples, residual ideals,
key-polynomial tests, and key-polynomial construction.

Level conventions match the valuation module: level 0 is the base, where
R_{0,alpha}(g) is the coefficient-wise reduction of g/p^alpha (keeping
powers of y) and epsilon_0 is identically 1.  For level i >= 1 the j-th
coefficient of R_{i,alpha}(g) reads the phi_i-expansion coefficient at
s_j = s(alpha) + j*e_i, reduced one level down at alpha_j =
alpha - s_j*(w_i + lambda_i), evaluated at the tower generator z_{i-1},
and twisted by epsilon_{i-1}(alpha_j).
"""

from fractions import Fraction

from .arith import (
    QPoly, FFElem, FFPoly,
    fraction_mod_p, ff_is_irreducible, format_ff_poly, format_poly,
)
from .valuation import phi_expansion, KeyPolyError
from .newton import newton_polygon, principal_part, lambda_component


def s_u_of_alpha(mu, level, alpha):
    """The unique (s, u) with u*e_i + s*h_i = e(mu_i)*alpha and
    0 <= s < e_i, for alpha in the level value group (1/e(mu_i))Z."""
    alpha = Fraction(alpha)
    N = mu.E(level) * alpha
    if N.denominator != 1:
        raise ValueError('%s is not in the level-%d value group (1/%d)Z'
                         % (alpha, level, mu.E(level)))
    N = N.numerator
    e, h = mu.e(level), mu.h(level)
    if level == 0:
        return 0, N
    l, _ = mu.bezout(level)
    s = (N * l) % e
    return s, (N - s * h) // e


def epsilon(mu, level, alpha):
    """The unit eps_level(alpha) = z_level^(l'_level*s(alpha) - l_level*u(alpha))
    in the field at tower level level+1; identically 1 at level 0."""
    if not 0 <= level < mu.depth:
        raise ValueError('epsilon needs 0 <= level < depth')
    t = mu.tower
    if level == 0:
        # convention: the exponent is always 0 here, and z_0 may be 0
        return FFElem(t, 1, t.one(1))
    s, u = s_u_of_alpha(mu, level, alpha)
    l, lp = mu.bezout(level)
    k = lp * s - l * u
    return FFElem(t, level + 1, t.pow(level + 1, t.gen(level + 1), k))


def _gen_value(tower, fpoly, level):
    # value of a level-(level-1) polynomial at the class of y in level
    raw = [tower.embed(c, level - 1, level) for c in fpoly.coeffs]
    return tower.peval(level, raw, tower.gen(level))


def R_alpha(mu, level, alpha, g):
    """The alpha-slice residual polynomial of g at the given level; zero
    iff the level value of g exceeds alpha.  Requires value >= alpha."""
    nu = mu.truncated(level)
    t = nu.tower
    alpha = Fraction(alpha)
    if g.is_zero:
        return FFPoly(t, level, [])
    if nu.valuate(g) < alpha:
        raise ValueError('value of g below alpha: %s < %s'
                         % (nu.valuate(g), alpha))
    if level == 0:
        if alpha.denominator != 1:
            raise ValueError('alpha not in Z at level 0')
        pw = Fraction(nu.p) ** alpha.numerator
        return FFPoly(t, 0, [fraction_mod_p(c / pw, nu.p) for c in g.coeffs])
    e = nu.e(level)
    step = nu.key_value(level)
    s0, _ = s_u_of_alpha(nu, level, alpha)
    exp = phi_expansion(g, nu.phi(level))
    coeffs = []
    s_j = s0
    while s_j < len(exp):
        a = exp[s_j]
        alpha_j = alpha - s_j * step
        if a.is_zero:
            coeffs.append(t.zero(level))
        else:
            sub = R_alpha(nu, level - 1, alpha_j, a)
            val = _gen_value(t, sub, level)
            eps = epsilon(nu, level - 1, alpha_j)
            coeffs.append(t.mul(level, eps.raw, val))
        s_j += e
    return FFPoly(t, level, coeffs)


def R(mu, level, g):
    """The residual polynomial R_level(g): the alpha-slice at the exact
    value of g, with the trailing power of y stripped for level >= 1.
    R(0) is the zero polynomial."""
    nu = mu.truncated(level)
    if g.is_zero:
        return FFPoly(nu.tower, level, [])
    out = R_alpha(nu, level, nu.valuate(g), g)
    if level >= 1:
        out = out.shift(-out.ord_y())
    return out


################################################################################
# Homogeneous triples and residual ideals
################################################################################


class HomogElem(object):
    """The homogeneous part of g as the triple (s, u, R): exponents of the
    level generators times the unit residual polynomial.  At depth 0 the
    triple degenerates to (0, v(g), reduction of g/p^v)."""

    __slots__ = ('s', 'u', 'R')

    def __init__(self, s, u, Rpoly):
        object.__setattr__(self, 's', int(s))
        object.__setattr__(self, 'u', int(u))
        object.__setattr__(self, 'R', Rpoly)

    def __setattr__(self, name, value):
        raise AttributeError('HomogElem is immutable')

    def __eq__(self, other):
        if isinstance(other, HomogElem):
            return (self.s, self.u, self.R) == (other.s, other.u, other.R)
        return NotImplemented

    def __mul__(self, other):
        return HomogElem(self.s + other.s, self.u + other.u, self.R * other.R)

    def __repr__(self):
        return 'HomogElem(s=%d, u=%d, R=%s)' % (self.s, self.u,
                                                format_ff_poly(self.R))


class ResidualIdeal(object):
    """The ideal y^k * psi_part(y) of the residue polynomial ring."""

    __slots__ = ('k', 'psi_part')

    def __init__(self, k, psi_part):
        object.__setattr__(self, 'k', int(k))
        object.__setattr__(self, 'psi_part', psi_part)

    def __setattr__(self, name, value):
        raise AttributeError('ResidualIdeal is immutable')

    def __eq__(self, other):
        if isinstance(other, ResidualIdeal):
            return (self.k, self.psi_part) == (other.k, other.psi_part)
        return NotImplemented

    def __repr__(self):
        return 'ResidualIdeal(k=%d, psi_part=%s)' % (self.k,
                                                     format_ff_poly(self.psi_part))


def homog(mu, g):
    """The complete homogeneous invariant of g under mu."""
    if g.is_zero:
        raise ValueError('the zero polynomial has no homogeneous part')
    r = mu.depth
    if r == 0:
        v = mu.valuate(g)
        return HomogElem(0, v, R(mu, 0, g))
    parent = mu.truncated(r - 1)
    N = newton_polygon(parent, mu.phi(r), g)
    comp = lambda_component(N, mu.lam(r), mu.E(r - 1))
    return HomogElem(comp.s_lo, comp.u, R(mu, r, g))


def residual_ideal(mu, g):
    """The residual ideal of g: y-power times the monic unit part."""
    if g.is_zero:
        raise ValueError('the zero polynomial has no residual ideal')
    r = mu.depth
    if r == 0:
        R0 = R(mu, 0, g)
        k = R0.ord_y()
        return ResidualIdeal(k, R0.shift(-k).monic())
    hom = homog(mu, g)
    return ResidualIdeal(-(-hom.s // mu.e(r)), hom.R.monic())


################################################################################
# Key polynomials
################################################################################


class KeyVerdict(object):
    """Outcome of is_key_poly: truthy Yes with proper/strong flags, or a
    falsy No carrying the reason."""

    __slots__ = ('ok', 'proper', 'strong', 'reason')

    def __init__(self, ok, proper=False, strong=False, reason=''):
        object.__setattr__(self, 'ok', ok)
        object.__setattr__(self, 'proper', proper)
        object.__setattr__(self, 'strong', strong)
        object.__setattr__(self, 'reason', reason)

    def __setattr__(self, name, value):
        raise AttributeError('KeyVerdict is immutable')

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return 'Yes(proper=%r, strong=%r)' % (self.proper, self.strong)
        return 'No(%s)' % (self.reason,)


def is_key_poly(mu, phi):
    """Decide whether phi is a key polynomial for mu.

    Depth 0: monic integer polynomials with irreducible reduction mod p.
    Depth r >= 1, via the lambda_r-component (s, s') of the polygon of phi
    over the previous level: either phi lies in the class of phi_r (equal
    degree, s = s' = 1), or s = 0, deg phi = s'*m_r and the residual
    polynomial is irreducible.  Proper means e_r*m_r divides deg phi;
    strong means deg phi exceeds m_r (every depth-0 key is both).
    """
    if not (phi.is_monic and phi.is_integral and phi.degree >= 1):
        return KeyVerdict(False, reason='keys are monic, non-constant, '
                          'with integer coefficients')
    r = mu.depth
    if r == 0:
        red = FFPoly(mu.tower, 0, [fraction_mod_p(c, mu.p) for c in phi.coeffs])
        if red.degree == phi.degree and ff_is_irreducible(red):
            return KeyVerdict(True, proper=True, strong=True)
        return KeyVerdict(False, reason='reduction mod p is not irreducible')
    m = mu.m(r)
    if phi.degree % m:
        return KeyVerdict(False, reason='degree is not a multiple of %d' % m)
    parent = mu.truncated(r - 1)
    N = newton_polygon(parent, mu.phi(r), phi)
    comp = lambda_component(N, mu.lam(r), mu.E(r - 1))
    s, sp = comp.s_lo, comp.s_hi
    if phi.degree == m and s == 1 and sp == 1:
        return KeyVerdict(True, proper=(mu.e(r) == 1), strong=False)
    if s == 0 and phi.degree == sp * m:
        if ff_is_irreducible(R(mu, r, phi)):
            return KeyVerdict(True, proper=True, strong=(phi.degree > m))
        return KeyVerdict(False, reason='residual polynomial is reducible')
    return KeyVerdict(False, reason='component (s=%d, s\'=%d) admits no key '
                      'of degree %d' % (s, sp, phi.degree))


def ord_key(mu, phi, g, check=True):
    """Multiplicity of the class of phi in g: the length of the principal
    polygon."""
    if g.is_zero:
        raise ValueError('ord of the zero polynomial')
    if check:
        verdict = is_key_poly(mu, phi)
        if not verdict:
            raise KeyPolyError('not a key polynomial: %s' % verdict.reason)
    return principal_part(newton_polygon(mu, phi, g)).length


def _lift(mu, level, beta, t):
    """Integer polynomial of degree < m_{level+1} whose level value is beta
    and whose twisted residual data reads back as the field element t.

    t lives at tower level level+1; its raw coordinates are the canonical
    representative T(y) of degree < f_level, processed coordinate-wise.
    """
    tower = mu.tower
    if level == 0:
        beta = Fraction(beta)
        if beta.denominator != 1 or beta < 0:
            raise AssertionError('level-0 lift needs beta a nonnegative '
                                 'integer, got %s' % beta)
        return QPoly(list(t.raw)) * (Fraction(mu.p) ** beta.numerator)
    e = mu.e(level)
    step = mu.key_value(level)
    s0, _ = s_u_of_alpha(mu, level, beta)
    out = QPoly()
    for j, cj in enumerate(t.raw):
        if tower.is_zero(level, cj):
            continue
        s_j = s0 + j * e
        beta_j = beta - s_j * step
        tgt = FFElem(tower, level, cj) / epsilon(mu, level - 1, beta_j)
        out = out + _lift(mu, level - 1, beta_j, tgt) * mu.phi(level) ** s_j
    return out


def construct_key_poly(mu, psi):
    """A monic integer key polynomial for mu with residual polynomial psi.

    Degree e_r * deg(psi) * m_r, value e_r * deg(psi) * (w_r + lambda_r).
    psi must be monic and irreducible over the top residue field, with
    psi(0) != 0 for depth >= 1 (psi = y is allowed at depth 0, where the
    key is just the minimal-residue lift).
    """
    r = mu.depth
    if not (isinstance(psi, FFPoly) and psi.level == r
            and mu.tower.compatible(psi.tower, r)):
        raise ValueError('psi must be a polynomial over the top residue field')
    if psi.degree < 1 or not psi.is_monic:
        raise ValueError('psi must be monic of degree at least 1')
    if not ff_is_irreducible(psi):
        raise ValueError('psi is reducible')
    if r == 0:
        return QPoly(list(psi.coeffs))
    if psi.coeff(0).is_zero:
        raise ValueError('psi(0) = 0 only names the class of phi_r; '
                         'construct needs a unit constant term')
    f = psi.degree
    e = mu.e(r)
    step = mu.key_value(r)
    alpha = e * f * step
    phi = mu.phi(r) ** (e * f)
    for j in range(f):
        c = psi.coeff(j)
        if c.is_zero:
            continue
        s_j = j * e
        alpha_j = alpha - s_j * step
        tgt = c / epsilon(mu, r - 1, alpha_j)
        phi = phi + _lift(mu, r - 1, alpha_j, tgt) * mu.phi(r) ** s_j
    return phi
