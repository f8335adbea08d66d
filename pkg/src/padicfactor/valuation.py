"""Inductive valuations on Q[x] over the p-adic valuation.

A Valuation is a chain of augmentation steps over the base valuation
mu0 (minimum p-adic value of the coefficients): steps (phi_1, lambda_1),
..., (phi_r, lambda_r) with each phi_i a monic integer key polynomial and
lambda_i a positive rational.  Level indexing is 1-based; level 0 is the
base, with the conventions phi_0 = x, lambda_0 = 0, e_0 = 1, h_0 = 0,
m_0 = 1, w_0 = 0, V_0 = 0, C_0 = 0 and Bezout pair (0, 1).

Numerical data per level i >= 1 of an optimal chain (strictly increasing
key degrees):

    m_i = deg phi_i
    w_i = value of phi_i one level down
    e(mu_i) = E_i with E_0 = 1, e_i = E_i / E_{i-1}
    e_i, h_i: E_{i-1} * lambda_i = h_i / e_i in lowest terms
    V_i = E_{i-1} * w_i  (an integer)
    C_i = (w_i + lambda_i) / m_i, strictly increasing in i
    l_i * h_i + l'_i * e_i = 1 with 0 <= l_i < e_i

The residue tower L_0 = F_p < L_1 < ... < L_r is built lazily; its
extension polynomials are the residual images of the keys, so f_i (the
residue degree of level i) is the degree of the i-th extension.

Chains with repeated key degrees (refinements) may be constructed
directly and evaluated, but their numerical data is only defined after
optimize_chain collapses them.
"""

from fractions import Fraction

from .arith import (
    INFINITY, QPoly, vp,
    parse_poly, format_poly, parse_rational, format_rational,
)


class KeyPolyError(ValueError):
    """Raised when an augmentation is attempted with a non-key polynomial."""


def phi_expansion(g, phi):
    """Canonical phi-expansion: coefficients a_s with g = sum a_s phi^s and
    deg a_s < deg phi, lowest s first."""
    if phi.degree < 1 or not phi.is_monic:
        raise ValueError('expansion requires a monic non-constant phi')
    out = []
    while True:
        g, r = divmod(g, phi)
        out.append(r)
        if g.is_zero:
            return out


class Valuation(object):
    """An inductive valuation, stored as its augmentation chain."""

    __slots__ = ('p', 'steps', '_w', '_E', '_eh', '_bez', '_tower', '_trunc')

    def __init__(self, p, steps=()):
        if p < 2:
            raise ValueError('p must be at least 2')
        norm = []
        prev_deg = 1
        for phi, lam in steps:
            lam = Fraction(lam)
            if not (isinstance(phi, QPoly) and phi.is_monic and phi.is_integral
                    and phi.degree >= 1):
                raise ValueError('keys must be monic integer polynomials')
            if lam <= 0:
                raise ValueError('step slopes must be positive')
            if phi.degree % prev_deg:
                raise ValueError('key degrees must form a divisibility chain')
            prev_deg = phi.degree
            norm.append((phi, lam))
        object.__setattr__(self, 'p', p)
        object.__setattr__(self, 'steps', tuple(norm))
        # w_i = value of phi_i at level i-1, computed bottom-up
        w = [Fraction(0)]
        for i in range(1, len(norm) + 1):
            w.append(self._val(i - 1, norm[i - 1][0], w))
        object.__setattr__(self, '_w', tuple(w))
        object.__setattr__(self, '_E', None)
        object.__setattr__(self, '_eh', None)
        object.__setattr__(self, '_bez', None)
        object.__setattr__(self, '_tower', None)
        object.__setattr__(self, '_trunc', {})

    def __setattr__(self, name, value):
        raise AttributeError('Valuation is immutable')

    # -- chain access -----------------------------------------------------

    @property
    def depth(self):
        return len(self.steps)

    def phi(self, i):
        if i == 0:
            return QPoly.x()
        return self.steps[i - 1][0]

    def lam(self, i):
        if i == 0:
            return Fraction(0)
        return self.steps[i - 1][1]

    def m(self, i):
        if i == 0:
            return 1
        return self.steps[i - 1][0].degree

    @property
    def is_optimal(self):
        return all(self.m(i) < self.m(i + 1) for i in range(1, self.depth))

    def truncated(self, i):
        """The level-i valuation of the chain (first i steps)."""
        if i == self.depth:
            return self
        if i not in self._trunc:
            self._trunc[i] = Valuation(self.p, self.steps[:i])
        return self._trunc[i]

    def __eq__(self, other):
        # structural identity; use equals() for valuation equality
        if isinstance(other, Valuation):
            return self.p == other.p and self.steps == other.steps
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.p, self.steps))

    def __repr__(self):
        inner = ';'.join('(%s,%s)' % (format_poly(f), format_rational(l))
                         for f, l in self.steps)
        return 'Valuation(p=%d%s)' % (self.p, ';' + inner if inner else '')

    # -- evaluation --------------------------------------------------------

    def _val(self, level, g, w):
        if g.is_zero:
            return INFINITY
        if level == 0:
            return min(vp(c, self.p) for c in g.coeffs)
        phi, lam = self.steps[level - 1]
        step = w[level] + lam
        best = INFINITY
        for s, a in enumerate(phi_expansion(g, phi)):
            if a.is_zero:
                continue
            v = self._val(level - 1, a, w) + s * step
            if v < best:
                best = v
        return best

    def valuate(self, g):
        """Value of g in Q[x]; INFINITY for g = 0."""
        return self._val(self.depth, g, self._w)

    def w(self, i):
        """Value of phi_i one level down: w_i = mu_{i-1}(phi_i)."""
        return self._w[i]

    def key_value(self, i):
        """mu_i(phi_i) = w_i + lambda_i."""
        return self._w[i] + self.lam(i)

    # -- numerical data (optimal chains only) -------------------------------

    def _numerics(self):
        if self._E is None:
            if not self.is_optimal:
                raise ValueError('numerical data requires an optimal chain; '
                                 'call optimize_chain first')
            E = [1]
            eh = [(1, 0)]
            bez = [(0, 1)]
            for i in range(1, self.depth + 1):
                t = E[i - 1] * self.lam(i)
                e, h = t.denominator, t.numerator
                eh.append((e, h))
                E.append(e * E[i - 1])
                l = pow(h, -1, e) if e > 1 else 0
                bez.append((l, (1 - l * h) // e))
            object.__setattr__(self, '_E', tuple(E))
            object.__setattr__(self, '_eh', tuple(eh))
            object.__setattr__(self, '_bez', tuple(bez))
        return self._E, self._eh, self._bez

    def E(self, i):
        """e(mu_i): the value group of level i is (1/E_i)Z."""
        return self._numerics()[0][i]

    def e(self, i):
        return self._numerics()[1][i][0]

    def h(self, i):
        return self._numerics()[1][i][1]

    def bezout(self, i):
        """(l_i, l'_i) with l_i h_i + l'_i e_i = 1 and 0 <= l_i < e_i."""
        return self._numerics()[2][i]

    def V(self, i):
        if i == 0:
            return 0
        v = self.E(i - 1) * self._w[i]
        if v.denominator != 1:
            raise AssertionError('w_%d not in the level-%d value group' % (i, i - 1))
        return v.numerator

    def C(self, i):
        if i == 0:
            return Fraction(0)
        return (self._w[i] + self.lam(i)) / self.m(i)

    # -- residue tower -------------------------------------------------------

    @property
    def tower(self):
        """FFTower with levels L_0..L_r; level i+1 is cut out by the
        residual image of phi_{i+1} at level i."""
        if self._tower is None:
            from .arith import FFTower
            from . import residual
            if self.depth == 0:
                t = FFTower(self.p)
            else:
                parent = self.truncated(self.depth - 1)
                psi = residual.R(parent, parent.depth, self.phi(self.depth))
                t = parent.tower.extended(psi)
            object.__setattr__(self, '_tower', t)
        return self._tower

    def f(self, i):
        """Residue degree f_i = deg psi_i, defined for 0 <= i < depth."""
        if not 0 <= i < self.depth:
            raise IndexError('f_i is defined by the chain only for i < depth')
        return self.tower.ext_degree(i)

    def psi(self, i):
        """The level-i extension polynomial psi_i as an FFPoly, i < depth."""
        from .arith import FFPoly
        t = self.tower
        return FFPoly(t, i, list(t.extensions[i]))


def mu0(p):
    """The depth-0 valuation: minimum vp over the coefficients."""
    return Valuation(p)


def valuate(mu, g):
    return mu.valuate(g)


def augment(mu, phi, lam, check=True):
    """[mu; (phi, lam)]: the augmented valuation sending phi to
    mu(phi) + lam.  A key of the same degree as the last key collapses
    into that step (the chain stays optimal); otherwise the chain grows
    by one level.  With check, phi is verified to be a key polynomial
    for mu."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError('lambda must be positive')
    if not (phi.is_monic and phi.is_integral and phi.degree >= 1):
        raise KeyPolyError('key polynomials are monic with integer coefficients')
    if check:
        from . import residual
        verdict = residual.is_key_poly(mu, phi)
        if not verdict:
            raise KeyPolyError('not a key polynomial for %r: %s'
                               % (mu, verdict.reason))
    r = mu.depth
    if r >= 1 and phi.degree == mu.m(r):
        steps = mu.steps[:-1] + ((phi, mu.lam(r) + lam),)
    else:
        steps = mu.steps + ((phi, lam),)
    return Valuation(mu.p, steps)


def optimize_chain(mu, check=False):
    """Equivalent valuation whose chain has strictly increasing key
    degrees, produced by re-augmenting step by step (equal-degree steps
    merge)."""
    if mu.is_optimal and not check:
        return mu
    out = mu0(mu.p)
    for phi, lam in mu.steps:
        out = augment(out, phi, lam, check=check)
    return out


def equals(mu, nu):
    """Valuation equality: optimize both chains, then compare depth, key
    degrees, slopes, and key classes level by level."""
    if mu.p != nu.p:
        raise ValueError('valuations over different primes')
    a = optimize_chain(mu)
    b = optimize_chain(nu)
    if a.depth != b.depth:
        return False
    for i in range(1, a.depth + 1):
        if a.m(i) != b.m(i) or a.lam(i) != b.lam(i):
            return False
        # phi'_i must lie in the same key class: equal values at level i
        if a.truncated(i).valuate(b.phi(i)) != a.key_value(i):
            return False
    return True


def invariants(mu):
    """All per-level numerical data of the (optimized) chain, plus the
    total ramification e(mu); Gamma(mu) = (1/e(mu))Z."""
    mu = optimize_chain(mu)
    r = mu.depth
    return {
        'depth': r,
        'm': [mu.m(i) for i in range(r + 1)],
        'lambda': [mu.lam(i) for i in range(r + 1)],
        'e': [mu.e(i) for i in range(r + 1)],
        'h': [mu.h(i) for i in range(r + 1)],
        'f': [mu.f(i) for i in range(r)],
        'w': [mu.w(i) for i in range(r + 1)],
        'V': [mu.V(i) for i in range(r + 1)],
        'C': [mu.C(i) for i in range(r + 1)],
        'bezout': [mu.bezout(i) for i in range(r + 1)],
        'e_mu': mu.E(r),
    }


################################################################################
# Interval decomposition
################################################################################


class IntervalSegment(object):
    """One totally ordered segment {[mu_{i-1}; (phi, rho)] : lo <= rho < hi}."""

    __slots__ = ('phi', 'lambda_lo', 'lambda_hi')

    def __init__(self, phi, lambda_lo, lambda_hi):
        object.__setattr__(self, 'phi', phi)
        object.__setattr__(self, 'lambda_lo', Fraction(lambda_lo))
        object.__setattr__(self, 'lambda_hi',
                           lambda_hi if lambda_hi is INFINITY else Fraction(lambda_hi))

    def __setattr__(self, name, value):
        raise AttributeError('IntervalSegment is immutable')

    def __eq__(self, other):
        if isinstance(other, IntervalSegment):
            return (self.phi, self.lambda_lo, self.lambda_hi) == \
                (other.phi, other.lambda_lo, other.lambda_hi)
        return NotImplemented

    def __repr__(self):
        return 'IntervalSegment(%s, [%s, %s))' % (
            format_poly(self.phi), format_rational(self.lambda_lo),
            format_rational(self.lambda_hi))


class IntervalDescription(object):
    __slots__ = ('segments',)

    def __init__(self, segments):
        object.__setattr__(self, 'segments', tuple(segments))

    def __setattr__(self, name, value):
        raise AttributeError('IntervalDescription is immutable')

    def __repr__(self):
        return 'IntervalDescription(%r)' % (list(self.segments),)


def interval_decomposition(report):
    """The totally ordered interval below the pseudo-valuation of a factor,
    cut into one segment per chain level plus the final segment along the
    factor approximation."""
    mu = report.muF
    segs = [IntervalSegment(mu.phi(i), 0, mu.lam(i))
            for i in range(1, mu.depth + 1)]
    segs.append(IntervalSegment(report.phi, 0, INFINITY))
    return IntervalDescription(segs)


################################################################################
# Chain JSON format
################################################################################


def chain_to_json(mu):
    return {'p': mu.p,
            'steps': [{'phi': format_poly(phi), 'lambda': format_rational(lam)}
                      for phi, lam in mu.steps]}


def chain_from_json(obj, check=True):
    """Build a valuation from the chain format, validating and collapsing
    each step in order."""
    try:
        p = int(obj['p'])
        raw = [(parse_poly(step['phi']), parse_rational(step['lambda']))
               for step in obj['steps']]
    except (KeyError, TypeError) as exc:
        raise ValueError('malformed chain object: %s' % (exc,))
    out = mu0(p)
    for phi, lam in raw:
        out = augment(out, phi, lam, check=check)
    return out


################################################################################
# Formal uniformizer vectors (test support)
################################################################################


def exponent_vectors(mu):
    """Exponent vectors over the basis (p, phi_1, ..., phi_r) for the
    canonical level uniformizers pi_i (i = 1..r+1), the normalized keys
    Phi_i, and the value-zero units gamma_i (i = 1..r).  These are formal
    monomials in p and the keys; evaluate them with vector_value."""
    r = mu.depth
    width = r + 1

    def unit(j):
        v = [0] * width
        v[j] = 1
        return tuple(v)

    def comb(a, ca, b, cb):
        return tuple(ca * x + cb * y for x, y in zip(a, b))

    pi = {1: unit(0)}
    Phi = {}
    gamma = {}
    for i in range(1, r + 1):
        Phi[i] = comb(unit(i), 1, pi[i], -mu.V(i))
        gamma[i] = comb(Phi[i], mu.e(i), pi[i], -mu.h(i))
        li, lpi = mu.bezout(i)
        pi[i + 1] = comb(Phi[i], li, pi[i], lpi)
    return {'pi': pi, 'Phi': Phi, 'gamma': gamma}


def vector_value(mu, vec, level):
    """Value under mu_level of a formal monomial p^{n_0} prod phi_k^{n_k}."""
    nu = mu.truncated(level)
    out = Fraction(vec[0])
    for k in range(1, len(vec)):
        if vec[k]:
            out += vec[k] * nu.valuate(mu.phi(k))
    return out
