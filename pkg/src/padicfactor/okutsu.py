"""Factorization over the p-adic integers driven by inductive valuations.

A FactorReport pairs a monic integer approximation phi with the canonical
data of the p-adic factor it tracks: muF is the optimal chain below the
factor, psi generates the residual ideal of the factor over muF, and nu is
the certifying chain actually used for refinement (nu = muF while phi is a
strong key of muF; degree-stable refinements carry phi as the top
representative of nu instead).  certified_value is the exact valuation
v(phi(theta)) at a root theta of the tracked factor, INFINITY when phi
divides the input exactly.

The driver walks a work list of (valuation, residual class) pairs: the key
realizing the class is constructed, exact divisors are peeled off, and each
negative side of the key polygon spawns an augmented valuation whose
residual factors either certify an irreducible factor (multiplicity one) or
recurse one level deeper.  Chains stay optimal throughout: same-degree keys
collapse into their step, which is exactly the representative shift needed
when a branch lands back on the class of the current key.
"""

from fractions import Fraction

from .arith import (
    INFINITY, QPoly, FFPoly, ff_factor, format_poly, format_rational,
    fraction_mod_p, poly_gcd, resultant, vp,
)
from .newton import newton_polygon, principal_part
from .residual import R, construct_key_poly, ord_key
from .valuation import Valuation, augment, equals, mu0, phi_expansion


class InputError(ValueError):
    """Raised for inputs outside the factorization contract."""


class AlreadyExact(Exception):
    """Raised by refine when the approximation divides the input exactly."""


_MAX_REFINE = 200
_MAX_BRANCH = 500


class FactorReport(object):
    """One certified p-adic irreducible factor of g."""

    __slots__ = ('phi', 'muF', 'psi', 'e', 'f', 'depth', 'delta0',
                 'certified_value', 'nu', 'g')

    def __init__(self, phi, muF, psi, nu, g, certified_value):
        d = muF.depth
        object.__setattr__(self, 'phi', phi)
        object.__setattr__(self, 'muF', muF)
        object.__setattr__(self, 'psi', psi)
        object.__setattr__(self, 'nu', nu)
        object.__setattr__(self, 'g', g)
        object.__setattr__(self, 'certified_value', certified_value)
        object.__setattr__(self, 'depth', d)
        e = muF.E(d)
        f = psi.degree
        for i in range(d):
            f *= muF.f(i)
        object.__setattr__(self, 'e', e)
        object.__setattr__(self, 'f', f)
        object.__setattr__(self, 'delta0',
                           muF.e(d) * psi.degree * muF.key_value(d))
        if e * f != phi.degree:
            raise AssertionError('report degree bookkeeping broken: '
                                 'e*f = %d, deg phi = %d' % (e * f, phi.degree))

    def __setattr__(self, name, value):
        raise AttributeError('FactorReport is immutable')

    def __repr__(self):
        return 'FactorReport(phi=%s, e=%d, f=%d, depth=%d, v=%s)' % (
            format_poly(self.phi), self.e, self.f, self.depth,
            format_rational(self.certified_value))


class OkutsuFrame(object):
    """The optimal lower-degree approximations [phi_1, ..., phi_r] of a
    factor, with their slope invariants C_1 < ... < C_r."""

    __slots__ = ('phis', 'Cs')

    def __init__(self, phis, Cs):
        object.__setattr__(self, 'phis', tuple(phis))
        object.__setattr__(self, 'Cs', tuple(Cs))

    def __setattr__(self, name, value):
        raise AttributeError('OkutsuFrame is immutable')

    def __eq__(self, other):
        if isinstance(other, OkutsuFrame):
            return self.phis == other.phis and self.Cs == other.Cs
        return NotImplemented

    def __repr__(self):
        return 'OkutsuFrame(%s)' % ', '.join(
            '%s @ %s' % (format_poly(f), format_rational(c))
            for f, c in zip(self.phis, self.Cs))


def _check_prime(p):
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise InputError('%r is not a prime' % (p,))


def _certifying_chain(mu, psi, phi):
    """Chain nu for the report (mu, psi, phi): mu itself while the ideal is
    strong, else the depth shrinks by one and phi replaces the top key."""
    t = mu.depth
    if t == 0 or mu.e(t) * psi.degree >= 2:
        return mu, mu, psi
    muF = mu.truncated(t - 1)
    nu = Valuation(mu.p, mu.steps[:-1] + ((phi, mu.lam(t)),))
    return muF, nu, R(muF, t - 1, phi)


def _certified_value(nu, phi, g):
    """Exact v(phi(theta)) read off the unique negative side of the polygon
    of g over the certifying chain, INFINITY when phi divides g."""
    if divmod(g, phi)[1].is_zero:
        return INFINITY
    N = principal_part(newton_polygon(nu, phi, g))
    if N.length != 1:
        raise AssertionError('approximation polygon has length %d, not 1'
                             % N.length)
    return nu.valuate(phi) - N.slopes()[0]


def _report(mu, psi, g, exact_phi=None):
    phi = exact_phi if exact_phi is not None else construct_key_poly(mu, psi)
    muF, nu, psiF = _certifying_chain(mu, psi, phi)
    if exact_phi is not None:
        value = INFINITY
    else:
        value = _certified_value(nu, phi, g)
    return FactorReport(phi, muF, psiF, nu, g, value)


def _branch(mu, psi, g, out, guard):
    if guard[0] <= 0:
        # repeated p-adic factors never separate: contact grows forever
        raise RuntimeError('branch recursion exceeded its bound; the input '
                           'likely has repeated (inseparable) p-adic factors')
    guard[0] -= 1
    phi = construct_key_poly(mu, psi)
    while True:
        q, rem = divmod(g, phi)
        if not rem.is_zero:
            break
        out.append(_report(mu, psi, g, exact_phi=phi))
        g = q
    if g.degree < phi.degree:
        # nothing of the class is left
        return
    N = principal_part(newton_polygon(mu, phi, g))
    for (s0, q0), (s1, q1) in zip(N.vertices, N.vertices[1:]):
        lam = Fraction(q0 - q1, s1 - s0)
        nu = augment(mu, phi, lam, check=False)
        t = nu.depth
        Rg = R(nu, t, g)
        parts = ff_factor(Rg)
        if (s1 - s0) != nu.e(t) * sum(m * q.degree for q, m in parts):
            raise AssertionError('degree bookkeeping broken on side %s' % lam)
        for psi2, mult in parts:
            if mult == 1:
                out.append(_report(nu, psi2, g))
            else:
                _branch(nu, psi2, g, out, guard)


def factor(g, p, target_precision=None, jobs=None):
    """Certified factorization of g over the p-adic integers: one
    FactorReport per irreducible factor, in deterministic branch order.
    Refines every report until certified_value reaches target_precision."""
    if not (isinstance(g, QPoly) and g.degree >= 1 and g.is_monic
            and g.is_integral):
        raise InputError('factorization needs a monic non-constant '
                         'integer polynomial')
    _check_prime(p)
    base = mu0(p)
    red = FFPoly(base.tower, 0, [fraction_mod_p(c, p) for c in g.coeffs])
    classes = [psi for psi, mult in ff_factor(red)]

    def run(psi):
        got = []
        _branch(base, psi, g, got, guard=[_MAX_BRANCH])
        return got

    if jobs and jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run, classes))
    else:
        chunks = [run(psi) for psi in classes]
    reports = [r for chunk in chunks for r in chunk]
    total = sum(r.e * r.f for r in reports)
    if total != g.degree:
        raise AssertionError('factor degrees sum to %d, expected %d'
                             % (total, g.degree))
    if target_precision is not None:
        target = Fraction(target_precision)
        reports = [_refine_to(r, target) for r in reports]
    return reports


def _refine_to(report, target):
    for _ in range(_MAX_REFINE):
        if report.certified_value >= target:
            return report
        report = refine(report)
    raise RuntimeError('refinement stalled below the requested precision')


def refine(report):
    """Strictly better approximation of the same factor: augment the
    certifying chain along the factor side of the polygon, then rebuild the
    representative from the (necessarily linear) residual class.  muF, psi
    and all invariants are unchanged."""
    if report.certified_value is INFINITY:
        raise AlreadyExact('the approximation divides the input exactly')
    nu, phi, g = report.nu, report.phi, report.g
    lam = report.certified_value - nu.valuate(phi)
    deeper = augment(nu, phi, lam, check=False)
    t = deeper.depth
    Rg = R(deeper, t, g)
    if Rg.degree != 1:
        raise AssertionError('factor side residual has degree %d, not 1'
                             % Rg.degree)
    psi2 = Rg.monic()
    phi2 = construct_key_poly(deeper, psi2)
    nu2 = Valuation(deeper.p, deeper.steps[:-1] + ((phi2, deeper.lam(t)),))
    return FactorReport(phi2, report.muF, report.psi, nu2, g,
                        _certified_value(nu2, phi2, g))


def okutsu_frame(report):
    """The key polynomials of the factor's optimal chain, with their
    strictly increasing slope invariants; empty at depth 0."""
    mu = report.muF
    return OkutsuFrame([mu.phi(i) for i in range(1, mu.depth + 1)],
                       [mu.C(i) for i in range(1, mu.depth + 1)])


def delta0(report):
    """The equivalence threshold deg(F)*C_r of the tracked factor."""
    return report.delta0


def value_at_root(report, g):
    """Exact valuation of g at a root of the tracked factor: INFINITY when
    the factor divides g, else the value under a deep enough refinement."""
    if g.is_zero:
        raise InputError('value_at_root needs a nonzero polynomial')
    if report.certified_value is INFINITY:
        # phi is the factor itself; conjugates share the value
        res = resultant(report.phi, g)
        if res == 0:
            return INFINITY
        return Fraction(vp(res, report.nu.p), report.phi.degree)
    d = poly_gcd(g, report.g)
    if d.degree >= 1 and ord_key(report.nu, report.phi, d, check=False) >= 1:
        return INFINITY
    for _ in range(_MAX_REFINE):
        if ord_key(report.nu, report.phi, g, check=False) == 0:
            return report.nu.valuate(g)
        report = refine(report)
        if report.certified_value is INFINITY:
            res = resultant(report.phi, g)
            if res == 0:
                return INFINITY
            return Fraction(vp(res, report.nu.p), report.phi.degree)
    raise RuntimeError('valuation did not stabilize within the '
                       'refinement bound')


def okutsu_equiv(r1, r2):
    """Whether the two tracked factors are Okutsu-equivalent: equal chains
    and equal residual classes, tested on the approximations themselves."""
    if r1.muF.p != r2.muF.p:
        raise ValueError('reports over different primes')
    if r1.phi.degree != r2.phi.degree:
        return False
    if not equals(r1.muF, r2.muF):
        return False
    # same residual class iff the approximations are equivalent keys
    mu = r1.muF
    lead = mu.valuate(r1.phi)
    if mu.valuate(r2.phi) != lead:
        return False
    return mu.valuate(r1.phi - r2.phi) > lead
