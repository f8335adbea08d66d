"""Exact arithmetic bricks: rationals with infinity, dense polynomials
over Q, resultants, and towers of finite fields.

Conventions used throughout the package:

* Rational numbers are `fractions.Fraction`.  The symbolic value INFINITY
  (the valuation of 0) is a module singleton ordered above every rational;
  it absorbs addition and multiplication by positive numbers.
* A polynomial over Q is a QPoly: dense coefficient tuple, lowest degree
  first, no trailing zeros, the empty tuple is the zero polynomial.
* A tower of finite fields L_0 = F_p < L_1 < ... is an FFTower; level i+1
  is L_i[y]/(psi_i) for a monic irreducible psi_i over L_i.  Degree-1 steps
  are legal (the quotient is a relabeled copy of L_i).  Elements are FFElem,
  polynomials over a level are FFPoly.

Raw element encoding (internal): a level-0 element is an int in [0, p);
a level-(i+1) element is a tuple of exactly deg(psi_i) raw level-i elements
(fixed width, so tuple equality is element equality).
"""

from fractions import Fraction
import random
import re


class _Infinity(object):
    """Singleton for the valuation of zero.  Compares above every Fraction,
    absorbs + and * by positive numbers."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(_Infinity, cls).__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'INFINITY'

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __hash__(self):
        return hash('padicfactor.INFINITY')

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError('INFINITY - INFINITY is undefined')
        return self

    def __mul__(self, other):
        if other is self:
            return self
        if other <= 0:
            raise ArithmeticError('INFINITY times a nonpositive number')
        return self

    __rmul__ = __mul__

    def __neg__(self):
        raise ArithmeticError('negative infinity is not used here')


INFINITY = _Infinity()


def vp(q, p):
    """p-adic valuation of a rational number; INFINITY for 0."""
    if p < 2:
        raise ValueError('p must be at least 2')
    q = Fraction(q)
    if q == 0:
        return INFINITY
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def fraction_mod_p(q, p):
    """Residue of a p-integral rational in [0, p)."""
    q = Fraction(q)
    if q.denominator % p == 0:
        raise ValueError('rational is not p-integral')
    return q.numerator * pow(q.denominator, -1, p) % p


def parse_rational(s):
    """Parse 'num/den' (or 'inf') into a Fraction or INFINITY."""
    s = s.strip()
    if s == 'inf':
        return INFINITY
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValueError('bad rational: %r' % (s,))


def format_rational(q):
    """Inverse of parse_rational: '-3/4', '7', 'inf'."""
    if q is INFINITY:
        return 'inf'
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return '%d/%d' % (q.numerator, q.denominator)


################################################################################
# Dense polynomials over Q
################################################################################


class QPoly(object):
    """Dense univariate polynomial over Q.

    Coefficients are Fractions, lowest degree first, trailing zeros
    stripped; the zero polynomial has an empty coefficient tuple and
    degree -1.
    """

    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        cc = [Fraction(c) for c in coeffs]
        while cc and cc[-1] == 0:
            cc.pop()
        object.__setattr__(self, 'coeffs', tuple(cc))

    def __setattr__(self, name, value):
        raise AttributeError('QPoly is immutable')

    @staticmethod
    def zero():
        return QPoly()

    @staticmethod
    def one():
        return QPoly((1,))

    @staticmethod
    def x():
        return QPoly((0, 1))

    @staticmethod
    def constant(c):
        return QPoly((c,))

    @staticmethod
    def monomial(k, c=1):
        return QPoly((0,) * k + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError('zero polynomial has no leading coefficient')
        return self.coeffs[-1]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    def __neg__(self):
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QPoly):
            if self.is_zero or other.is_zero:
                return QPoly()
            a, b = self.coeffs, other.coeffs
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
            return QPoly(out)
        return QPoly([c * Fraction(other) for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError('negative power of a polynomial')
        out = QPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError('polynomial division by zero')
        r = list(self.coeffs)
        d = other.degree
        inv = 1 / other.lc
        q = [Fraction(0)] * max(len(r) - d, 0)
        while len(r) > d:
            c = r[-1] * inv
            k = len(r) - d - 1
            q[k] = c
            if c != 0:
                for i, oc in enumerate(other.coeffs):
                    r[k + i] -= c * oc
            r.pop()
        return QPoly(q), QPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        if isinstance(x, QPoly):
            out = QPoly()
            for c in reversed(self.coeffs):
                out = out * x + QPoly((c,))
            return out
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def derivative(self):
        return QPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero:
            raise ValueError('cannot normalize the zero polynomial')
        return self * (1 / self.lc)

    def __repr__(self):
        return 'QPoly(%r)' % (list(self.coeffs),)

    def __str__(self):
        return format_poly(self)


def poly_gcd(f, g):
    """Monic gcd over Q (gcd with 0 is the other argument, made monic)."""
    while not g.is_zero:
        f, g = g, f % g
    if f.is_zero:
        return f
    return f.monic()


def poly_xgcd(f, g):
    """Extended gcd over Q: returns (d, s, t) with s*f + t*g = d, d monic."""
    r0, r1 = f, g
    s0, s1 = QPoly.one(), QPoly.zero()
    t0, t1 = QPoly.zero(), QPoly.one()
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    u = 1 / r0.lc
    return r0 * u, s0 * u, t0 * u


def squarefree_parts(f):
    """Yun decomposition of a monic polynomial over Q.

    Returns [(g_1, 1), (g_2, 2), ...] with the g_i monic, squarefree,
    pairwise coprime (entries with g_i = 1 omitted) and f = prod g_i^i.
    """
    if not f.is_monic:
        raise ValueError('squarefree decomposition expects a monic polynomial')
    d = f.derivative()
    a = poly_gcd(f, d)
    if a.degree <= 0:
        return [(f, 1)]
    out = []
    b = f // a
    c = d // a
    i = 1
    while b.degree > 0:
        w = c - b.derivative()
        g = poly_gcd(b, w) if not w.is_zero else b.monic()
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = w // g
        i += 1
    return out


def resultant(f, g):
    """Resultant of two nonzero polynomials over Q (exact)."""
    if f.is_zero or g.is_zero:
        raise ValueError('resultant of the zero polynomial is undefined')
    res = Fraction(1)
    if f.degree < g.degree:
        if (f.degree * g.degree) % 2:
            res = -res
        f, g = g, f
    while g.degree > 0:
        r = f % g
        if r.is_zero:
            return Fraction(0)
        res *= g.lc ** (f.degree - r.degree)
        if (f.degree * g.degree) % 2:
            res = -res
        f, g = g, r
    return res * g.lc ** f.degree


################################################################################
# Polynomial text formats
################################################################################

# one term of the human syntax: optional coefficient, optional power of the
# variable, at least one of the two
_TERM_RE = re.compile(r'^(?:(\d+(?:/\d+)?)\*?)?(?:([a-zA-Z])(?:\^(\d+))?)?$')


def parse_poly(s, var='x'):
    """Parse a polynomial from either external format.

    Comma format: 'a0,a1,...,an' with rational entries.  Human syntax:
    'x^3 - x^2 - 2*x - 8' (integer or num/den coefficients, the coefficient
    precedes the variable).
    """
    s = s.strip()
    if not s:
        raise ValueError('empty polynomial string')
    if ',' in s:
        try:
            return QPoly([Fraction(tok.strip()) for tok in s.split(',')])
        except (ValueError, ZeroDivisionError):
            raise ValueError('bad coefficient list: %r' % (s,))
    text = s.replace(' ', '')
    # split into signed terms
    terms = []
    sign = 1
    buf = ''
    if text[0] in '+-':
        sign = -1 if text[0] == '-' else 1
        text = text[1:]
    for ch in text:
        if ch in '+-':
            terms.append((sign, buf))
            sign = -1 if ch == '-' else 1
            buf = ''
        else:
            buf += ch
    terms.append((sign, buf))
    coeffs = {}
    for sign, term in terms:
        m = _TERM_RE.match(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError('bad polynomial term: %r' % (term,))
        cs, v, es = m.groups()
        if v is not None and v != var:
            raise ValueError('unexpected variable %r (wanted %r)' % (v, var))
        c = Fraction(cs) if cs is not None else Fraction(1)
        k = 0 if v is None else (int(es) if es is not None else 1)
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return QPoly(out)


def format_poly(f, var='x'):
    """Canonical human form, highest degree first: 'x^3-x^2-2*x-8'."""
    if f.is_zero:
        return '0'
    pieces = []
    for k in range(f.degree, -1, -1):
        c = f[k]
        if c == 0:
            continue
        neg = c < 0
        c = abs(c)
        if k == 0:
            body = format_rational(c)
        else:
            xpart = var if k == 1 else '%s^%d' % (var, k)
            body = xpart if c == 1 else '%s*%s' % (format_rational(c), xpart)
        if not pieces:
            pieces.append('-' + body if neg else body)
        else:
            pieces.append(('-' if neg else '+') + body)
    return ''.join(pieces)


################################################################################
# Towers of finite fields
################################################################################


class FFTower(object):
    """Tower F_p = L_0 < L_1 < ... with L_{i+1} = L_i[y]/(psi_i).

    Towers are immutable; extended() returns a taller tower sharing the
    existing levels.  The psi_i are assumed monic irreducible over their
    level (enforced by the callers that build towers).
    """

    __slots__ = ('p', 'extensions', '_keys')

    def __init__(self, p, extensions=()):
        if p < 2:
            raise ValueError('p must be at least 2')
        object.__setattr__(self, 'p', p)
        object.__setattr__(self, 'extensions', tuple(extensions))
        object.__setattr__(self, '_keys', None)

    def __setattr__(self, name, value):
        raise AttributeError('FFTower is immutable')

    @property
    def nlevels(self):
        return len(self.extensions) + 1

    def ext_degree(self, i):
        return len(self.extensions[i]) - 1

    def field_degree(self, level):
        d = 1
        for i in range(level):
            d *= self.ext_degree(i)
        return d

    def field_size(self, level):
        return self.p ** self.field_degree(level)

    def extended(self, psi):
        """New tower with one more level cut out by psi (an FFPoly over the
        current top level)."""
        lev = self.nlevels - 1
        if not (isinstance(psi, FFPoly) and psi.level == lev):
            raise ValueError('psi must be a polynomial over the top level')
        if psi.degree < 1 or not psi.is_monic:
            raise ValueError('psi must be monic of degree at least 1')
        return FFTower(self.p, self.extensions + (psi.coeffs,))

    def level_key(self, level):
        # structural fingerprint of levels 0..level, for compatibility checks
        if self._keys is None:
            keys = [(self.p,)]
            for i, psi in enumerate(self.extensions):
                keys.append(keys[i] + (psi,))
            object.__setattr__(self, '_keys', tuple(keys))
        return self._keys[level]

    def compatible(self, other, level):
        return self is other or self.level_key(level) == other.level_key(level)

    # -- raw elements ---------------------------------------------------

    def zero(self, level):
        if level == 0:
            return 0
        return (self.zero(level - 1),) * self.ext_degree(level - 1)

    def one(self, level):
        return self.from_int(level, 1)

    def from_int(self, level, n):
        return self.embed(n % self.p, 0, level)

    def embed(self, a, from_level, to_level):
        for i in range(from_level, to_level):
            a = (a,) + (self.zero(i),) * (self.ext_degree(i) - 1)
        return a

    def gen(self, level):
        """z_{level-1}: the class of y in L_level."""
        if level < 1:
            raise ValueError('level 0 has no tower generator')
        f = self.ext_degree(level - 1)
        if f >= 2:
            shape = [self.zero(level - 1)] * f
            shape[1] = self.one(level - 1)
            return tuple(shape)
        # degree-1 step: y is congruent to -psi[0]
        return (self.neg(level - 1, self.extensions[level - 1][0]),)

    def is_zero(self, level, a):
        return a == self.zero(level)

    def add(self, level, a, b):
        if level == 0:
            return (a + b) % self.p
        return tuple(self.add(level - 1, x, y) for x, y in zip(a, b))

    def neg(self, level, a):
        if level == 0:
            return -a % self.p
        return tuple(self.neg(level - 1, x) for x in a)

    def sub(self, level, a, b):
        return self.add(level, a, self.neg(level, b))

    def mul(self, level, a, b):
        if level == 0:
            return a * b % self.p
        base = level - 1
        f = self.ext_degree(base)
        conv = [self.zero(base)] * (2 * f - 1)
        for i, x in enumerate(a):
            if self.is_zero(base, x):
                continue
            for j, y in enumerate(b):
                conv[i + j] = self.add(base, conv[i + j], self.mul(base, x, y))
        rem = self.pmod(base, conv, self.extensions[base])
        return tuple(rem) + (self.zero(base),) * (f - len(rem))

    def inv(self, level, a):
        if self.is_zero(level, a):
            raise ZeroDivisionError('inverse of zero field element')
        if level == 0:
            return pow(a, -1, self.p)
        base = level - 1
        apoly = list(a)
        while apoly and self.is_zero(base, apoly[-1]):
            apoly.pop()
        g, s, _ = self.pxgcd(base, apoly, list(self.extensions[base]))
        # psi irreducible, so g is a nonzero constant
        c = self.inv(base, g[0])
        out = self.pmod(base, [self.mul(base, c, x) for x in s],
                        self.extensions[base])
        f = self.ext_degree(base)
        return tuple(out) + (self.zero(base),) * (f - len(out))

    def div(self, level, a, b):
        return self.mul(level, a, self.inv(level, b))

    def pow(self, level, a, n):
        if n < 0:
            a = self.inv(level, a)
            n = -n
        out = self.one(level)
        base = a
        while n:
            if n & 1:
                out = self.mul(level, out, base)
            base = self.mul(level, base, base)
            n >>= 1
        return out

    def elem_key(self, level, a):
        # deterministic sort key; level-0 elements are already ints
        return a

    def rand_elem(self, level, rng):
        if level == 0:
            return rng.randrange(self.p)
        return tuple(self.rand_elem(level - 1, rng)
                     for _ in range(self.ext_degree(level - 1)))

    # -- raw polynomials over a level ------------------------------------
    # represented as plain lists of raw elements, no trailing zeros

    def pnorm(self, level, a):
        a = list(a)
        while a and self.is_zero(level, a[-1]):
            a.pop()
        return a

    def padd(self, level, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = self.add(level, out[i], c)
        return self.pnorm(level, out)

    def psub(self, level, a, b):
        return self.padd(level, a, [self.neg(level, c) for c in b])

    def pscale(self, level, c, a):
        return self.pnorm(level, [self.mul(level, c, x) for x in a])

    def pmul(self, level, a, b):
        if not a or not b:
            return []
        out = [self.zero(level)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if self.is_zero(level, x):
                continue
            for j, y in enumerate(b):
                out[i + j] = self.add(level, out[i + j], self.mul(level, x, y))
        return self.pnorm(level, out)

    def pdivmod(self, level, a, b):
        b = self.pnorm(level, b)
        if not b:
            raise ZeroDivisionError('polynomial division by zero')
        r = self.pnorm(level, a)
        db = len(b) - 1
        inv = self.inv(level, b[-1])
        q = [self.zero(level)] * max(len(r) - db, 0)
        while len(r) > db:
            c = self.mul(level, r[-1], inv)
            k = len(r) - db - 1
            q[k] = c
            if not self.is_zero(level, c):
                for i, bc in enumerate(b):
                    r[k + i] = self.sub(level, r[k + i], self.mul(level, c, bc))
            r.pop()
            while r and self.is_zero(level, r[-1]):
                r.pop()
        return self.pnorm(level, q), r

    def pmod(self, level, a, b):
        return self.pdivmod(level, a, b)[1]

    def pmonic(self, level, a):
        a = self.pnorm(level, a)
        if not a:
            return a
        return self.pscale(level, self.inv(level, a[-1]), a)

    def pgcd(self, level, a, b):
        a, b = self.pnorm(level, a), self.pnorm(level, b)
        while b:
            a, b = b, self.pmod(level, a, b)
        return self.pmonic(level, a)

    def pxgcd(self, level, a, b):
        r0, r1 = self.pnorm(level, a), self.pnorm(level, b)
        one, zero = [self.one(level)], []
        s0, s1 = one, list(zero)
        t0, t1 = list(zero), one
        while r1:
            q, r = self.pdivmod(level, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.psub(level, s0, self.pmul(level, q, s1))
            t0, t1 = t1, self.psub(level, t0, self.pmul(level, q, t1))
        return r0, s0, t0

    def ppow_mod(self, level, a, n, m):
        out = [self.one(level)]
        base = self.pmod(level, a, m)
        while n:
            if n & 1:
                out = self.pmod(level, self.pmul(level, out, base), m)
            base = self.pmod(level, self.pmul(level, base, base), m)
            n >>= 1
        return out

    def peval(self, level, a, x):
        out = self.zero(level)
        for c in reversed(a):
            out = self.add(level, self.mul(level, out, x), c)
        return out

    def pderiv(self, level, a):
        out = []
        for i in range(1, len(a)):
            out.append(self.mul(level, self.from_int(level, i), a[i]))
        return self.pnorm(level, out)


class FFElem(object):
    """Element of one level of an FFTower."""

    __slots__ = ('tower', 'level', 'raw')

    def __init__(self, tower, level, raw):
        object.__setattr__(self, 'tower', tower)
        object.__setattr__(self, 'level', level)
        object.__setattr__(self, 'raw', raw)

    def __setattr__(self, name, value):
        raise AttributeError('FFElem is immutable')

    def _peer(self, other):
        if not isinstance(other, FFElem):
            if isinstance(other, int):
                return FFElem(self.tower, self.level,
                              self.tower.from_int(self.level, other))
            return None
        if other.level != self.level or \
                not self.tower.compatible(other.tower, self.level):
            raise ValueError('elements of different fields')
        return other

    @property
    def is_zero(self):
        return self.tower.is_zero(self.level, self.raw)

    def __eq__(self, other):
        other = self._peer(other)
        if other is None:
            return NotImplemented
        return self.raw == other.raw

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.level, self.raw))

    def __add__(self, other):
        other = self._peer(other)
        if other is None:
            return NotImplemented
        return FFElem(self.tower, self.level,
                      self.tower.add(self.level, self.raw, other.raw))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.tower, self.level,
                      self.tower.neg(self.level, self.raw))

    def __sub__(self, other):
        other = self._peer(other)
        if other is None:
            return NotImplemented
        return FFElem(self.tower, self.level,
                      self.tower.sub(self.level, self.raw, other.raw))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._peer(other)
        if other is None:
            return NotImplemented
        return FFElem(self.tower, self.level,
                      self.tower.mul(self.level, self.raw, other.raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._peer(other)
        if other is None:
            return NotImplemented
        return FFElem(self.tower, self.level,
                      self.tower.div(self.level, self.raw, other.raw))

    def __pow__(self, n):
        return FFElem(self.tower, self.level,
                      self.tower.pow(self.level, self.raw, n))

    def key(self):
        return self.tower.elem_key(self.level, self.raw)

    def __repr__(self):
        return 'FFElem(level=%d, %s)' % (self.level, format_ff_elem(self))

    def __str__(self):
        return format_ff_elem(self)


def ff_embed(a, level):
    """Embed a into a higher (or the same) level of its tower."""
    if level < a.level:
        raise ValueError('cannot embed into a lower level')
    return FFElem(a.tower, level, a.tower.embed(a.raw, a.level, level))


class FFPoly(object):
    """Dense polynomial over one level of an FFTower (variable y)."""

    __slots__ = ('tower', 'level', 'coeffs')

    def __init__(self, tower, level, coeffs):
        raw = []
        for c in coeffs:
            if isinstance(c, FFElem):
                raw.append(c.raw)
            elif isinstance(c, int):
                raw.append(tower.from_int(level, c))
            else:
                raw.append(c)
        object.__setattr__(self, 'tower', tower)
        object.__setattr__(self, 'level', level)
        object.__setattr__(self, 'coeffs', tuple(tower.pnorm(level, raw)))

    def __setattr__(self, name, value):
        raise AttributeError('FFPoly is immutable')

    def _wrap(self, raw_list):
        return FFPoly(self.tower, self.level, raw_list)

    def _peer(self, other):
        if not isinstance(other, FFPoly):
            raise ValueError('expected an FFPoly')
        if other.level != self.level or \
                not self.tower.compatible(other.tower, self.level):
            raise ValueError('polynomials over different fields')
        return other

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_monic(self):
        return bool(self.coeffs) and \
            self.coeffs[-1] == self.tower.one(self.level)

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return FFElem(self.tower, self.level, self.coeffs[k])
        return FFElem(self.tower, self.level, self.tower.zero(self.level))

    @property
    def lc(self):
        if self.is_zero:
            raise ValueError('zero polynomial has no leading coefficient')
        return self.coeff(self.degree)

    def __eq__(self, other):
        if not isinstance(other, FFPoly):
            return NotImplemented
        if other.level != self.level or \
                not self.tower.compatible(other.tower, self.level):
            return False
        return self.coeffs == other.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __add__(self, other):
        other = self._peer(other)
        return self._wrap(self.tower.padd(self.level, self.coeffs, other.coeffs))

    def __neg__(self):
        t = self.tower
        return self._wrap([t.neg(self.level, c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._peer(other)
        return self._wrap(self.tower.psub(self.level, self.coeffs, other.coeffs))

    def __mul__(self, other):
        if isinstance(other, FFElem):
            return self._wrap(self.tower.pscale(self.level, other.raw, self.coeffs))
        other = self._peer(other)
        return self._wrap(self.tower.pmul(self.level, self.coeffs, other.coeffs))

    def __divmod__(self, other):
        other = self._peer(other)
        q, r = self.tower.pdivmod(self.level, self.coeffs, other.coeffs)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        if n < 0:
            raise ValueError('negative power of a polynomial')
        out = self._wrap([self.tower.one(self.level)])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        if isinstance(x, FFElem):
            if x.level != self.level:
                raise ValueError('evaluation point at the wrong level')
            return FFElem(self.tower, self.level,
                          self.tower.peval(self.level, self.coeffs, x.raw))
        raise ValueError('expected an FFElem')

    def monic(self):
        return self._wrap(self.tower.pmonic(self.level, self.coeffs))

    def derivative(self):
        return self._wrap(self.tower.pderiv(self.level, self.coeffs))

    def shift(self, k):
        """Multiply by y^k (k >= 0), or exact-divide by y^{-k} (k < 0)."""
        if k >= 0:
            return self._wrap([self.tower.zero(self.level)] * k + list(self.coeffs))
        k = -k
        for c in self.coeffs[:k]:
            if not self.tower.is_zero(self.level, c):
                raise ValueError('not divisible by y^%d' % k)
        return self._wrap(self.coeffs[k:])

    def ord_y(self):
        """Multiplicity of the root y = 0 (largest k with y^k dividing)."""
        if self.is_zero:
            raise ValueError('ord_y of the zero polynomial')
        for k, c in enumerate(self.coeffs):
            if not self.tower.is_zero(self.level, c):
                return k
        raise AssertionError('unnormalized polynomial')

    def embedded(self, level):
        """Same polynomial with coefficients pushed up to a higher level."""
        t = self.tower
        return FFPoly(t, level,
                      [t.embed(c, self.level, level) for c in self.coeffs])

    def key(self):
        return (self.degree, self.coeffs)

    def __repr__(self):
        return 'FFPoly(level=%d, %s)' % (self.level, format_ff_poly(self))

    def __str__(self):
        return format_ff_poly(self)


def ff_poly(tower, level, coeffs):
    return FFPoly(tower, level, coeffs)


def ff_constant(tower, level, n):
    return FFPoly(tower, level, [tower.from_int(level, n)])


def ff_y(tower, level):
    return FFPoly(tower, level, [tower.zero(level), tower.one(level)])


################################################################################
# Factoring over a tower level
################################################################################


def _pth_root(tower, level, a):
    # Frobenius is bijective: the p-th root of a is a^(q/p)
    q = tower.field_size(level)
    return tower.pow(level, a, q // tower.p)


def _squarefree_ff(f):
    """Char-p squarefree decomposition of a monic FFPoly.

    Returns [(g, m)] with g monic squarefree pairwise coprime, f = prod g^m.
    """
    t, lev, p = f.tower, f.level, f.tower.p
    out = []

    def walk(g, mult):
        if g.degree < 1:
            return
        d = g.derivative()
        if d.is_zero:
            # g(y) = h(y^p); extract the p-th root of h coefficient-wise
            root = [_pth_root(t, lev, g.coeffs[i]) for i in range(0, len(g.coeffs), p)]
            walk(FFPoly(t, lev, root), mult * p)
            return
        c = t.pgcd(lev, list(g.coeffs), list(d.coeffs))
        w = FFPoly(t, lev, t.pdivmod(lev, list(g.coeffs), c)[0])
        i = 1
        cpoly = FFPoly(t, lev, c)
        while w.degree > 0:
            y = FFPoly(t, lev, t.pgcd(lev, list(w.coeffs), list(cpoly.coeffs)))
            z = w // y
            if z.degree > 0:
                out.append((z, mult * i))
            w = y
            cpoly = cpoly // y
            i += 1
        if cpoly.degree > 0:
            # leftover factors all have multiplicity divisible by p
            root = [_pth_root(t, lev, cpoly.coeffs[i])
                    for i in range(0, len(cpoly.coeffs), p)]
            walk(FFPoly(t, lev, root), mult * p)

    walk(f.monic(), 1)
    return out


def _equal_degree_split(f, d, rng):
    """Split a monic squarefree product of degree-d irreducibles."""
    t, lev = f.tower, f.level
    q = t.field_size(lev)
    n = f.degree
    if n == d:
        return [f]
    fc = list(f.coeffs)
    while True:
        a = [t.rand_elem(lev, rng) for _ in range(n)]
        a = t.pnorm(lev, a)
        if len(a) <= 0:
            continue
        if t.p == 2:
            # trace map over F_2: a + a^2 + a^4 + ... mod f
            k = t.field_degree(lev) * d
            tr = list(a)
            sq = list(a)
            for _ in range(k - 1):
                sq = t.pmod(lev, t.pmul(lev, sq, sq), fc)
                tr = t.padd(lev, tr, sq)
            g = t.pgcd(lev, tr, fc)
        else:
            b = t.ppow_mod(lev, a, (q ** d - 1) // 2, fc)
            b = t.psub(lev, b, [t.one(lev)])
            g = t.pgcd(lev, b, fc)
        if 0 < len(g) - 1 < n:
            gp = FFPoly(t, lev, g)
            left = _equal_degree_split(gp, d, rng)
            right = _equal_degree_split(f // gp, d, rng)
            return left + right


def ff_factor(f, seed=0):
    """Factor an FFPoly into monic irreducibles.

    Returns a list of (monic irreducible FFPoly, multiplicity), sorted by
    (degree, coefficient key) so the order is deterministic; the unit
    leading coefficient is dropped.  Randomness in the equal-degree split
    is driven by the seed only.
    """
    if f.is_zero:
        raise ValueError('cannot factor the zero polynomial')
    if f.degree == 0:
        return []
    t, lev = f.tower, f.level
    q = t.field_size(lev)
    rng = random.Random((seed, q, f.key()).__repr__())
    found = {}
    for part, mult in _squarefree_ff(f):
        # distinct-degree stage
        fc = list(part.coeffs)
        ypoly = [t.zero(lev), t.one(lev)]
        h = list(ypoly)
        d = 0
        while len(fc) - 1 > 0:
            d += 1
            if 2 * d > len(fc) - 1:
                # remainder is a single irreducible
                g = FFPoly(t, lev, fc)
                found.setdefault(g.key(), [g, 0])[1] += mult
                break
            h = t.ppow_mod(lev, h, q, fc)
            g = t.pgcd(lev, t.psub(lev, h, ypoly), fc)
            if len(g) - 1 > 0:
                for piece in _equal_degree_split(FFPoly(t, lev, g), d, rng):
                    found.setdefault(piece.key(), [piece, 0])[1] += mult
                fc, _ = t.pdivmod(lev, fc, g)
                h = t.pmod(lev, h, fc)
    out = [(g, m) for g, m in found.values()]
    out.sort(key=lambda gm: gm[0].key())
    return out


def ff_is_irreducible(f):
    """Irreducibility over the polynomial's own level."""
    if f.degree < 1:
        return False
    fs = ff_factor(f, seed=0)
    return len(fs) == 1 and fs[0][1] == 1 and fs[0][0].degree == f.degree


################################################################################
# Rendering of tower elements (generators z0, z1, ...)
################################################################################


def _render_elem(tower, level, raw):
    # returns (text, atomic); atomic means usable as a coefficient bare
    if level == 0:
        return str(raw), True
    var = 'z%d' % (level - 1)
    terms = []
    for k in range(len(raw) - 1, -1, -1):
        c = raw[k]
        if tower.is_zero(level - 1, c):
            continue
        cs, atomic = _render_elem(tower, level - 1, c)
        if k == 0:
            terms.append(cs)
            continue
        xpart = var if k == 1 else '%s^%d' % (var, k)
        if cs == '1':
            terms.append(xpart)
        else:
            if not atomic:
                cs = '(%s)' % cs
            terms.append('%s*%s' % (cs, xpart))
    if not terms:
        return '0', True
    return '+'.join(terms), len(terms) == 1 and '*' not in terms[0]


def format_ff_elem(a):
    return _render_elem(a.tower, a.level, a.raw)[0]


def format_ff_poly(f, var='y'):
    """Render over the generator-labeled tower: e.g. '(z0+1)*y^2+z0*y+2'."""
    if f.is_zero:
        return '0'
    t, lev = f.tower, f.level
    terms = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if t.is_zero(lev, c):
            continue
        cs, atomic = _render_elem(t, lev, c)
        if k == 0:
            terms.append(cs)
            continue
        xpart = var if k == 1 else '%s^%d' % (var, k)
        if cs == '1':
            terms.append(xpart)
        else:
            if not atomic:
                cs = '(%s)' % cs
            terms.append('%s*%s' % (cs, xpart))
    return '+'.join(terms)
