"""Residual polynomial operators, key recognition, key construction."""

import random
from fractions import Fraction

import pytest

from padicfactor.arith import FFPoly, QPoly, ff_factor, ff_y, parse_poly
from padicfactor.residual import (
    HomogElem, R, R_alpha, ResidualIdeal, construct_key_poly, epsilon,
    homog, is_key_poly, ord_key, residual_ideal, s_u_of_alpha,
)
from padicfactor.valuation import KeyPolyError, augment, mu0

from chains import random_chain, random_irreducible, random_qpoly

X = QPoly.x()
HALF = Fraction(1, 2)


def poly(text):
    return parse_poly(text)


def mu_half():
    return augment(mu0(2), X, HALF)


def mu_one():
    return augment(mu0(2), X, Fraction(1))


def depth2_p2():
    mu1 = augment(mu0(2), poly('x+1'), HALF)
    return augment(mu1, poly('x^2+2*x+3'), Fraction(1, 4))


def depth2_p3():
    # [mu0(3); (x, 1/2); (x^2+3, 1/2)], with e = (2, 1) and f = (1, 1)
    mu1 = augment(mu0(3), X, HALF)
    return augment(mu1, poly('x^2+3'), HALF)


def sample_chains():
    return [mu0(2), mu0(3), mu_half(), mu_one(), depth2_p2(), depth2_p3()]


# -- grading arithmetic -------------------------------------------------------


def test_s_u_frozen():
    mu = mu_half()
    assert s_u_of_alpha(mu, 1, Fraction(0)) == (0, 0)
    assert s_u_of_alpha(mu, 1, HALF) == (1, 0)
    assert s_u_of_alpha(mu, 1, Fraction(1)) == (0, 1)
    assert s_u_of_alpha(mu, 1, Fraction(3, 2)) == (1, 1)
    assert s_u_of_alpha(mu, 0, Fraction(5)) == (0, 5)
    with pytest.raises(ValueError):
        s_u_of_alpha(mu, 1, Fraction(1, 3))
    with pytest.raises(ValueError):
        s_u_of_alpha(mu, 0, HALF)


def test_s_u_identities():
    rng = random.Random(61)
    for _ in range(8):
        p = rng.choice([2, 3, 5])
        mu = random_chain(rng, p, rng.randint(1, 2))
        i = mu.depth
        e, h = mu.e(i), mu.h(i)
        # alpha = 1/E_i picks out the Bezout pair
        assert s_u_of_alpha(mu, i, Fraction(1, mu.E(i))) == mu.bezout(i)
        for _ in range(20):
            n = rng.randint(-3 * mu.E(i), 3 * mu.E(i))
            alpha = Fraction(n, mu.E(i))
            s, u = s_u_of_alpha(mu, i, alpha)
            assert 0 <= s < e
            assert u * e + s * h == n
            # s = 0 exactly on the previous value group
            assert (s == 0) == ((alpha * mu.E(i - 1)).denominator == 1)


def test_epsilon_frozen():
    mu = depth2_p3()
    assert epsilon(mu, 0, Fraction(7)) == 1
    assert epsilon(mu, 1, HALF) == 1
    assert epsilon(mu, 1, Fraction(1)) == 2
    assert epsilon(mu, 1, Fraction(2)) == 1  # z^(-2), and z = 2 has order 2
    with pytest.raises(ValueError):
        epsilon(mu, 2, Fraction(1))


def test_epsilon_multiplicative_on_previous_group():
    rng = random.Random(67)
    for _ in range(6):
        p = rng.choice([2, 3, 5])
        mu = random_chain(rng, p, 2)
        i = rng.randint(1, mu.depth - 1)
        E_prev = mu.E(i - 1)
        for _ in range(10):
            a = Fraction(rng.randint(0, 8), E_prev)
            b = Fraction(rng.randint(0, 8), E_prev)
            assert epsilon(mu, i, a) * epsilon(mu, i, b) == \
                epsilon(mu, i, a + b)


# -- residual polynomials ------------------------------------------------------


def test_R0_frozen():
    two = mu0(2)
    assert R(two, 0, poly('2*x^2+4*x+2')) == ff_poly_02([1, 0, 1])
    assert R(two, 0, poly('x^2+2*x')) == ff_poly_02([0, 0, 1])
    assert R(two, 0, X) == ff_y(two.tower, 0)
    assert R(two, 0, QPoly.constant(Fraction(1, 2))) == ff_poly_02([1])
    assert R(two, 0, QPoly.zero()).is_zero


def ff_poly_02(coeffs):
    t = mu0(2).tower
    return FFPoly(t, 0, coeffs)


def test_R_alpha_value_window():
    rng = random.Random(71)
    for mu in sample_chains():
        r = mu.depth
        for _ in range(20):
            g = random_qpoly(rng, monic=False)
            if g.is_zero:
                continue
            v = mu.valuate(g)
            below = v - Fraction(1, mu.E(r))
            assert R_alpha(mu, r, below, g).is_zero
            assert not R_alpha(mu, r, v, g).is_zero
            with pytest.raises(ValueError):
                R_alpha(mu, r, v + Fraction(1, mu.E(r)), g)


def test_R_alpha_of_key_powers():
    # R_alpha(phi_r^s) at its own value is y^(s // e_r)
    for mu in (mu_half(), mu_one(), depth2_p2(), depth2_p3()):
        r = mu.depth
        t = mu.tower
        kv = mu.key_value(r)
        for s in range(2 * mu.e(r) + 2):
            got = R_alpha(mu, r, s * kv, mu.phi(r) ** s)
            want = ff_y(t, r) ** (s // mu.e(r))
            assert got == want, (mu, s)


def test_R_of_key_powers_is_one():
    for mu in (mu_half(), mu_one(), depth2_p2(), depth2_p3()):
        r = mu.depth
        one = FFPoly(mu.tower, r, [1])
        for s in range(4):
            assert R(mu, r, mu.phi(r) ** s) == one
    assert R(mu_one(), 1, QPoly.one()) == FFPoly(mu_one().tower, 1, [1])


def test_R1_frozen():
    mu = mu_one()
    want = FFPoly(mu.tower, 1, [1, 1])
    assert R(mu, 1, poly('x+2')) == want
    assert R(mu, 1, poly('x-6')) == want
    assert R(mu, 1, poly('x+6')) == want
    assert R(mu, 1, X) == FFPoly(mu.tower, 1, [1])


def test_R_multiplicative():
    rng = random.Random(73)
    for mu in sample_chains():
        r = mu.depth
        for _ in range(60):
            g = random_qpoly(rng, max_degree=5, monic=False)
            h = random_qpoly(rng, max_degree=5, monic=False)
            assert R(mu, r, g * h) == R(mu, r, g) * R(mu, r, h)


def test_R_alpha_additive_at_common_alpha():
    rng = random.Random(79)
    for mu in sample_chains():
        r = mu.depth
        for _ in range(40):
            g = random_qpoly(rng, max_degree=5, monic=False)
            h = random_qpoly(rng, max_degree=5, monic=False)
            if g.is_zero or h.is_zero or (g + h).is_zero:
                continue
            alpha = min(mu.valuate(g), mu.valuate(h))
            assert R_alpha(mu, r, alpha, g + h) == \
                R_alpha(mu, r, alpha, g) + R_alpha(mu, r, alpha, h)


# -- homogeneous parts and residual ideals ----------------------------------------


def test_homog_frozen():
    for mu in sample_chains():
        hm = homog(mu, QPoly.one())
        assert (hm.s, hm.u) == (0, 0) and hm.R == FFPoly(mu.tower, mu.depth, [1])
    assert homog(mu0(2), QPoly.constant(2)) == \
        HomogElem(0, 1, ff_poly_02([1]))
    mu = depth2_p2()
    hm = homog(mu, mu.phi(2))
    assert (hm.s, hm.u) == (1, 2)
    assert hm.R == FFPoly(mu.tower, 2, [1])


def test_homog_multiplicative():
    rng = random.Random(83)
    for mu in sample_chains():
        for _ in range(60):
            g = random_qpoly(rng, max_degree=5, monic=False)
            h = random_qpoly(rng, max_degree=5, monic=False)
            if g.is_zero or h.is_zero:
                continue
            assert homog(mu, g * h) == homog(mu, g) * homog(mu, h)


def test_homog_value_identity():
    rng = random.Random(89)
    for mu in sample_chains():
        r = mu.depth
        for _ in range(30):
            g = random_qpoly(rng, monic=False)
            if g.is_zero:
                continue
            hm = homog(mu, g)
            if r == 0:
                assert hm.s == 0 and hm.u == mu.valuate(g)
            else:
                assert Fraction(hm.u, mu.E(r - 1)) + hm.s * mu.lam(r) == \
                    mu.valuate(g)


def test_residual_ideal_frozen():
    two = mu0(2)
    assert residual_ideal(two, poly('2*x^2+4*x+2')) == \
        ResidualIdeal(0, ff_poly_02([1, 0, 1]))
    assert residual_ideal(two, poly('x^3+x^2+x')) == \
        ResidualIdeal(1, ff_poly_02([1, 1, 1]))
    mu = depth2_p2()
    one2 = FFPoly(mu.tower, 2, [1])
    assert residual_ideal(mu, mu.phi(2)) == ResidualIdeal(1, one2)
    assert residual_ideal(mu, QPoly.one()) == ResidualIdeal(0, one2)


def test_residual_ideal_psi_multiplicative():
    rng = random.Random(97)
    for mu in sample_chains():
        for _ in range(25):
            g = random_qpoly(rng, max_degree=5, monic=False)
            h = random_qpoly(rng, max_degree=5, monic=False)
            if g.is_zero or h.is_zero:
                continue
            a = residual_ideal(mu, g)
            b = residual_ideal(mu, h)
            assert residual_ideal(mu, g * h).psi_part == a.psi_part * b.psi_part


# -- key recognition -----------------------------------------------------------


def test_is_key_depth0():
    two = mu0(2)
    v = is_key_poly(two, X)
    assert v and v.proper and v.strong
    assert is_key_poly(two, poly('x+1'))
    assert is_key_poly(two, poly('x^2+x+1'))
    assert not is_key_poly(two, X ** 2)
    assert not is_key_poly(two, poly('x^2+1'))  # (x+1)^2 mod 2
    assert not is_key_poly(two, QPoly([Fraction(1), Fraction(2)]))
    assert not is_key_poly(two, QPoly([HALF, Fraction(1)]))
    assert not is_key_poly(two, QPoly.constant(3))


def test_is_key_depth1():
    mu = mu_half()
    v = is_key_poly(mu, X)
    assert v and not v.proper and not v.strong
    v = is_key_poly(mu, poly('x+2'))
    assert v and not v.proper and not v.strong
    assert not is_key_poly(mu, poly('x+1'))
    v = is_key_poly(mu, poly('x^2+2'))
    assert v and v.proper and v.strong
    one = mu_one()
    v = is_key_poly(one, poly('x+2'))
    assert v and v.proper and not v.strong


def test_is_key_depth2():
    mu = depth2_p2()
    v = is_key_poly(mu, mu.phi(2))
    assert v and not v.proper and not v.strong  # e_2 = 2
    assert not is_key_poly(mu, poly('x+1'))  # degree not a multiple of 2
    parent = mu.truncated(1)
    v = is_key_poly(parent, mu.phi(2))
    assert v and v.proper and v.strong


def test_is_key_reducible_residual():
    mu = mu_one()
    v = is_key_poly(mu, poly('x+2') * poly('x+6'))
    assert not v
    assert 'reducible' in v.reason


# -- multiplicity of a key class -------------------------------------------------


def test_ord_key_frozen():
    assert ord_key(mu0(2), X, poly('x^3-x^2-2*x-8')) == 2
    mu = mu_one()
    phi = poly('x+2')
    assert ord_key(mu, phi, phi) == 1
    assert ord_key(mu, phi, X) == 0
    with pytest.raises(KeyPolyError):
        ord_key(mu0(2), X ** 2, X)
    with pytest.raises(ValueError):
        ord_key(mu0(2), X, QPoly.zero())


def test_ord_key_additive():
    rng = random.Random(101)
    mu = mu_one()
    phi = poly('x+2')
    for _ in range(50):
        g = random_qpoly(rng, max_degree=4)
        h = random_qpoly(rng, max_degree=4)
        assert ord_key(mu, phi, g * h) == \
            ord_key(mu, phi, g) + ord_key(mu, phi, h)


def test_ord_key_matches_residual_multiplicity():
    rng = random.Random(103)
    for mu in (mu_one(), depth2_p3()):
        r = mu.depth
        psi = random_irreducible(mu.tower, r, rng)
        phi = construct_key_poly(mu, psi)
        for _ in range(12):
            k = rng.randint(0, 3)
            g = phi ** k * random_qpoly(rng, max_degree=3)
            mult = sum(m for q, m in ff_factor(R(mu, r, g)) if q == psi)
            assert ord_key(mu, phi, g) == mult


# -- key construction -------------------------------------------------------------


def test_construct_frozen():
    two = mu0(2)
    assert construct_key_poly(two, ff_y(two.tower, 0)) == X
    assert construct_key_poly(two, FFPoly(two.tower, 0, [1, 1])) == poly('x+1')
    five = mu0(5)
    assert construct_key_poly(five, FFPoly(five.tower, 0, [2, 1])) == poly('x+2')
    one = mu_one()
    assert construct_key_poly(one, FFPoly(one.tower, 1, [1, 1])) == poly('x+2')
    mu3 = augment(mu0(3), X, HALF)
    assert construct_key_poly(mu3, FFPoly(mu3.tower, 1, [1, 1])) == poly('x^2+3')
    mu = depth2_p2()
    assert construct_key_poly(mu, FFPoly(mu.tower, 2, [1, 1])) == \
        poly('x^4+4*x^3+10*x^2+16*x+13')


def test_construct_contracts():
    rng = random.Random(107)
    for _ in range(25):
        p = rng.choice([2, 3, 5])
        mu = random_chain(rng, p, rng.randint(0, 2))
        r = mu.depth
        psi = random_irreducible(mu.tower, r, rng, unit_constant=r >= 1)
        phi = construct_key_poly(mu, psi)
        f = psi.degree
        if r == 0:
            assert phi.degree == f
        else:
            assert phi.degree == mu.e(r) * f * mu.m(r)
            assert mu.valuate(phi) == mu.e(r) * f * mu.key_value(r)
        assert R(mu, r, phi) == psi
        v = is_key_poly(mu, phi)
        assert v and v.proper
        assert v.strong == (r == 0 or phi.degree > mu.m(r))


def test_construct_rejects():
    two = mu0(2)
    with pytest.raises(ValueError):
        construct_key_poly(two, FFPoly(two.tower, 0, [1, 0, 1]))  # (y+1)^2
    with pytest.raises(ValueError):
        construct_key_poly(two, FFPoly(two.tower, 0, [1]))
    one = mu_one()
    with pytest.raises(ValueError):
        construct_key_poly(one, ff_y(one.tower, 1))
    mu3 = mu0(3)
    with pytest.raises(ValueError):
        construct_key_poly(mu3, FFPoly(mu3.tower, 0, [1, 2]))  # not monic
    with pytest.raises(ValueError):
        construct_key_poly(one, FFPoly(mu3.tower, 0, [1, 1]))  # wrong field


# -- change of key representative ---------------------------------------------------


def compose_shift(tower, level, f, eta):
    # f(y - eta), computed by Horner over the tower level
    shifted = FFPoly(tower, level, [tower.neg(level, eta.raw),
                                    tower.one(level)])
    out = FFPoly(tower, level, [])
    for c in reversed(f.coeffs):
        out = out * shifted + FFPoly(tower, level, [c])
    return out


def test_representative_change():
    rng = random.Random(109)
    cases = [
        (augment(mu0(3), X, Fraction(1)), QPoly.constant(3)),
        (augment(mu0(3), X, Fraction(1)), QPoly.constant(6)),
        (augment(mu0(3), poly('x^2+1'), Fraction(1)), poly('3*x')),
    ]
    for mu, a in cases:
        phi = mu.phi(1)
        assert mu.valuate(a) == mu.key_value(1)
        shifted = augment(mu0(3), phi + a, mu.lam(1))
        eta = R(mu, 1, a).coeff(0)
        for _ in range(30):
            g = random_qpoly(rng, max_degree=5, monic=False)
            if g.is_zero:
                continue
            alpha = mu.valuate(g)
            lhs = R_alpha(shifted, 1, alpha, g)
            rhs = compose_shift(mu.tower, 1, R_alpha(mu, 1, alpha, g), eta)
            assert lhs == rhs
