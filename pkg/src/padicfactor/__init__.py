"""Exact p-adic factorization of monic integer polynomials via inductive
valuations on Q(x), with Newton polygons, residual polynomials, key
polynomials, and Okutsu invariants."""

from .arith import (
    INFINITY,
    QPoly,
    FFTower,
    FFElem,
    FFPoly,
    vp,
    resultant,
    parse_poly,
    format_poly,
    parse_rational,
    format_rational,
    ff_factor,
    ff_embed,
)

__all__ = [
    'INFINITY', 'QPoly', 'FFTower', 'FFElem', 'FFPoly',
    'vp', 'resultant', 'parse_poly', 'format_poly',
    'parse_rational', 'format_rational', 'ff_factor', 'ff_embed',
]
