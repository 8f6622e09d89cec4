"""Shared helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from dercent.derivation import Derivation
from dercent.poly import Poly


def random_exponent(rng: random.Random, nvars: int, max_degree: int) -> tuple:
    while True:
        exp = tuple(rng.randint(0, max_degree) for _ in range(nvars))
        if sum(exp) <= max_degree:
            return exp


def random_poly(
    rng: random.Random,
    nvars: int,
    max_degree: int = 3,
    max_terms: int = 4,
    coeff_bound: int = 5,
) -> Poly:
    terms: dict = {}
    for _ in range(rng.randint(0, max_terms)):
        exp = random_exponent(rng, nvars, max_degree)
        coeff = Fraction(rng.randint(-coeff_bound, coeff_bound), rng.randint(1, 3))
        terms[exp] = terms.get(exp, 0) + coeff
    return Poly(nvars, terms)


def random_nonzero_poly(rng: random.Random, nvars: int, **kw) -> Poly:
    while True:
        p = random_poly(rng, nvars, **kw)
        if p:
            return p


def random_derivation(rng: random.Random, nvars: int, **kw) -> Derivation:
    return Derivation(tuple(random_poly(rng, nvars, **kw) for _ in range(nvars)))


def poly_scalar_multiple(a: Poly, b: Poly) -> bool:
    """Is a = c * b for a single nonzero rational c?"""
    if a.nvars != b.nvars:
        return False
    if not a or not b:
        return bool(not a and not b)
    lead = b.leading_monomial()
    if a.coefficient(lead) == 0:
        return False
    ratio = Fraction(a.coefficient(lead)) / Fraction(b.coefficient(lead))
    return ratio != 0 and a == b * ratio


def derivation_scalar_multiple(a: Derivation, b: Derivation) -> bool:
    """Is a = c * b for a single nonzero rational c across all coefficients?"""
    if a.nvars != b.nvars:
        return False
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    ratio = None
    for ca, cb in zip(a.coeffs, b.coeffs):
        if bool(ca) != bool(cb):
            return False
        if cb:
            lead = cb.leading_monomial()
            if ca.coefficient(lead) == 0:
                return False
            r = Fraction(ca.coefficient(lead)) / Fraction(cb.coefficient(lead))
            if ratio is None:
                ratio = r
            elif ratio != r:
                return False
    if ratio is None or ratio == 0:
        return False
    return all(ca == cb * ratio for ca, cb in zip(a.coeffs, b.coeffs))


def match_up_to_scalar(actual: list[Derivation], expected: list[Derivation]) -> bool:
    """Each expected derivation matches exactly one actual one, up to scalar."""
    if len(actual) != len(expected):
        return False
    remaining = list(actual)
    for e in expected:
        hit = next(
            (a for a in remaining if derivation_scalar_multiple(a, e)), None
        )
        if hit is None:
            return False
        remaining.remove(hit)
    return True
