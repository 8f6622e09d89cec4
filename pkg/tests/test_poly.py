"""Exact polynomial arithmetic: examples, invariants, and guards."""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import dercent.poly as poly_mod
from dercent.errors import DimensionError, NotDivisibleError, ResourceLimitError
from dercent.poly import (
    Poly,
    grlex_key,
    monomials_of_degree,
    monomials_up_to_degree,
    poly_divexact,
)

x1, x2, x3 = Poly.variables(3)
a2 = x1 * x3 - Fraction(1, 2) * x2**2


def small_fraction():
    return st.fractions(min_value=-4, max_value=4, max_denominator=3)


def poly_st(nvars=3, max_degree=3, max_terms=4):
    exponent = st.sampled_from(monomials_up_to_degree(nvars, max_degree))
    items = st.lists(st.tuples(exponent, small_fraction()), max_size=max_terms)

    def build(pairs):
        terms: dict = {}
        for exp, c in pairs:
            terms[exp] = terms.get(exp, 0) + c
        return Poly(nvars, terms)

    return st.builds(build, items)


class TestArithmeticExamples:
    def test_additive_inverse(self):
        assert x1 + (-x1) == Poly.zero(3)
        assert not (x1 - x1)

    def test_scalar_distributes(self):
        assert a2 * 2 == 2 * x1 * x3 - x2**2

    def test_exponent_addition(self):
        assert x2 * x2 == x2**2
        assert (x2 * x2).coefficient((0, 2, 0)) == 1

    def test_nvars_mismatch(self):
        with pytest.raises(DimensionError):
            x1 * Poly.variable(2, 0)
        with pytest.raises(DimensionError):
            x1 + Poly.variable(4, 0)


class TestPartialDerivative:
    def test_power_rule(self):
        assert a2.partial_derivative(1) == -x2

    def test_constant(self):
        assert not Poly.constant(3, Fraction(7, 3)).partial_derivative(0)

    def test_product_monomial(self):
        assert (x1 * x3).partial_derivative(2) == x1

    def test_index_out_of_range(self):
        with pytest.raises(DimensionError):
            x1.partial_derivative(3)


class TestSubstitute:
    def test_shear(self):
        shear = [x1, x2 + x1**2, x3]
        assert (x1 * x2).substitute(shear) == x1 * x2 + x1**3

    def test_identity(self):
        assert a2.substitute([x1, x2, x3]) == a2

    def test_swap(self):
        y1, y2 = Poly.variables(2)
        assert (y2**2).substitute([y2, y1]) == y1**2

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            x1.substitute([x1, x2])


class TestEvaluate:
    def test_kernel_point(self):
        assert a2.evaluate([1, 2, 2]) == 0

    def test_zero_poly(self):
        assert Poly.zero(3).evaluate([5, -1, 7]) == 0

    def test_single_variable(self):
        y = Poly.variable(1, 0)
        assert (y**2).evaluate([3]) == 9

    def test_exactness(self):
        assert a2.evaluate([Fraction(1, 3), 1, 2]) == Fraction(1, 6)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            x1.evaluate([1, 2])


class TestCanonicalForm:
    def test_no_zero_terms_stored(self):
        p = Poly(2, {(1, 0): 1, (0, 1): 0})
        assert len(p.terms()) == 1

    def test_graded_lex_order(self):
        p = x3 + x1 * x3 + x2**2 + x1**2 + 1
        exps = [e for e, _ in p.terms()]
        assert exps == [(2, 0, 0), (1, 0, 1), (0, 2, 0), (0, 0, 1), (0, 0, 0)]
        assert exps == sorted(exps, key=grlex_key, reverse=True)

    def test_leading_data(self):
        assert a2.leading_monomial() == (1, 0, 1)
        assert a2.leading_coefficient() == 1
        with pytest.raises(ValueError):
            Poly.zero(3).leading_monomial()

    def test_content_and_primitive(self):
        p = Fraction(4, 3) * x1 - 2 * x2
        assert p.content() == Fraction(2, 3)
        prim = p.primitive_part()
        assert prim == 2 * x1 - 3 * x2
        assert (-prim).primitive_part() == prim

    def test_int_and_fraction_coefficients_agree(self):
        p = Poly(2, {(1, 0): 2})
        q = Poly(2, {(1, 0): Fraction(2)})
        assert p == q and hash(p) == hash(q)

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            Poly(2, {(1, 0): 0.5})

    def test_immutable(self):
        with pytest.raises(AttributeError):
            x1.nvars = 5

    def test_homogeneous_components(self):
        p = x1 + x2**2 + 3
        comps = dict(p.homogeneous_components())
        assert comps[0] == 3 and comps[1] == x1 and comps[2] == x2**2
        assert a2.is_homogeneous()
        assert not p.is_homogeneous()


class TestMonomialContent:
    def test_common_factor(self):
        p = x1**2 * x3 + x1 * x2 * x3**2
        assert p.monomial_content() == (1, 0, 1)
        assert p.divide_by_monomial((1, 0, 1)) == x1 + x2 * x3

    def test_no_common_factor(self):
        assert a2.monomial_content() == (0, 0, 0)

    def test_zero_poly(self):
        assert Poly.zero(3).monomial_content() == (0, 0, 0)

    def test_non_divisor_rejected(self):
        with pytest.raises(NotDivisibleError):
            (x1 + x2).divide_by_monomial((1, 0, 0))


class TestConcurrency:
    def test_parallel_products_are_consistent(self):
        # values are immutable and operations pure, so concurrent use
        # from threads must agree with the sequential result
        from concurrent.futures import ThreadPoolExecutor

        p = a2 + x1**2
        q = x2 * x3 - 1
        expected = p * q
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda _: p * q, range(64)))
        assert all(r == expected for r in results)


class TestDegreeGuard:
    def test_product_guard(self, monkeypatch):
        monkeypatch.setattr(poly_mod, "DEGREE_CAP", 8)
        p = x1**4
        with pytest.raises(ResourceLimitError):
            (p * p) * x1

    def test_pow_guard(self, monkeypatch):
        monkeypatch.setattr(poly_mod, "DEGREE_CAP", 8)
        with pytest.raises(ResourceLimitError):
            x1**9

    def test_substitute_guard(self, monkeypatch):
        monkeypatch.setattr(poly_mod, "DEGREE_CAP", 8)
        with pytest.raises(ResourceLimitError):
            (x1**3).substitute([x2**3, x1, x3])


class TestJson:
    def test_round_trip(self):
        p = Fraction(-1, 2) * x2**2 + x1 * x3 + 7
        data = p.to_json()
        assert Poly.from_json(data) == p
        text = json.dumps(data)
        assert "0.5" not in text and "-1/2" in text

    def test_coeff_strings_are_exact(self):
        data = a2.to_json()
        coeffs = {item["coeff"] for item in data["terms"]}
        assert coeffs == {"1", "-1/2"}

    def test_zero(self):
        assert Poly.from_json(Poly.zero(3).to_json()) == Poly.zero(3)


class TestMonomialEnumeration:
    def test_of_degree(self):
        monos = monomials_of_degree(3, 2)
        assert len(monos) == 6
        assert monos[0] == (2, 0, 0) and monos[-1] == (0, 0, 2)

    def test_up_to_degree(self):
        assert len(monomials_up_to_degree(3, 2)) == 10
        assert len(monomials_up_to_degree(4, 5)) == 126


class TestDivexact:
    def test_exact_factor(self):
        u = (x1 + x2) ** 3
        assert poly_divexact(u, x1 + x2) == (x1 + x2) ** 2

    def test_fraction_coefficients(self):
        u = a2 * (x1 - Fraction(1, 3) * x3)
        assert poly_divexact(u, a2) == x1 - Fraction(1, 3) * x3

    def test_not_divisible(self):
        with pytest.raises(NotDivisibleError):
            poly_divexact(x1 * x3 + 1, x2)

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            poly_divexact(x1, Poly.zero(3))


class TestRingAxioms:
    @given(a=poly_st(), b=poly_st(), c=poly_st())
    def test_add_associative(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(a=poly_st(), b=poly_st(), c=poly_st())
    def test_mul_distributes(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(a=poly_st(), b=poly_st())
    def test_mul_commutative(self, a, b):
        assert a * b == b * a

    @given(a=poly_st(), b=poly_st(), i=st.integers(0, 2))
    def test_leibniz(self, a, b, i):
        lhs = (a * b).partial_derivative(i)
        rhs = a.partial_derivative(i) * b + a * b.partial_derivative(i)
        assert lhs == rhs

    @given(a=poly_st(max_degree=2), b=poly_st(max_degree=2))
    def test_substitute_is_ring_hom(self, a, b):
        images = [x2, x1 + x3, x1 * x2]
        assert (a * b).substitute(images) == a.substitute(images) * b.substitute(images)
        assert (a + b).substitute(images) == a.substitute(images) + b.substitute(images)

    @given(a=poly_st())
    def test_json_round_trip(self, a):
        assert Poly.from_json(a.to_json()) == a


def test_random_evaluation_consistency():
    rng = random.Random(11)
    for _ in range(50):
        from support import random_poly

        a = random_poly(rng, 3)
        b = random_poly(rng, 3)
        point = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)]
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
        assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)
