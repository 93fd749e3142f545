"""Polynomial engine tests, cross-checked against sympy as an independent oracle."""

import json
import random
from fractions import Fraction

import pytest
import sympy as sp

from pvi.multipoly import (
    ExactDivisionError,
    MultiPoly,
    NotAPerfectSquareError,
    poly_square_root,
)

F = Fraction
Y = MultiPoly.variable("y")
T = MultiPoly.variable("t")
Z = MultiPoly.variable("z")

_SYMS = {name: sp.Symbol(name) for name in ("y", "t", "z")}


def to_sympy(p: MultiPoly):
    expr = sp.Integer(0)
    for exps, coef in p.terms.items():
        term = sp.Rational(coef.numerator, coef.denominator)
        for var, e in zip(p.vars, exps):
            term *= _SYMS[var] ** e
        expr += term
    return sp.expand(expr)


def random_poly(rng, nterms=4, deg=3):
    terms = {}
    for _ in range(nterms):
        exps = (rng.randint(0, deg), rng.randint(0, deg), rng.randint(0, deg))
        terms[exps] = F(rng.randint(-6, 6), rng.randint(1, 4))
    return MultiPoly(terms, ("y", "t", "z"))


class TestConstruction:
    def test_zero_coefficients_dropped(self):
        p = MultiPoly({(1, 0): 1, (0, 1): 0}, ("y", "t"))
        assert p == Y
        assert p.vars == ("y",)

    def test_unused_variables_dropped(self):
        p = MultiPoly({(2, 0): 1}, ("y", "z"))
        assert p.vars == ("y",)
        assert p == Y ** 2

    def test_variable_order_enforced(self):
        with pytest.raises(ValueError):
            MultiPoly({(1, 1): 1}, ("t", "y"))
        with pytest.raises(ValueError):
            MultiPoly({(1,): 1}, ("w",))

    def test_equality_against_scalars(self):
        assert MultiPoly.constant(F(3, 2)) == F(3, 2)
        assert MultiPoly.zero() == 0
        assert Y != 0


class TestArithmeticOracle:
    def test_against_sympy(self):
        rng = random.Random(99)
        for _ in range(60):
            p, q = random_poly(rng), random_poly(rng)
            assert to_sympy(p + q) == to_sympy(p) + to_sympy(q)
            assert to_sympy(p - q) == to_sympy(p) - to_sympy(q)
            assert to_sympy(p * q) == sp.expand(to_sympy(p) * to_sympy(q))
            assert to_sympy(p.derivative("t")) == sp.diff(to_sympy(p), _SYMS["t"])

    def test_power(self):
        rng = random.Random(100)
        for _ in range(10):
            p = random_poly(rng, nterms=3, deg=2)
            assert to_sympy(p ** 3) == sp.expand(to_sympy(p) ** 3)
        assert (Y + T) ** 0 == 1

    def test_linearity_scalar_mixing(self):
        p = 2 * Y - T * 3 + F(1, 2)
        assert p(y=F(1), t=F(0)) == F(5, 2)

    def test_evaluation_matches_sympy(self):
        rng = random.Random(17)
        for _ in range(20):
            p = random_poly(rng)
            vals = {n: F(rng.randint(-5, 5), rng.randint(1, 3)) for n in ("y", "t", "z")}
            expected = to_sympy(p).subs({_SYMS[n]: sp.Rational(v) for n, v in vals.items()})
            assert p(**vals) == F(str(expected))

    def test_complex_evaluation(self):
        p = Y ** 2 - T
        assert p(y=1j, t=2.0) == -3 + 0j

    def test_unbound_variable_rejected(self):
        with pytest.raises(ValueError):
            (Y + T)(y=1)


class TestSubstitution:
    def test_polynomial_subs(self):
        p = Y ** 2 - T
        assert p.subs(y=T + 1) == T ** 2 + T + 1

    def test_subs_with_scalar(self):
        assert (Y * T).subs(t=F(1, 2)) == Y * F(1, 2)


class TestDivision:
    def test_exact(self):
        p = (Y ** 2 - T) * (Y ** 2 - 2 * Y + T)
        assert p.exact_div(Y ** 2 - T) == Y ** 2 - 2 * Y + T

    def test_inexact_returns_none(self):
        assert (Y ** 2 + T).try_divide(Y - 1) is None
        with pytest.raises(ExactDivisionError):
            (Y ** 2 + T).exact_div(Y - 1)

    def test_random_products(self):
        rng = random.Random(314)
        for _ in range(40):
            a, b = random_poly(rng), random_poly(rng)
            if a.is_zero() or b.is_zero():
                continue
            assert (a * b).exact_div(b) == a

    def test_zero_divisor_rejected(self):
        with pytest.raises(ZeroDivisionError):
            Y.exact_div(MultiPoly.zero())


class TestSquareRoot:
    def test_linear_square(self):
        assert poly_square_root((Y - 1) ** 2) == Y - 1

    def test_quartic_square(self):
        q = Y ** 4 - 4 * Y ** 3 + 6 * T * Y ** 2 - 4 * T ** 2 * Y + T ** 2
        assert poly_square_root(q * q) == q

    def test_sign_normalization(self):
        q = -(Y - T)
        assert poly_square_root(q * q) == Y - T

    def test_not_square(self):
        with pytest.raises(NotAPerfectSquareError):
            poly_square_root(Y ** 2 + T)
        with pytest.raises(NotAPerfectSquareError):
            poly_square_root(Y ** 3)
        with pytest.raises(NotAPerfectSquareError):
            poly_square_root(MultiPoly.constant(-4))

    def test_random_squares(self):
        rng = random.Random(2718)
        for _ in range(25):
            p = random_poly(rng, nterms=3, deg=2)
            if p.is_zero():
                continue
            assert poly_square_root(p * p) == p.sign_normalized()

    def test_constant(self):
        assert poly_square_root(MultiPoly.constant(F(9, 4))) == F(3, 2)


class TestOrderingAndContent:
    def test_grlex_leading_term(self):
        p = 3 * Y ** 4 - T ** 5
        exps, coef = p.leading_term()
        assert coef == -1  # t^5 has larger total degree
        p2 = Y ** 2 * T - Y * T ** 2
        exps, coef = p2.leading_term()
        # same total degree: y-major tie break
        assert coef == 1 and exps == (2, 1)

    def test_monomial_content(self):
        p = Y ** 3 * T - Y ** 2 * T ** 2
        assert p.strip_monomial_content() == Y - T

    def test_content_in_variable(self):
        p = (T ** 2 - 1) * Y ** 2 + (T ** 2 - 1) * T * Y
        content = p.strip_monomial_content().content_in("y")
        # content of (t^2-1)*y + (t^3-t) in y is monic (t^2 - 1)... after stripping y
        assert content.degree_in("t") >= 1

    def test_trivial_content(self):
        assert (Y ** 2 - T).content_in("y") == 1


class TestSerialization:
    def test_str_round_trip(self):
        cases = [
            3 * Y ** 4 - 4 * T * Y ** 3 - 4 * Y ** 3 + 6 * T * Y ** 2 - T ** 2,
            MultiPoly.zero(),
            MultiPoly.constant(F(-7, 3)),
            Y - 1,
            F(1, 2) * Y * T * Z - Z ** 5,
        ]
        for p in cases:
            assert MultiPoly.parse(str(p)) == p

    def test_parse_examples(self):
        assert MultiPoly.parse("y^2 - t") == Y ** 2 - T
        assert MultiPoly.parse("-1/2*y + 3") == -F(1, 2) * Y + 3
        with pytest.raises(ValueError):
            MultiPoly.parse("y +")
        with pytest.raises(ValueError):
            MultiPoly.parse("2y")

    def test_json_round_trip(self):
        p = F(1, 3) * Y ** 2 * T - Z + 5
        blob = p.to_json()
        assert MultiPoly.from_json_dict(json.loads(blob)) == p

    def test_json_deterministic(self):
        p = Y ** 2 - T + Z
        assert p.to_json() == p.to_json()


class TestImmutability:
    def test_setattr_blocked(self):
        with pytest.raises(AttributeError):
            Y.terms = {}

    def test_hashable(self):
        assert len({Y, Y, T}) == 2
