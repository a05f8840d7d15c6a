"""Polynomial core: parsing, arithmetic, and contraction."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from wildforms.poly import (
    Form,
    LinearForm,
    apply,
    bigrade,
    constant,
    make_form,
    monomial,
    monomials,
    multiply,
    parse,
    power,
    render,
    scale,
)

from helpers import random_form, random_linear


class TestParseRender:
    def test_round_trip_fixed(self):
        for text, variables in [
            ("x^2*y + 1/2*x*y^2 - 3*y^3", "xy"),
            ("x*y*z", "xyz"),
            ("u^5", "xu"),
            ("x^3 - x^2*y + x*y^2 - y^3", "xy"),
        ]:
            f = parse(text, variables)
            assert render(f) == text
            assert parse(render(f), variables) == f

    def test_round_trip_random(self):
        rng = random.Random(2024)
        for _ in range(40):
            f = random_form(rng)
            assert parse(render(f), f.variables) == f

    def test_zero_parses_to_none(self):
        assert parse("0", "xy") is None
        assert parse("x - x", "xy") is None
        assert parse("2*x*y - x*y - x*y", "xy") is None

    def test_inhomogeneous_rejected(self):
        with pytest.raises(ValueError, match="degree 1 and 2"):
            parse("x + y^2", "xy")

    def test_unknown_variable_rejected(self):
        with pytest.raises(ValueError, match="unknown variable 'q'"):
            parse("x + q", "xy")

    def test_syntax_error_position(self):
        with pytest.raises(ValueError, match="position"):
            parse("x^2 + (y)", "xy")

    def test_rational_coefficients(self):
        f = parse("2/3*x^2 - 5/7*y^2", "xy")
        assert f.coefficient((2, 0)) == Fraction(2, 3)
        assert f.coefficient((0, 2)) == Fraction(-5, 7)


class TestFormConstruction:
    def test_make_form_cancellation_returns_none(self):
        assert make_form("xy", {(1, 1): 0}) is None
        assert make_form("xy", {(2, 0): Fraction(1, 2), (0, 2): 0}) is not None

    def test_zero_form_rejected(self):
        with pytest.raises(ValueError, match="zero polynomial"):
            Form("xy", 2, {})

    def test_inhomogeneous_terms_rejected(self):
        with pytest.raises(ValueError, match="inhomogeneous"):
            Form("xy", 2, {(2, 0): 1, (1, 2): 1})

    def test_duplicate_variables_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            Form(("x", "x"), 1, {(1, 0): 1})

    def test_monomials_shape(self):
        for n in range(1, 5):
            for d in range(0, 5):
                ms = monomials(n, d)
                assert len(ms) == math.comb(n - 1 + d, d)
                assert len(set(ms)) == len(ms)
                assert all(len(e) == n and sum(e) == d for e in ms)
                assert ms == sorted(ms, reverse=True)

    def test_evaluate(self):
        f = parse("x^2*y - 2*y^3", "xy")
        assert f.evaluate([3, 2]) == 9 * 2 - 2 * 8
        assert f.evaluate([Fraction(1, 2), 1]) == Fraction(1, 4) - 2

    def test_arithmetic_operators(self):
        f = parse("x^2 + y^2", "xy")
        g = parse("x^2 - y^2", "xy")
        assert f + g == parse("2*x^2", "xy")
        assert f - f is None
        assert 2 * f == parse("2*x^2 + 2*y^2", "xy")
        assert scale(f, 0) is None
        assert -f == parse("-x^2 - y^2", "xy")

    def test_multiply(self):
        f = parse("x + y", "xy")
        assert multiply(f, f) == parse("x^2 + 2*x*y + y^2", "xy")


class TestApply:
    def test_known_contraction(self):
        f = parse("x^3*y", "xy")
        op = monomial("xy", (2, 0))
        assert apply(op, f) == parse("6*x*y", "xy")
        assert apply(monomial("xy", (0, 2)), f) is None

    def test_mismatched_variables_rejected(self):
        f = parse("x^2", "xy")
        op = monomial("xz", (1, 0))
        with pytest.raises(ValueError, match="different variable"):
            apply(op, f)

    def test_bilinearity(self):
        rng = random.Random(7)
        for _ in range(20):
            d = rng.randint(2, 4)
            k = rng.randint(1, d)
            f = random_form(rng, nvars=3, degree=d)
            g = random_form(rng, nvars=3, degree=d)
            op = random_form(rng, nvars=3, degree=k)
            left = apply(op, f + g) if f + g is not None else None
            fa, ga = apply(op, f), apply(op, g)
            right = fa + ga if fa is not None and ga is not None else (fa or ga)
            assert left == right

    def test_composition(self):
        rng = random.Random(8)
        for _ in range(20):
            f = random_form(rng, nvars=2, degree=5)
            a = random_form(rng, nvars=2, degree=2)
            b = random_form(rng, nvars=2, degree=1)
            step = apply(b, f)
            nested = apply(a, step) if step is not None else None
            assert nested == apply(multiply(a, b), f)

    def test_factorial_scalar_on_powers(self):
        """Contracting l^d by a monomial gives d!/(d-k)! times the
        coefficient product times l^(d-k)."""
        rng = random.Random(9)
        for _ in range(25):
            variables = "xyz"
            lin = random_linear(rng, variables)
            d = rng.randint(2, 5)
            k = rng.randint(0, d)
            for e in monomials(3, k):
                got = apply(monomial(variables, e), power(lin, d))
                coeff = Fraction(math.factorial(d), math.factorial(d - k))
                for c, a in zip(lin.coefficients, e):
                    coeff *= c ** a
                want = scale(power(lin, d - k), coeff)
                assert got == want


class TestLinearForm:
    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError, match="zero vector"):
            LinearForm("xy", (0, 0))

    def test_proportional(self):
        a = LinearForm("xyz", (2, -4, 6))
        b = LinearForm("xyz", (-1, 2, -3))
        c = LinearForm("xyz", (2, -4, 5))
        assert a.proportional(b)
        assert not a.proportional(c)

    def test_power_zero_is_one(self):
        lin = LinearForm("xy", (3, -1))
        assert power(lin, 0) == constant("xy", 1)

    def test_power_matches_repeated_multiply(self):
        lin = LinearForm("xy", (1, 2))
        assert power(lin, 3) == parse("x^3 + 6*x^2*y + 12*x*y^2 + 8*y^3", "xy")


class TestBigrade:
    def test_bihomogeneous(self):
        f = parse("x^2*u + x*y*u", "xyu")
        assert bigrade(f, ["x", "y"], ["u"]) == (2, 1)

    def test_witness_error_names_both_terms(self):
        f = parse("x^2*u + x*u^2", "xu")
        with pytest.raises(ValueError) as info:
            bigrade(f, ["x"], ["u"])
        message = str(info.value)
        assert "x^2*u" in message and "x*u^2" in message

    def test_partition_check(self):
        f = parse("x*y", "xy")
        with pytest.raises(ValueError, match="partition"):
            bigrade(f, ["x"], ["z"])
        with pytest.raises(ValueError, match="partition"):
            bigrade(f, ["x", "y"], ["y"])
