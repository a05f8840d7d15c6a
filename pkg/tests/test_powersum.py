"""Power sum decompositions, the Hessian factorization, binary ranks."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from wildforms.hessian import hessian_determinant
from wildforms.poly import Form, LinearForm, parse, power, scale
from wildforms.powersum import (
    PowerSumDecomposition,
    VeroneseMatrix,
    binary_waring_rank,
    factorization_check,
    hessian_nonvanishing,
    is_squarefree_binary,
    verify_decomposition,
    veronese_matrix,
)

from helpers import oracle_binary_rank, random_decomposition, random_form


def fermat_cubic_decomposition():
    forms = [LinearForm("xyz", (1, 0, 0)), LinearForm("xyz", (0, 1, 0)),
             LinearForm("xyz", (0, 0, 1))]
    return PowerSumDecomposition(forms, 3)


class TestDecomposition:
    def test_target_and_flags(self):
        dec = fermat_cubic_decomposition()
        assert dec.target == parse("x^3 + y^3 + z^3", "xyz")
        assert dec.length == 3
        assert dec.is_pure
        assert verify_decomposition(dec)

    def test_signed_scalars(self):
        forms = [LinearForm("xy", (1, 1)), LinearForm("xy", (1, -1))]
        dec = PowerSumDecomposition(forms, 3, [Fraction(1, 8), Fraction(-1, 8)])
        assert dec.target == parse("3/4*x^2*y + 1/4*y^3", "xy")
        assert not dec.is_pure
        assert verify_decomposition(dec)

    def test_explicit_target_checked(self):
        forms = [LinearForm("xy", (1, 0))]
        with pytest.raises(ValueError, match="do not sum"):
            PowerSumDecomposition(forms, 2, target=parse("y^2", "xy"))
        dec = PowerSumDecomposition(forms, 2, target=parse("x^2", "xy"))
        assert dec.target == parse("x^2", "xy")

    def test_validation(self):
        a = LinearForm("xy", (1, 2))
        b = LinearForm("xy", (-2, -4))
        with pytest.raises(ValueError, match="proportional"):
            PowerSumDecomposition([a, b], 2)
        with pytest.raises(ValueError, match="zero scalars"):
            PowerSumDecomposition([a], 2, [0])
        with pytest.raises(ValueError, match="at least one"):
            PowerSumDecomposition([], 2)
        with pytest.raises(ValueError, match="length"):
            PowerSumDecomposition([a], 2, [1, 1])
        with pytest.raises(ValueError, match="cancel"):
            PowerSumDecomposition(
                [LinearForm("xy", (1, 1)), LinearForm("xy", (1, 0)),
                 LinearForm("xy", (0, 1))], 1, [1, -1, -1])


class TestVeroneseMatrix:
    def test_entries_are_point_evaluations(self):
        dec = fermat_cubic_decomposition()
        w = VeroneseMatrix(dec, 1)
        assert w.entries == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert w.rank() == 3

    def test_rows_follow_apolar_basis(self):
        forms = [LinearForm("xy", (1, 1)), LinearForm("xy", (2, -1))]
        dec = PowerSumDecomposition(forms, 3)
        w = veronese_matrix(dec, 1)
        assert w.basis.monomials == ((1, 0), (0, 1))
        assert w.entries == [[1, 2], [1, -1]]

    def test_range_guard(self):
        dec = fermat_cubic_decomposition()
        with pytest.raises(ValueError):
            VeroneseMatrix(dec, 4)


class TestFactorization:
    def test_identity_on_seeded_decompositions(self):
        rng = random.Random(501)
        tried = 0
        while tried < 30:
            dec = random_decomposition(rng, nvars=rng.randint(2, 3),
                                       degree=rng.randint(2, 4))
            if dec is None:
                continue
            tried += 1
            d = dec.degree
            for k in range(d + 1):
                for l in range(k, d + 1):
                    if k + l <= d:
                        assert factorization_check(dec, k, l), (dec.target, k, l)

    def test_signed_inputs_explicitly(self):
        forms = [LinearForm("xyz", (1, 0, 0)), LinearForm("xyz", (0, 1, 0)),
                 LinearForm("xyz", (1, 1, 1))]
        dec = PowerSumDecomposition(forms, 4, [2, -3, Fraction(1, 2)])
        for k, l in [(0, 0), (0, 4), (1, 1), (1, 2), (1, 3), (2, 2)]:
            assert factorization_check(dec, k, l)

    def test_guards(self):
        dec = fermat_cubic_decomposition()
        with pytest.raises(ValueError, match="k <= l"):
            factorization_check(dec, 2, 1)
        with pytest.raises(ValueError):
            factorization_check(dec, 2, 2)

    def test_nonvanishing_certificate(self):
        dec = fermat_cubic_decomposition()
        assert hessian_nonvanishing(dec, 1)
        assert hessian_determinant(dec.target, 1) is not None

    def test_nonvanishing_needs_matching_length(self):
        forms = [LinearForm("xyz", (1, 0, 0)), LinearForm("xyz", (0, 1, 0)),
                 LinearForm("xyz", (0, 0, 1)), LinearForm("xyz", (1, 1, 1))]
        dec = PowerSumDecomposition(forms, 3)
        with pytest.raises(ValueError, match="not a_1"):
            hessian_nonvanishing(dec, 1)
        with pytest.raises(ValueError, match="2k"):
            hessian_nonvanishing(fermat_cubic_decomposition(), 2)

    def test_nonvanishing_agrees_with_determinant(self):
        rng = random.Random(502)
        matched = 0
        while matched < 12:
            dec = random_decomposition(rng, nvars=2, degree=3,
                                       count=rng.randint(1, 2))
            if dec is None:
                continue
            for k in (0, 1):
                w = veronese_matrix(dec, k)
                if dec.length != w.nrows:
                    continue
                claim = hessian_nonvanishing(dec, k)
                det = hessian_determinant(dec.target, k)
                if claim:
                    assert det is not None
                matched += 1


class TestSquarefreeBinary:
    def test_known_values(self):
        assert is_squarefree_binary(parse("x*y", "xy"))
        assert is_squarefree_binary(parse("x^2 - y^2", "xy"))
        assert is_squarefree_binary(parse("x^2 + y^2", "xy"))
        assert not is_squarefree_binary(parse("x^2", "xy"))
        assert not is_squarefree_binary(parse("x^2*y", "xy"))
        assert not is_squarefree_binary(parse("x^2 + 2*x*y + y^2", "xy"))

    def test_root_at_infinity(self):
        # x divides with multiplicity two once dehomogenized in x
        assert not is_squarefree_binary(parse("x^3*y - x^2*y^2", "xy"))
        assert is_squarefree_binary(parse("x*y^2 - x^2*y", "xy"))

    def test_linear_forms_squarefree(self):
        assert is_squarefree_binary(parse("x", "xy"))
        assert is_squarefree_binary(parse("3*y", "xy"))

    def test_irreducible_over_rationals_but_squared_roots(self):
        # (x^2 + y^2)^2 has no rational factors yet repeated complex roots
        assert not is_squarefree_binary(parse("x^4 + 2*x^2*y^2 + y^4", "xy"))


class TestBinaryRank:
    def test_spot_values(self):
        assert binary_waring_rank(parse("x^4", "xy")) == 1
        assert binary_waring_rank(parse("x*y", "xy")) == 2
        assert binary_waring_rank(parse("x*y^2", "xy")) == 3
        assert binary_waring_rank(parse("x*y^4", "xy")) == 5
        assert binary_waring_rank(parse("x^2*y^4", "xy")) == 5
        assert binary_waring_rank(parse("x^2*y^3", "xy")) == 4
        assert binary_waring_rank(parse("x^2 + y^2", "xy")) == 2

    def test_monomial_law(self):
        """Rank of x^a*y^b with a <= b is b + 1."""
        for a in range(1, 4):
            for b in range(a, 5):
                f = Form("xy", a + b, {(a, b): 1})
                assert binary_waring_rank(f) == b + 1

    def test_rank_of_power_sum_is_small(self):
        forms = [LinearForm("xy", (1, 1)), LinearForm("xy", (1, -2))]
        dec = PowerSumDecomposition(forms, 5)
        assert binary_waring_rank(dec.target) == 2

    def test_only_binary_forms(self):
        with pytest.raises(ValueError):
            binary_waring_rank(parse("x^2 + y*z", "xyz"))

    def test_matches_oracle(self):
        rng = random.Random(503)
        for _ in range(25):
            f = random_form(rng, nvars=2, degree=rng.randint(1, 6),
                            coeff_range=(-3, 3))
            assert binary_waring_rank(f) == oracle_binary_rank(f), f

    def test_high_rank_needs_degenerate_kernel(self):
        # the degree-5 form with a length-1 kernel slice held by a cube
        f = parse("x^3*y^2", "xy")
        assert binary_waring_rank(f) == 4
