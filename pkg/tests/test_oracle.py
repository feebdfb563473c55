import random
from fractions import Fraction

import pytest
import sympy

from qmaster.algebra import Element, all_words
from qmaster.quantum import component_span, generators, iter_component_keys
from qmaster.series import bos, ferm
from qmaster.oracle import (
    ScalarMatrix, TruncatedPolynomial, abelianize, classical_ferm, scalar_det, verify_classical_mmt,
)

from conftest import random_element


def P(*cs):
    return TruncatedPolynomial(tuple(cs))


class TestAbelianize:
    def test_generators_vanish(self):
        for seed in range(10):
            m = ScalarMatrix.random(3, seed)
            for g in generators(3):
                assert abelianize(g.element, m, 2).is_zero()

    def test_ferm2_ones(self):
        assert abelianize(ferm(2), ScalarMatrix.ones(2), 2) == P(1, -2, 0)

    def test_unit(self):
        assert abelianize(Element.one(3), ScalarMatrix.random(3), 4) == P(1, 0, 0, 0, 0)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            abelianize(ferm(2), ScalarMatrix.ones(3), 2)

    def test_algebra_map(self, rng):
        for _ in range(30):
            m = ScalarMatrix.random(2, rng.randint(0, 999))
            e, f = random_element(rng, 2, 3, 4), random_element(rng, 2, 3, 4)
            for n in (2, 4, 6):
                assert abelianize(e * f, m, n) == abelianize(e, m, n) * abelianize(f, m, n)
                assert abelianize(e + f, m, n) == abelianize(e, m, n) + abelianize(f, m, n)

    def test_kills_ideal_blocks(self):
        m = ScalarMatrix([[Fraction(1, 2), 3, -1], [2, Fraction(-5, 3), 0], [1, 1, 7]])
        for n in (2, 3):
            for key in iter_component_keys(3, n):
                for s in component_span(3, key):
                    assert abelianize(s, m, n).is_zero()

    def test_bos_coefficients_by_word_enumeration(self):
        rng = random.Random(11)
        for r in (1, 2, 3):
            m = ScalarMatrix([[rng.randint(-3, 3) for _ in range(r)] for _ in range(r)])
            image = abelianize(bos(r, 5), m, 5)
            for n in range(6):
                total = 0
                for w in all_words(r, n):
                    v = 1
                    for x, a in zip(sorted(w), w):
                        v *= m[x, a]
                    total += v
                assert image.coeffs[n] == total


class TestClassical:
    def test_identity(self):
        assert classical_ferm(ScalarMatrix.identity(2), 3) == P(1, -2, 1, 0)

    def test_ones(self):
        assert classical_ferm(ScalarMatrix.ones(2), 2) == P(1, -2, 0)

    def test_matches_sympy(self):
        t = sympy.symbols("t")
        rng = random.Random(3)
        for r in (1, 2, 3, 4):
            rows = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(r)]
            poly = sympy.Poly((sympy.eye(r) - t * sympy.Matrix(rows)).det(), t)
            coeffs = [poly.coeff_monomial(t ** k) for k in range(r + 1)]
            assert classical_ferm(ScalarMatrix(rows), r).coeffs == tuple(Fraction(int(c)) for c in coeffs)

    def test_equals_abelianized_ferm(self):
        rng = random.Random(42)
        for _ in range(20):
            r = rng.randint(1, 4)
            m = ScalarMatrix([[rng.randint(-3, 3) for _ in range(r)] for _ in range(r)])
            assert abelianize(ferm(r), m, r) == classical_ferm(m, r)

    def test_scalar_det(self):
        assert scalar_det([[2, 1], [4, 2]]) == 0
        assert scalar_det([[0, 1], [1, 0]]) == -1
        assert scalar_det([]) == 1


class TestMMT:
    def test_identity_r2(self):
        m = ScalarMatrix.identity(2)
        b = abelianize(bos(2, 6), m, 6)
        assert b == P(*[n + 1 for n in range(7)])
        assert classical_ferm(m, 6) * b == TruncatedPolynomial.one(6)
        assert verify_classical_mmt(2, 6, matrix=m)["pass"]

    def test_ones_r2(self):
        m = ScalarMatrix.ones(2)
        b = abelianize(bos(2, 6), m, 6)
        assert b == P(*[2 ** n for n in range(7)])
        assert verify_classical_mmt(2, 6, matrix=m)["pass"]

    def test_r1(self):
        rep = verify_classical_mmt(1, 4, seed=3)
        assert rep["pass"]

    def test_r4_seed42(self):
        rep = verify_classical_mmt(4, 8, seed=42)
        assert rep["pass"]
        assert rep["product"] == ["1"] + ["0"] * 8

    def test_detects_wrong_series(self):
        m = ScalarMatrix.ones(2)
        f = abelianize(ferm(2), m, 4)
        wrong = bos(2, 4) - Element.monomial(2, "1", "1")
        assert f * abelianize(wrong, m, 4) != TruncatedPolynomial.one(4)


class TestScalarMatrixJson:
    def test_round_trip(self):
        m = ScalarMatrix([[Fraction(1, 3), -2], [0, Fraction(7, 5)]])
        assert m.to_dict() == {"r": 2, "entries": [["1/3", "-2"], ["0", "7/5"]]}
        assert ScalarMatrix.from_json(m.to_json()) == m

    def test_bad_size(self):
        with pytest.raises(ValueError):
            ScalarMatrix.from_dict({"r": 3, "entries": [["1", "0"], ["0", "1"]]})

    def test_random_is_documented_generator(self):
        rng = random.Random(42)
        expected = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        assert ScalarMatrix.random(3, 42) == ScalarMatrix(expected)

    def test_rational_entries(self):
        m = ScalarMatrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(-1, 4), 2]])
        for n in (3, 5):
            assert verify_classical_mmt(2, n, matrix=m)["pass"]
