from math import comb, factorial

import pytest

from qmaster.algebra import Biword, Element, all_words, biword, is_circuit, mul_trunc
from qmaster.quantum import re
from qmaster.series import bos, ferm, k_i, nondecreasing_words, s_i, univ


def E(r, *terms):
    return Element(r, [(biword(t, b), c) for c, t, b in terms])


class TestS:
    def test_examples(self):
        assert s_i(2, 1) == E(2, (1, "1", "1"), (1, "1", "2"))
        assert s_i(1, 1) == E(1, (1, "1", "1"))
        assert s_i(3, 2) == E(3, (1, "2", "1"), (1, "2", "2"), (1, "2", "3"))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            s_i(2, 3)


class TestK:
    def test_examples(self):
        assert k_i(1, 1, 2) == E(1, (1, "", ""), (1, "1", "1"), (1, "11", "11"))
        assert k_i(2, 1, 2) == E(2, (1, "", ""), (1, "1", "1"), (1, "1", "2"), (1, "11", "11"),
                                 (1, "11", "12"), (1, "11", "21"), (1, "11", "22"))
        for r in (1, 2, 3):
            assert k_i(r, 1, 0) == Element.one(r)

    @pytest.mark.parametrize("r,i,n", [(2, 1, 4), (3, 2, 3), (3, 3, 4)])
    def test_geometric_recursion(self, r, i, n):
        k = k_i(r, i, n)
        assert k == Element.one(r) + mul_trunc(s_i(r, i), k, n)

    def test_terms_are_constant_top_words(self):
        k = k_i(3, 2, 3)
        assert len(k) == sum(3 ** n for n in range(4))
        assert all(set(b.top) <= {2} and c == 1 for b, c in k.items())


class TestBos:
    def test_r2_n2(self):
        expected = E(2, (1, "", ""), (1, "1", "1"), (1, "2", "2"), (1, "11", "11"),
                     (1, "12", "12"), (1, "12", "21"), (1, "22", "22"))
        assert bos(2, 2) == expected

    def test_r1(self):
        assert bos(1, 3) == E(1, (1, "", ""), (1, "1", "1"), (1, "11", "11"), (1, "111", "111"))

    def test_counts(self):
        assert len(bos(3, 4)) == 121
        for r, n in [(2, 5), (3, 3)]:
            assert len(bos(r, n)) == sum(r ** k for k in range(n + 1))

    def test_terms_are_sorted_circuits(self):
        for b, c in bos(3, 4).items():
            assert c == 1
            assert is_circuit(b)
            assert b.top == tuple(sorted(b.bottom))


class TestFerm:
    def test_r1(self):
        assert ferm(1) == E(1, (1, "", ""), (-1, "1", "1"))

    def test_r2(self):
        expected = E(2, (1, "", ""), (-1, "1", "1"), (-1, "2", "2"), (1, "12", "12"), (-1, "21", "12"))
        assert ferm(2) == expected

    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_counts_and_signs(self, r):
        f = ferm(r)
        assert len(f) == sum(comb(r, k) * factorial(k) for k in range(r + 1))
        assert all(c in (1, -1) for _, c in f.items())
        assert all(is_circuit(b) for b in f.support())

    def test_r3_count(self):
        assert len(ferm(3)) == 16

    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_subset_structure(self, r):
        restricted = ferm(r).filter(lambda b: r not in b.bottom)
        assert restricted == ferm(r - 1).embed(r)


class TestUniv:
    def test_r2_n1(self):
        assert univ(2, 1) == E(2, (1, "", ""), (1, "1", "1"), (1, "1", "2"), (1, "2", "1"), (1, "2", "2"))

    def test_degree_counts(self):
        assert len(univ(2, 2).homogeneous(2)) == 12
        for r in (1, 2, 3):
            u = univ(r, 4)
            for n in range(5):
                assert len(u.homogeneous(n)) == comb(n + r - 1, r - 1) * r ** n

    @pytest.mark.parametrize("r", [1, 2, 3])
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_real_part_is_bos(self, r, n):
        assert re(univ(r, n)) == bos(r, n)

    def test_nondecreasing_words(self):
        assert list(nondecreasing_words(2, 2)) == [(1, 1), (1, 2), (2, 2)]
        words = set(nondecreasing_words(3, 3))
        assert words == {tuple(sorted(w)) for w in all_words(3, 3)}

    def test_univ_equals_filter(self):
        expected = {Biword(u, w) for n in range(4) for u in all_words(3, n) for w in all_words(3, n)
                    if list(u) == sorted(u)}
        assert set(univ(3, 3).support()) == expected
