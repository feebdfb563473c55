import pytest

from qmaster.algebra import Element, biword, mul_trunc
from qmaster.quantum import EchelonStore, generators, is_zero_mod_ideal, normal_form, re
from qmaster.series import bos, ferm, k_i, s_i, univ
from qmaster.verify import (
    CLAIMS, EXACT, IDEAL, Check, VerificationReport, cofactor_summands, e_element, run_checks,
    verify, verify_lemma2, verify_lemma8, verify_lemma9, verify_recursion, verify_theorem1,
    verify_theorem3,
)


def E(r, *terms):
    return Element(r, [(biword(t, b), c) for c, t, b in terms])


class TestTheorems:
    def test_theorem1_r1_telescopes_exactly(self):
        assert mul_trunc(ferm(1), bos(1, 8), 8) == Element.one(1)
        rep = verify_theorem1(1, 8)
        assert rep.passed
        assert [d.n for d in rep.degrees] == list(range(9))

    def test_theorem1_r2_n2_anchor(self):
        part = mul_trunc(ferm(2), bos(2, 2), 2).homogeneous(2)
        assert part == E(2, (1, "12", "12"), (-1, "21", "12"), (-1, "21", "21"), (1, "12", "21"))
        rep = verify_theorem1(2, 2)
        assert rep.passed
        assert rep.degrees[2].components == 1 and rep.degrees[2].rows == 1

    def test_theorem3_small(self):
        assert verify_theorem3(1, 6).passed
        assert verify_theorem3(2, 5).passed

    def test_theorem1_and_theorem3_agree_on_circuits(self):
        for r, n in [(2, 4), (3, 3)]:
            assert re(mul_trunc(ferm(r), univ(r, n), n)) == mul_trunc(ferm(r), bos(r, n), n)
            assert verify("rephrase_equivalence", r, n).passed

    def test_ferm_times_univ_is_not_one(self):
        # The reality projection matters: the full product carries imaginary terms.
        p = mul_trunc(ferm(2), univ(2, 3), 3)
        assert not is_zero_mod_ideal(p - 1)


class TestLemmas:
    def test_lemma8_r1(self):
        for n in range(6):
            assert k_i(1, 1, n) == univ(1, n)
            assert verify_lemma8(1, n).passed

    def test_lemma8_r2_counts(self):
        assert [len(univ(2, 3).homogeneous(n)) for n in range(4)] == [1, 4, 12, 32]
        assert verify_lemma8(2, 3).passed

    def test_lemma9_r2_commutator_is_generator_sum(self):
        comm = s_i(2, 1) * s_i(2, 2) - s_i(2, 2) * s_i(2, 1)
        total = Element.zero(2)
        for g in generators(2):
            total = total + g.element
        assert comm == total
        assert verify_lemma9(2, 4).passed

    def test_lemma9_same_index(self):
        assert s_i(3, 2) * s_i(3, 2) - s_i(3, 2) * s_i(3, 2) == Element.zero(3)

    def test_k_commutator_not_exactly_zero(self):
        diff = mul_trunc(k_i(2, 1, 2), k_i(2, 2, 2), 2) - mul_trunc(k_i(2, 2, 2), k_i(2, 1, 2), 2)
        assert diff and is_zero_mod_ideal(diff)

    def test_lemma2_anchor(self):
        e = E(3, (1, "12", "21"))
        e2 = E(3, (1, "1", "1"), (1, "1", "2"))
        prod = e * e2
        assert prod == E(3, (1, "121", "211"), (1, "121", "212"))
        assert re(prod) == E(3, (1, "121", "211")) == e * re(e2)

    def test_lemma2_random(self):
        assert verify_lemma2(3, 4, trials=30, seed=1).passed

    @pytest.mark.parametrize("claim,r,n", [("lemma7", 2, 2), ("lemma7", 3, 3), ("property5", 3, 3),
                                           ("property4", 2, 2), ("property6", 2, 2)])
    def test_determinant_claims(self, claim, r, n):
        assert verify(claim, r, n).passed


class TestRecursion:
    def test_r2(self):
        rep = verify_recursion(2, 4)
        assert rep.passed
        assert is_zero_mod_ideal(re(e_element(2, 4)) - 1)

    def test_base_case(self):
        assert e_element(1, 6) == Element.one(1)
        assert mul_trunc(1 - E(1, (1, "1", "1")), k_i(1, 1, 6), 6) == Element.one(1)

    def test_circuit_absence_term_scan(self):
        first = cofactor_summands(2, 4)[0]
        assert first
        for b in first.support():
            assert 1 in b.bottom and 1 not in b.top
        assert re(first) == Element.zero(2)

    def test_r3_circuit_absence(self):
        summands = cofactor_summands(3, 3)
        for i, s in enumerate(summands[:-1], 1):
            assert s and re(s) == Element.zero(3)
            assert all(i in b.bottom and i not in b.top for b in s.support())
        assert re(summands[-1])

    def test_requires_r2(self):
        with pytest.raises(ValueError):
            verify_recursion(1, 3)


class TestReports:
    def test_failure_is_reported_and_round_trips(self, store):
        broken = bos(2, 3) - E(2, (1, "12", "21"))
        rep = run_checks("theorem1", 2, 3, [Check("broken", mul_trunc(ferm(2), broken, 3) - 1)], store=store)
        assert not rep.passed
        assert [d.passed for d in rep.degrees] == [True, True, False, False]
        reloaded = VerificationReport.from_json(rep.to_json())
        assert reloaded.to_json() == rep.to_json()
        for elem in reloaded.failure_elements():
            assert elem
            assert not is_zero_mod_ideal(elem, EchelonStore(None))
            assert normal_form(elem) == elem

    def test_exact_failure(self):
        rep = run_checks("lemma8", 2, 2, [Check("x", E(2, (1, "1", "2")), EXACT)])
        assert not rep.passed
        assert rep.failures[0]["n"] == 1 and rep.failures[0]["mode"] == EXACT

    def test_exact_vs_ideal_mode(self):
        g = generators(2)[2].element
        assert not run_checks("x", 2, 2, [Check("g", g, EXACT)]).passed
        assert run_checks("x", 2, 2, [Check("g", g, IDEAL)]).passed

    def test_schema(self):
        d = verify_theorem1(2, 3).to_dict()
        assert set(d) >= {"claim", "r", "N", "pass", "degrees", "failures"}
        assert set(d["degrees"][0]) == {"n", "pass", "components", "max_dim", "rows", "millis"}
        assert d["degrees"][0]["millis"] is None

    def test_timings_optional(self):
        rep = verify_theorem1(2, 3, timings=True)
        assert rep.wall_ms is not None
        assert all(d.millis is not None for d in rep.degrees)

    def test_text_rendering(self):
        txt = verify_theorem1(2, 3).to_text()
        assert txt.splitlines()[0] == "theorem1 r=2 N=3: PASS"
        assert "degree 3: pass" in txt

    @pytest.mark.parametrize("claim", sorted(CLAIMS))
    def test_deterministic(self, claim, tmp_path):
        a = verify(claim, 2, 3, seed=5, trials=4).to_json()
        b = verify(claim, 2, 3, seed=5, trials=4, store=EchelonStore(tmp_path)).to_json()
        assert a == b

    def test_parallel_matches_serial(self, tmp_path):
        for claim, r, n in [("theorem1", 2, 5), ("lemma9", 3, 3), ("property6", 3, 3)]:
            serial = verify(claim, r, n).to_json()
            parallel = verify(claim, r, n, jobs=3, store=EchelonStore(tmp_path / claim)).to_json()
            assert serial == parallel

    def test_unknown_claim(self):
        with pytest.raises(ValueError):
            verify("theorem2", 2, 2)

    def test_alphabet_mismatch(self):
        with pytest.raises(ValueError):
            run_checks("x", 3, 2, [Check("g", Element.one(2))])
