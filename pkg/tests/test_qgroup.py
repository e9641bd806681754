"""Quantum presentation layer: rewriting, braiding data, morphisms."""
from fractions import Fraction

import pytest

from voaforge.exact import Cyclo
from voaforge.qgroup import (
    NCExpr, Presentation, braiding_matrix, braiding_report,
    build_presentation, check_inverse, check_morphism, confluence_probe,
    corrupt_linking, expand_super_serre, fg_maps, phi_compat_report,
    q_scalar, qgroup_report, reduce_expr, relation_report, step_budget,
    uqh_map, apply_map,
)


def one(p):
    return Cyclo.one(p)


class TestNCExpr:
    def test_arithmetic(self):
        p = 3
        a = NCExpr.word(p, ("x1",))
        b = NCExpr.word(p, ("x2",))
        prod = (a + b) * (a - b)
        assert prod.terms[("x1", "x1")] == one(p)
        assert prod.terms[("x2", "x1")] == one(p)
        assert prod.terms[("x1", "x2")] == -one(p)
        assert prod.terms[("x2", "x2")] == -one(p)
        assert (a - a).is_zero()
        assert NCExpr.word(p, (), Fraction(1, 2)).terms[()] == Fraction(1, 2)

    def test_scale_and_zero_drop(self):
        p = 2
        a = NCExpr.word(p, ("x1",), 3)
        assert a.scale(0).is_zero()
        assert (a + a.scale(-1)).is_zero()
        assert repr(NCExpr.zero(p)) == "0"


class TestBraiding:
    def test_matrix_a_p2_frozen(self):
        # q = i: diagonal parity signs on the q^c table give
        # [[q^2, q^-1], [q^-1, -1]] = [[-1, -i], [-i, -1]]
        B = braiding_matrix("a", 2)
        i = Cyclo.zeta(2, 1)
        assert B[0][0] == -one(2)
        assert B[0][1] == i ** -1
        assert B[1][0] == i ** -1
        assert B[1][1] == -one(2)

    def test_matrix_s_p1_frozen(self):
        # q = -1: all four entries are -q^{c} with c in {0,-1}
        B = braiding_matrix("s", 1)
        assert B[0][0] == B[1][1] == -one(1)
        assert B[0][1] == B[1][0] == one(1)

    def test_symmetry(self):
        for variant in ("a", "s"):
            for p in (1, 2, 3, 5):
                if variant == "a" and p == 1:
                    continue
                B = braiding_matrix(variant, p)
                assert B[0][1] == B[1][0]

    def test_report(self):
        for p in (1, 2, 3):
            rep = braiding_report(p)
            assert rep["ok"], rep
            assert rep["variants"]["a"]["lattice_checked"]
            assert rep["variants"]["s"]["lattice_checked"] == (p == 1)
            assert rep["variants"]["a"]["symmetric"]


class TestReduce:
    def test_linking_frozen(self):
        # x1* x1 -> B11 x1 x1* + (1 - K1^2)
        p = 3
        pres = build_presentation("a", p)
        q = q_scalar(p)
        nf, complete = reduce_expr(NCExpr.word(p, ("x1*", "x1")), pres)
        assert complete
        assert nf.terms == {("x1", "x1*"): q ** 2,
                            (): one(p), ("K1", "K1"): -one(p)}

    def test_weight_frozen(self):
        p = 3
        pres = build_presentation("a", p)
        nf, complete = reduce_expr(NCExpr.word(p, ("K1", "x1", "K1'")), pres)
        assert complete
        assert nf.terms == {("x1",): q_scalar(p) ** 2}

    def test_square_frozen(self):
        pres = build_presentation("a", 3)
        nf, complete = reduce_expr(NCExpr.word(3, ("x2", "x2")), pres)
        assert complete and nf.is_zero()

    def test_budget_exhaustion_is_inconclusive(self):
        pres = build_presentation("a", 3)
        word = NCExpr.word(3, ("K1", "x1", "K1'") * 4)
        nf, complete = reduce_expr(word, pres, max_steps=2)
        assert not complete
        assert not nf.is_zero()

    def test_step_budget_env(self, monkeypatch):
        monkeypatch.setenv("VOA_FORGE_MAX_STEPS", "17")
        assert step_budget() == 17
        assert step_budget(9) == 9
        monkeypatch.delenv("VOA_FORGE_MAX_STEPS")
        assert step_budget() == 100000

    def test_strategies_agree_on_cartan_words(self):
        # K/H conjugation commutes with the H-grading: both sweep orders
        # land on the same normal form
        pres = build_presentation("a", 3)
        w = NCExpr.word(3, ("K1", "H1", "x2", "K2'", "x1", "H2", "K0"))
        a, ca = reduce_expr(w, pres, strategy="leftmost")
        b, cb = reduce_expr(w, pres, strategy="rightmost")
        assert ca and cb and a == b


class TestPresentations:
    def test_variant_a_needs_p2(self):
        with pytest.raises(ValueError):
            build_presentation("a", 1)
        with pytest.raises(ValueError):
            build_presentation("bogus", 2)

    def test_relations_all_reduce(self):
        for variant, ps in (("a", (2, 3)), ("s", (1, 2, 3)),
                            ("uqh", (1, 2, 3))):
            for p in ps:
                rep = relation_report(build_presentation(variant, p))
                assert rep["ok"], (variant, p, rep["items"])
                assert not rep["inconclusive"]

    def test_p2_replacement_active(self):
        rep2 = relation_report(build_presentation("a", 2))
        rep3 = relation_report(build_presentation("a", 3))
        assert rep2["replacement_active"]
        assert not rep3["replacement_active"]

    def test_p2_replacement_reduces(self):
        # (x1 x2)^2 - q^-1 (x2 x1)^2 -> 0 and the rewrite carries q
        p = 2
        pres = build_presentation("a", p)
        q = q_scalar(p)
        rel = (NCExpr.word(p, ("x1", "x2", "x1", "x2"))
               - NCExpr.word(p, ("x2", "x1", "x2", "x1"), q ** -1))
        nf, complete = reduce_expr(rel, pres)
        assert complete and nf.is_zero()
        nf, _ = reduce_expr(NCExpr.word(p, ("x2", "x1", "x2", "x1")), pres)
        assert nf.terms == {("x1", "x2", "x1", "x2"): q}

    def test_isotropic_square_consequence(self):
        # p >= 3: (x2 x1)^2 = (x1 x2)^2 follows from cubic Serre + squares
        for p in (3, 4):
            pres = build_presentation("a", p)
            rel = (NCExpr.word(p, ("x2", "x1", "x2", "x1"))
                   - NCExpr.word(p, ("x1", "x2", "x1", "x2")))
            nf, complete = reduce_expr(rel, pres)
            assert complete and nf.is_zero()

    def test_s_p1_rules_frozen(self):
        pres = build_presentation("s", 1)
        nf, _ = reduce_expr(NCExpr.word(1, ("x1", "x1")), pres)
        assert nf.is_zero()
        # q = -1: x1 x2 + q^-1 x2 x1 is x1 x2 - x2 x1 and reduces to 0
        rel = (NCExpr.word(1, ("x1", "x2"))
               + NCExpr.word(1, ("x2", "x1"), q_scalar(1) ** -1))
        nf, _ = reduce_expr(rel, pres)
        assert nf.is_zero()

    def test_uqh_p1_is_s(self):
        pres = build_presentation("uqh", 1)
        assert pres.variant == "uqh"
        assert "degenerate" in pres.note
        assert "x1" in pres.generators

    def test_corrupted_linking_fails_there(self):
        pres = build_presentation("a", 3)
        rep = relation_report(corrupt_linking(pres, 2))
        fails = [i["relation"] for i in rep["items"]
                 if i["status"] == "fail"]
        assert fails == ["linking:11"]
        assert not rep["ok"]


class TestSuperSerre:
    def test_all_small_p(self):
        for p in (1, 2, 3):
            rep = expand_super_serre(p)
            assert rep["ok"], rep

    def test_typo_flagged(self):
        rep = expand_super_serre(2)
        assert "e_i^2 = 0" in rep["typo_note"]


class TestMorphisms:
    def test_fg_need_p3(self):
        with pytest.raises(ValueError):
            fg_maps(2)
        with pytest.raises(ValueError):
            uqh_map(2)

    def test_fg_morphisms_p3(self):
        p = 3
        F, G = fg_maps(p)
        pa = build_presentation("a", p)
        ps = build_presentation("s", p)
        mf = check_morphism(F, pa, ps)
        assert mf["ok"], [i for i in mf["items"] if i["status"] != "pass"]
        mg = check_morphism(G, ps, pa)
        assert mg["ok"], [i for i in mg["items"] if i["status"] != "pass"]

    def test_fg_inverse_p3(self):
        p = 3
        F, G = fg_maps(p)
        pa = build_presentation("a", p)
        ps = build_presentation("s", p)
        rep = check_inverse(F, G, pa, ps)
        assert rep["ok"], [i for i in rep["items"] if i["status"] != "pass"]

    def test_inverse_k1_frozen(self):
        # F(G(K1)) = F(K1 K2) = (K1 K2) K2^-1 = K1
        p = 3
        F, G = fg_maps(p)
        pa = build_presentation("a", p)
        img = apply_map(F, apply_map(G, NCExpr.word(p, ("K1",))))
        nf, _ = reduce_expr(img, pa)
        assert nf.terms == {("K1",): one(p)}

    def test_inverse_h1_frozen(self):
        # G(H1) = H1 + H2, F(H1 + H2) = (H1 + H2) + (-H2) = H1
        p = 3
        F, G = fg_maps(p)
        img = apply_map(F, apply_map(G, NCExpr.word(p, ("H1",))))
        assert img.terms == {("H1",): one(p)}

    def test_uqh_embedding_p3(self):
        rep = check_morphism(uqh_map(3), build_presentation("uqh", 3),
                             build_presentation("a", 3))
        assert rep["ok"], [i for i in rep["items"] if i["status"] != "pass"]

    def test_phi_compatibility_p3(self):
        rep = phi_compat_report(3)
        assert rep["ok"], rep["items"]


class TestConfluenceProbe:
    def test_probe_agrees(self):
        for variant, p in (("a", 3), ("s", 2), ("uqh", 2)):
            rep = confluence_probe(build_presentation(variant, p),
                                   nwords=40, maxlen=6, seed=7)
            assert rep["ok"], rep["mismatches"]
            assert rep["checked"] > 0


class TestDispatch:
    def test_relations(self):
        rep = qgroup_report("a", 3, "relations")
        assert rep["ok"] and rep["braiding"]["ok"]

    def test_super_serre(self):
        rep = qgroup_report("s", 2, "super-serre")
        assert rep["ok"]

    def test_fg_inverse(self):
        rep = qgroup_report("a", 3, "fg-inverse")
        assert rep["ok"] and not rep["inconclusive"]

    def test_unknown_check(self):
        with pytest.raises(ValueError):
            qgroup_report("a", 3, "bogus")
