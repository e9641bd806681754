"""Catalog realizations: closure relations, central charges, intertwiner."""
from fractions import Fraction

import pytest

from voaforge.exact import rat
from voaforge.fock import FockState, conf_weight, mode_act, nth_product
from voaforge.lattice import space
from voaforge.realize import (
    g_apply,
    g_report,
    level,
    realization,
    strong_generator,
    sugawara_c,
    triplet_c,
    verify,
    x_product_report,
)


def _assert_all_ok(report):
    bad = [r for r in report["relations"] if not r["ok"]]
    assert not bad, bad


class TestWakimoto:
    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_closure_and_level(self, p):
        rep = verify(realization("wakimoto", p))
        _assert_all_ok(rep)
        assert rep["measured"]["k"] == str(Fraction(-2) + Fraction(1, p))
        assert rep["measured"]["c"] == str(3 - 6 * p)

    def test_h_is_current_combination(self):
        real = realization("wakimoto", 2)
        sp = real.space
        vac = FockState.vacuum(sp)
        expect = mode_act(vac, "v", -1).scale(-2) - mode_act(vac, "a", -1)
        assert real.fields["h"] == expect

    def test_frozen_weights(self):
        # e^{u+v} has weight 1, e^{-sqrt p alpha} has weight 2p
        for p in (1, 2):
            real = realization("wakimoto", p)
            sp, L = real.space, real.fields["L"]
            assert conf_weight(L, real.fields["e"]) == 1
            x00 = FockState.momentum(sp, sp.vec({"a": rat(-p)}))
            assert conf_weight(L, x00) == 2 * p


class TestPhi:
    @pytest.mark.parametrize("p", [2, 3])
    def test_closure(self, p):
        rep = verify(realization("phi", p))
        _assert_all_ok(rep)
        assert rep["measured"]["k"] == str(level(p))

    @pytest.mark.parametrize("p", [2, 3])
    def test_intertwined_by_g(self, p):
        rep = g_report(p)
        _assert_all_ok(rep)

    def test_g_moves_fermionic_screen_charge(self):
        # image of e^u support lands in the mixed-screen sector
        p = 2
        sp = space("uva", p)
        st = FockState.momentum(sp, sp.vec({"u": rat(1)}))
        out = g_apply(p, st)
        assert set(out.momenta()) == {
            (1 - Fraction(1, 4 * p), -Fraction(1, 4 * p), Fraction(1, 2))}


class TestVirasoro1p:
    @pytest.mark.parametrize("p,c", [(1, 1), (2, -2), (3, -7)])
    def test_central_charge(self, p, c):
        rep = verify(realization("virasoro-1p", p))
        _assert_all_ok(rep)
        assert triplet_c(p) == c
        assert rep["measured"]["c"] == str(c)

    def test_charge_formulas(self):
        assert sugawara_c(2) == -9
        assert triplet_c(5) == 1 - Fraction(96, 5)


class TestFms:
    def test_pairing(self):
        rep = verify(realization("fms", 1))
        _assert_all_ok(rep)

    def test_beta_gamma_values(self):
        real = realization("fms", 1)
        beta, gamma = real.fields["beta"], real.fields["gamma"]
        vac = FockState.vacuum(real.space)
        assert nth_product(beta, 0, gamma) == vac
        assert nth_product(gamma, 0, beta) == vac.scale(-1)


class TestSinglet:
    def test_m2_generators(self):
        rep = verify(realization("m2", 1))
        _assert_all_ok(rep)
        names = {r["relation"] for r in rep["relations"]}
        # pole 2 carries the -3/4 d^2 L + 4 :L^2: combination
        assert "W.W pole 2" in names and "W.W pole 6" in names

    def test_w_not_pole5(self):
        real = realization("m2", 1)
        from voaforge.fock import ope_singular
        poles = ope_singular(real.fields["W"], real.fields["W"])
        assert 5 not in poles


class TestPair:
    def test_all_relations(self):
        rep = verify(realization("p1-pair", 1))
        _assert_all_ok(rep)

    def test_p_restriction(self):
        with pytest.raises(ValueError):
            realization("p1-pair", 2)

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            realization("nope", 1)


class TestStrongGenerators:
    @pytest.mark.parametrize("p", [1, 2])
    def test_x_products(self, p):
        rep = x_product_report(p, 1)
        _assert_all_ok(rep)
        assert rep["scalar"] == "1"

    def test_screen_cube_vanishes(self):
        for p in (1, 2):
            assert strong_generator(0, 3, p).is_zero()

    def test_x01_p1_value(self):
        # single-screen image of e^{-alpha} at p=1: (u+v+a)_{-1} e^{u+v-a+...}
        sp = space("uva", 1)
        st = strong_generator(0, 1, 1)
        vac_mom = sp.vec({"u": rat(1), "v": rat(1)})
        expect = (mode_act(FockState.momentum(sp, vac_mom), "u", -1)
                  + mode_act(FockState.momentum(sp, vac_mom), "v", -1)
                  + mode_act(FockState.momentum(sp, vac_mom), "a", -1))
        assert st == expect

    def test_weight_of_x00(self):
        # weight of e^{-n sqrt p alpha} is p n(n+1)
        p = 2
        L = realization("wakimoto", p).fields["L"]
        sp = space("uva", p)
        for n in (1, 2):
            x = FockState.momentum(sp, sp.vec({"a": rat(-n * p)}))
            assert conf_weight(L, x) == p * n * (n + 1)
