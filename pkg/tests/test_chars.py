"""Character-series identities, frozen coefficients, and failure demos."""
from fractions import Fraction

import pytest

from voaforge.chars import (a_series, b_minus_series, b_series, ch_betagamma,
                            ch_fock_u, ch_ft, ch_lplus, ch_lplus_negative,
                            ch_m, ch_weyl_free, ch_weyl_simple, chi,
                            decomposition_check, denom_D, f_rs, inv_D,
                            p1_decomposition_check, weight_q, weight_z,
                            weyl_check)
from voaforge.exact import BiSeries, euler_poch, pochhammer, rat


def test_weight_values():
    assert weight_z(1, 2, 2) == 1
    assert weight_q(1, 2, 2) == Fraction(3, 2)
    assert weight_q(1, 3, 3) == 6
    assert weight_q(1, 1, 5) == 0 and weight_z(1, 1, 5) == 0


def test_label_periodicity():
    # shifting the first label down by p raises the second by one
    for p in (1, 2, 3):
        for r in (1, 2):
            for s in (-2, 0, 1, 3):
                assert weight_q(r - p, s, p) == weight_q(r, s + 1, p)
                assert weight_z(r - p, s, p) == weight_z(r, s + 1, p)


def test_chi_polynomials():
    c = chi(3, 4)
    assert c.coeff(0, 2) == 1 and c.coeff(0, 0) == 1 and c.coeff(0, -2) == 1
    assert chi(0, 4).is_zero()
    w = chi(2, 4, var="w")
    assert w.coeff(0, 0, 1) == 1 and w.coeff(0, 0, -1) == 1
    with pytest.raises(ValueError):
        chi(-1, 4)


def test_betagamma_character():
    bg = ch_betagamma(3)
    # ground level is the full geometric tail in the negative weight
    for k in range(0, 5):
        assert bg.coeff(0, -2 * k) == 1
    assert bg.coeff(0, 2) == 0
    assert bg.coeff(1, 2) == 1 and bg.coeff(1, 0) == 1


def test_vacuum_weyl_coefficients():
    c = ch_weyl_simple(2, 0, 5)
    want = {(0, 0): 1, (1, 0): 1, (1, 2): 1, (1, -2): 1,
            (2, 0): 3, (2, 2): 2, (3, 0): 6}
    for (qe, ze), v in want.items():
        assert c.coeff(qe, ze) == v


def test_weyl_characters_agree():
    for p in (1, 2, 3):
        for n in (0, 1, 2):
            rep = weyl_check(p, n, 5)
            assert rep["ok"], (p, n, rep["residue"][:3])


def test_decomposition_p2():
    for r, s in ((1, 1), (2, 1), (1, 2)):
        rep = decomposition_check(2, r, s, 4)
        assert rep["ok"], (r, s, rep["residue"][:3])


def test_decomposition_uses_first_index_zero_labels():
    # r = p reflects to first index 0; the generic label formulas cover it
    rep = decomposition_check(2, 2, 1, 3)
    assert rep["ok"]
    assert weight_q(0, 1, 2) == Fraction((2 + 1) ** 2 - 4, 8)


def test_p1_triple_decomposition():
    rep = p1_decomposition_check(4)
    assert rep["ok"], rep["residue"][:5]


def test_fock_telescoping():
    for n in (-2, 0, 3):
        lhs = ch_m(n, 6) + ch_m(n + 1, 6)
        rhs = ch_fock_u(n, 6)
        assert not lhs.diff_on_common(rhs)


def test_m_reflection():
    # the alternating sum cancels its dip: label -n matches label n
    for n in (1, 2, 3):
        assert not ch_m(-n, 6).diff_on_common(ch_m(n, 6))


def test_reflected_label_example():
    # p=2, r=1, m=1 reduces to (f_{1,0} - f_{1,2}) / D
    got = ch_lplus_negative(2, 1, 1, 4)
    num = (f_rs(1, 0, 2, 5) - f_rs(1, 2, 2, 5))
    manual = (num * inv_D(2, 5, zlo=-16)).clip_z(-12, None).truncate(4)
    assert not got.diff_on_common(manual)


def test_pochhammer_shift_identity():
    # (1 - x) / (x; q) == 1 / (x q; q) with x the negative root monomial
    one = BiSeries.one(6)
    lhs = (one - BiSeries.monomial(1, 0, -2, qorder=6)) \
        * pochhammer(0, -2, 6).inv(zlo=-20)
    rhs = pochhammer(1, -2, 6).inv(zlo=-18)
    assert not lhs.clip_z(-12, None).diff_on_common(rhs.clip_z(-12, None))


def test_ft_coefficients():
    f1 = ch_ft(1, 4)
    for (qe, ze), v in {(0, 0): 1, (1, 0): 1, (1, 2): 1, (2, 0): 6,
                        (2, 2): 5, (3, 0): 15, (3, 2): 11}.items():
        assert f1.coeff(qe, ze) == v
    f2 = ch_ft(2, 4)
    for (qe, ze), v in {(0, 0): 1, (1, 0): 1, (1, 2): 1, (2, 0): 3,
                        (2, 2): 2, (3, 0): 6, (3, 2): 5}.items():
        assert f2.coeff(qe, ze) == v


def test_perturbed_character_fails():
    # a single corrupted coefficient must be caught by the telescoping sum
    bad = ch_m(1, 6) + BiSeries.monomial(1, 2, 0, qorder=6)
    rhs = ch_fock_u(1, 6) - ch_m(2, 6)
    diff = bad.diff_on_common(rhs)
    assert diff and diff[0][0][0] == 2


def test_weyl_free_route_is_exact_in_z():
    c = ch_weyl_free(2, 0, 4)
    assert c.zwin == (None, None)
    assert c.coeff(0, 0) == 1 and c.coeff(0, -2) == 0
