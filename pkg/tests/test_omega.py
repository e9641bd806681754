"""Weight-line module structure: brackets, roots, classification."""
from fractions import Fraction

import pytest

from voaforge.omega import (a_neg, a_rs, bracket_check, classify, h_rs,
                            sweep, theta_line)
from voaforge.realize import level


def test_label_sum_identity():
    for p in (1, 2, 3, 5):
        for r in range(1, p + 1):
            for s in (-2, 1, 2, 4):
                assert a_rs(r, s, p) + a_neg(r, s, p) == -level(p) - 1


def test_weight_values():
    assert h_rs(1, 1, 1) == 0
    assert h_rs(1, 1, 2) == 0
    assert h_rs(2, 1, 2) == Fraction(-1, 8)
    assert h_rs(1, 2, 3) == Fraction((1 - 6) ** 2 - 4, 12)


def test_h_eigenvalue_frozen():
    line = theta_line(2, 1, 1, 0)
    assert line.h_c(0) == Fraction(3, 2)
    assert line.weight(1, 0) == Fraction(-3, 8)


def test_f_vanishes_at_roots():
    line = theta_line(3, 2, 2, 0)
    assert line.f_c(-line.A) == 0
    assert line.f_c(-line.B) == 0
    assert line.f_c(-line.A + 1) != 0


def test_bracket_check():
    rep = bracket_check(2, 1, 2, Fraction(1, 7))
    assert rep["ok"]
    assert any("[e,f]" in c["relation"] for c in rep["checks"])


def test_classify_frozen_example():
    rep = classify(2, 2, 1, Fraction(-1, 4))
    assert rep["case"] == "chain-2"
    assert rep["series"] == "L-(1) -> L+(-1)"


def test_classify_generic_simple():
    rep = classify(3, 2, 2, Fraction(1, 7))
    assert rep["case"] == "simple"
    assert rep["series"] == "dense"


def test_classify_single_root_small_label():
    rep = classify(3, 2, 2, -a_rs(2, 2, 3))
    assert rep["case"] == "chain-2"
    assert rep["series"] == "L-(7/3) -> L+(1/3)"


def test_classify_top_label_chain3():
    rep = classify(1, 1, 3, -a_rs(1, 3, 1))
    assert rep["case"] == "chain-3"
    assert rep["series"] == "L-(3) -> L+(1) -> L+(-3)"
    mid = rep["factors"][1]
    assert mid["type"] == "finite" and mid["dim"] == 2


def test_classify_top_label_s1():
    # the two roots collide: length-two chain with the standard labels
    rep = classify(1, 1, 1, 0)
    assert rep["series"] == "L-(1) -> L+(-1)"
    rep = classify(2, 2, 1, Fraction(-1, 4))
    assert rep["factors"][0]["type"] == "lowest"


def test_label_range_guard():
    with pytest.raises(ValueError, match="1 <= r <= p"):
        theta_line(2, 3, 1, 0)


def test_sweep():
    sw = sweep(pmax=2, window=4)
    assert sw["ok"] and sw["count"] == (1 + 2) * 3 * 4
