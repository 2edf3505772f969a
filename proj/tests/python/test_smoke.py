from fractions import Fraction

import pytest

import singmod


def test_zagier_g_head():
    g = singmod.zagier_g(8)
    assert g == {-1: -1, 0: 2, 3: -248, 4: 492, 7: -4119}


def test_traces():
    assert singmod.trace_level1(3) == -248
    assert singmod.trace_star(2, 8) == 152
    assert singmod.trace_star(2, 207) == 113643
    assert singmod.trace_star(3, 11) == 22
    big = singmod.trace_level1(1000 * 4 + 3)
    assert isinstance(big, int) and abs(big) > 2**64


def test_phi_two():
    table = singmod.phi_table(2, 12)
    assert table[-1] == 1 and table[0] == -2
    assert table[7] == 23
    assert singmod.phi_coefficient(2, 12, 0, 1) == 1
    assert singmod.phi_coefficient(2, 12, 2, 3).denominator == 1


def test_verify():
    r = singmod.verify_star(2, 3, 23)
    assert r["fails"] == 0
    assert any(e["d"] == 23 and e["trace"] == "113643" and e["verdict"] == "PASS" for e in r["entries"])
    assert singmod.verify_level1(5, 30)["fails"] == 0


def test_quadratic_and_oracles():
    assert singmod.class_representatives(23) == [(1, 1, 6), (2, 1, 3), (2, -1, 3)]
    assert singmod.hurwitz_sum(3) == Fraction(1, 3)
    assert singmod.kronecker(-23, 3) == 1
    assert singmod.oracle_level1(23) == singmod.trace_level1(23)
    assert singmod.oracle_star(2, 7) == -23 == singmod.trace_star(2, 7)
    assert 71 in singmod.GENUS_ZERO_PRIMES


def test_errors():
    with pytest.raises(singmod.Error, match="UnsupportedDiscriminant"):
        singmod.trace_star(2, 5)
    with pytest.raises(singmod.Error, match="InvalidArgument"):
        singmod.verify_star(3, 3, 10)
    with pytest.raises(singmod.Error, match="UnsupportedLevel"):
        singmod.phi_table(4, 10)
