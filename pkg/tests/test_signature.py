import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from concordia.alexander import alexander_polynomial
from concordia.errors import (InvalidConfig, InvalidSeifertMatrix, NotPrime, OmegaIsOne,
                              UnknownBuiltin)
from concordia.signature import (BUILTINS, CosPoint, RootOfUnity, SeifertMatrix, arf, builtin,
                                 connected_sum, lt_signature, parse_omega, rho_integral, rho_zp,
                                 rho_zp_direct, signature_profile, trefoil_sum)
import oracles

KNOTS = ["trefoil_rh", "trefoil_lh", "figure8", "5_2"]
SUMS = KNOTS + ["trefoil_rh#figure8", "trefoil_rh#trefoil_rh", "5_2#trefoil_lh", "3*trefoil_rh"]

turns = st.integers(2, 40).flatmap(lambda n: st.integers(1, n - 1).map(lambda a: Fraction(a, n)))


def test_validation():
    with pytest.raises(InvalidSeifertMatrix):
        SeifertMatrix([[1, 0], [0, 1]])
    with pytest.raises(InvalidSeifertMatrix):
        SeifertMatrix([[1]])
    with pytest.raises(InvalidSeifertMatrix):
        SeifertMatrix([[1, 2], [3]])
    with pytest.raises(UnknownBuiltin):
        builtin("trefoil_xx")


def test_parse_forms():
    a = SeifertMatrix.parse("[[-1, 1], [0, -1]]")
    b = SeifertMatrix.parse("-1 1; 0 -1")
    assert a == b == builtin("trefoil_rh")
    with pytest.raises(InvalidSeifertMatrix):
        SeifertMatrix.parse("[[1, 2")


def test_builtin_sums():
    assert builtin("2*trefoil_rh") == builtin("trefoil_rh#trefoil_rh") == trefoil_sum(2)
    assert builtin("trefoil_rh#figure8") == connected_sum(builtin("trefoil_rh"), builtin("figure8"))
    assert builtin("unknot").size == 0


def test_alexander_agrees_with_diagrams(links):
    assert builtin("trefoil_rh").alexander() == alexander_polynomial(links["trefoil"])
    assert builtin("figure8").alexander() == alexander_polynomial(links["figure8"])


@pytest.mark.parametrize("name", SUMS)
@given(t=turns)
def test_roots_of_unity_against_numpy(name, t):
    V = builtin(name)
    assert lt_signature(V, RootOfUnity(t)) == oracles.lt_signature_numeric(V.tolist(), t)


@pytest.mark.parametrize("name", SUMS)
@given(c=st.fractions(-1, 1, max_denominator=50).filter(lambda c: c != 1))
def test_cos_points_against_numpy(name, c):
    V = builtin(name)
    t = math.acos(float(c)) / (2 * math.pi)
    expected = oracles.lt_signature_numeric(V.tolist(), t)
    # skip points numerically indistinguishable from a jump
    near = oracles.lt_signature_numeric(V.tolist(), t + 1e-7)
    if near == expected == oracles.lt_signature_numeric(V.tolist(), t - 1e-7):
        assert lt_signature(V, CosPoint(c)) == expected


@given(st.sampled_from(SUMS), st.sampled_from(SUMS), turns)
def test_additivity(a, b, t):
    A, B = builtin(a), builtin(b)
    assert lt_signature(connected_sum(A, B), t) == lt_signature(A, t) + lt_signature(B, t)


def test_conventions():
    V = builtin("trefoil_rh")
    assert lt_signature(V, Fraction(1, 2)) == 2
    assert lt_signature(V, Fraction(1, 2), "classical") == -2
    assert lt_signature(V, Fraction(1, 12)) == 0
    assert lt_signature(V, Fraction(1, 6)) == 1
    with pytest.raises(InvalidConfig):
        lt_signature(V, Fraction(1, 2), "other")


def test_omega_one():
    with pytest.raises(OmegaIsOne):
        lt_signature(builtin("trefoil_rh"), RootOfUnity(0))
    with pytest.raises(OmegaIsOne):
        lt_signature(builtin("trefoil_rh"), CosPoint(1))


def test_parse_omega():
    assert parse_omega("1/3") == RootOfUnity(Fraction(1, 3))
    assert parse_omega("cos:3/4") == CosPoint(Fraction(3, 4))
    with pytest.raises(InvalidConfig):
        parse_omega("abc")


def test_profiles():
    p = signature_profile(builtin("trefoil_rh"))
    assert [j.turn for j in p.jumps] == [Fraction(1, 6)]
    assert p.plateaus == [0, 2]
    assert signature_profile(builtin("figure8")).jumps == []
    q = signature_profile(builtin("5_2"))
    (j,) = q.jumps
    assert not j.exact
    assert j.hi - j.lo < Fraction(1, 10 ** 30)
    assert abs(j.approx() - math.acos(0.75) / (2 * math.pi)) < 1e-15
    # the jump sits at the rational cosine 3/4 and takes the average value there
    assert lt_signature(builtin("5_2"), CosPoint(Fraction(3, 4))) == 1
    assert lt_signature(builtin("5_2"), CosPoint(Fraction(4, 5))) == 0


def test_profile_files():
    p = signature_profile(builtin("trefoil_rh"))
    assert p.to_csv().splitlines() == ["start_turn,end_turn,value", "0,1/6,0", "1/6,5/6,2",
                                       "5/6,1,0"]
    svg = p.to_svg()
    assert svg.startswith("<svg") and 'version="1.1"' in svg


@pytest.mark.parametrize("name", SUMS)
@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_rho_zp_two_routes(name, p):
    V = builtin(name)
    assert rho_zp(V, p) == rho_zp_direct(V, p)


def test_rho_zp_not_prime():
    with pytest.raises(NotPrime):
        rho_zp(builtin("trefoil_rh"), 4)


def test_rho_values():
    T = builtin("trefoil_rh")
    assert rho_zp(T, 3).value == Fraction(4, 3)
    assert rho_zp(T, 2).value == 1
    r = rho_integral(T)
    assert r.exact and r.value == Fraction(4, 3)
    assert rho_integral(builtin("trefoil_lh")).value == Fraction(-4, 3)
    assert rho_integral(builtin("figure8")).value == 0
    assert rho_integral(trefoil_sum(2)).value == Fraction(8, 3)


def test_inexact_integral():
    r = rho_integral(builtin("5_2"))
    assert not r.exact
    assert r.hi - r.lo <= Fraction(1, 10 ** 12)
    exact = 2 * (1 - 2 * math.acos(0.75) / (2 * math.pi))
    assert abs(float(r.value) - exact) < 1e-12
    assert abs(float(r.value) - oracles.rho_integral_numeric(builtin("5_2").tolist())) < 1e-3


@given(st.sampled_from(SUMS), st.sampled_from(SUMS))
def test_integral_additivity(a, b):
    A, B = builtin(a), builtin(b)
    ra, rb, rab = rho_integral(A), rho_integral(B), rho_integral(connected_sum(A, B))
    assert rab.lo <= ra.hi + rb.hi and ra.lo + rb.lo <= rab.hi
    if ra.exact and rb.exact:
        assert rab.value == ra.value + rb.value


def test_trefoil_sums_zp():
    for k in range(0, 51):
        assert rho_zp(trefoil_sum(k), 3).value == Fraction(4 * k, 3)


def test_arf():
    assert arf(builtin("trefoil_rh")) == 1
    assert arf(trefoil_sum(2)) == 0
    assert arf(builtin("figure8")) == 1
    assert arf(builtin("5_2")) == 0


def test_builtin_table_is_valid():
    for name, V in BUILTINS.items():
        if V:
            SeifertMatrix(V)
