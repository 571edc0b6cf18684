import random

import pytest
from hypothesis import given, strategies as st

from concordia.alexander import (BlanchfieldVerdict, abelianization_map, alexander_matrix,
                                 alexander_polynomial, alexander_polynomial_deleted_column,
                                 alexander_polynomial_fitting, blanchfield_criterion,
                                 elementary_ideal, elementary_ideal_gcd, fox_derivative,
                                 torres_check)
from concordia.errors import NonFreeAbelianization, WrongComponentCount
from concordia.groups import GroupWord, Presentation, wirtinger
from concordia.laurent import LaurentPoly, parse_laurent
from concordia.link import add_kink, braid_closure, linking_matrix, unknot, unlink
import oracles
from strategies import braid_words

# Normalized polynomials, frozen from the sympy brute-force oracle in
# tests/oracles.py (gcd of maximal minors of the Fox matrix).
FROZEN = {
    "hopf": "1",
    "trefoil": "x1^2 - x1 + 1",
    "figure8": "x1^2 - 3*x1 + 1",
    "t2_4": "x1*x2 + 1",
    "t2_6": "x1^2*x2^2 + x1*x2 + 1",
    "whitehead": "x1*x2 - x1 - x2 + 1",
    "trefoil_hopf": "x1^2 - x1 + 1",
    "borromean": "-x1*x2*x3 + x1*x2 + x1*x3 - x1 + x2*x3 - x2 - x3 + 1",
    "t3_3": "-x1*x2*x3 + 1",
    "chain4": "x2*x3 - x2 - x3 + 1",
    "t4_4": "x1^2*x2^2*x3^2*x4^2 - 2*x1*x2*x3*x4 + 1",
    "unknot": "1",
    "unlink2": "0",
}
SMALL = ["hopf", "trefoil", "figure8", "t2_4", "t2_6", "whitehead", "trefoil_hopf",
         "borromean", "t3_3", "chain4"]


def frozen(name, m):
    return parse_laurent(FROZEN[name], m).normalized()


def test_corpus_is_covered(links):
    assert set(FROZEN) == set(links)


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_values(links, name):
    d = links[name]
    assert alexander_polynomial(d) == frozen(name, d.m)


@pytest.mark.parametrize("name", SMALL)
def test_oracle_reproduces_frozen(links, name):
    d = links[name]
    P, xs = oracles.alexander_polynomial(d.crossings, [list(c) for c in d.components])
    assert P == oracles.laurent_to_poly(frozen(name, d.m), xs)


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_fitting_route_agrees(links, name):
    d = links[name]
    assert alexander_polynomial_fitting(d).normalized() == alexander_polynomial(d)


@pytest.mark.parametrize("name", SMALL)
def test_column_deletion_independence(links, name):
    d = links[name]
    target = alexander_polynomial(d)
    for col in range(wirtinger(d).n):
        assert alexander_polynomial_deleted_column(d, col) == target, col


def test_trivial_links():
    assert alexander_polynomial(unknot()) == LaurentPoly.one(1)
    assert alexander_polynomial(unlink(3)).is_zero()


@pytest.mark.parametrize("name", [n for n in FROZEN if n not in ("unknot",)])
def test_torres_at_one(links, name):
    d = links[name]
    delta = alexander_polynomial(d)
    if d.m >= 3:
        assert delta.augmentation() == 0
    elif d.m == 2:
        assert abs(delta.augmentation()) == abs(linking_matrix(d).lk(1, 2))
        assert torres_check(d)


def test_torres_needs_two_components(links):
    with pytest.raises(WrongComponentCount):
        torres_check(links["trefoil"])


def test_blanchfield(links):
    assert blanchfield_criterion(links["trefoil_hopf"]) == BlanchfieldVerdict.NOT_CONSTANTLY_ZERO
    assert blanchfield_criterion(links["t2_6"]) == BlanchfieldVerdict.NOT_CONSTANTLY_ZERO
    assert blanchfield_criterion(links["whitehead"]) == BlanchfieldVerdict.INCONCLUSIVE
    assert blanchfield_criterion(links["hopf"]) == BlanchfieldVerdict.INCONCLUSIVE


def test_elementary_ideals(links):
    t = links["trefoil"]
    assert elementary_ideal(t, 0) == [frozen("trefoil", 1)]
    assert elementary_ideal(t, 1) == [LaurentPoly.one(1)]
    d = links["t4_4"]
    # (x1 x2 x3 x4 - 1) survives in the next ideal
    assert elementary_ideal_gcd(d, 1) == parse_laurent("x1*x2*x3*x4 - 1", 4).normalized()
    assert elementary_ideal_gcd(d, 2).is_unit()


def test_elementary_ideal_gcd_matches_generators(links):
    from concordia.alexander import ideal_gcd
    for name in ("t2_6", "whitehead", "borromean", "t3_3"):
        d = links[name]
        for k in range(3):
            gens = elementary_ideal(d, k)
            assert ideal_gcd(gens, d.m).normalized() == elementary_ideal_gcd(d, k), (name, k)


def test_torsion_abelianization_rejected():
    p = Presentation(1, (GroupWord.gen(0, 2),))
    with pytest.raises(NonFreeAbelianization):
        abelianization_map(p)


def test_meridians_sent_to_basis(links):
    for d in links.values():
        p = wirtinger(d)
        images = abelianization_map(p)
        for k, g in enumerate(p.meridians):
            assert images[g] == tuple(int(i == k) for i in range(d.m))


@given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=10))
def test_fundamental_formula(letters):
    # sum_k (dw/dx_k)(x_k - 1) = w - 1 after abelianization
    w = GroupWord(tuple(letters))
    total = LaurentPoly.zero(3)
    for k in range(3):
        total = total + fox_derivative(w, k, nvars=3) * (LaurentPoly.var(k, 3) - 1)
    image = LaurentPoly.monomial(tuple(w.exponent_sums(3)))
    assert total == image - 1


def test_matrix_shape(links):
    A = alexander_matrix(wirtinger(links["trefoil"]))
    assert A.shape == (3, 3)


# ----------------------------------------------------------------------
# diagram moves

@given(braid_words(max_strands=3, max_len=6), st.integers(0, 99), st.sampled_from([1, -1]))
def test_kink_invariance(wn, k, sign):
    d = braid_closure(*wn)
    edges = sorted(d.edge_component)
    d2 = add_kink(d, edges[k % len(edges)], sign, k % 2 == 0)
    assert alexander_polynomial(d2) == alexander_polynomial(d)


@given(braid_words(max_strands=3, max_len=6), st.integers(0, 99), st.integers(0, 99),
       st.sampled_from([1, -1]))
def test_second_move_invariance(wn, pos, g, s):
    word, n = wn
    g = 1 + g % (n - 1)
    w2 = list(word)
    p = pos % (len(w2) + 1)
    w2[p:p] = [s * g, -s * g]
    assert alexander_polynomial(braid_closure(w2, n)) == alexander_polynomial(braid_closure(word, n))


def test_third_move_invariance():
    rng = random.Random(3)
    for _ in range(10):
        pre = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randrange(4))]
        post = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randrange(4))]
        a = braid_closure(pre + [1, 2, 1] + post, 3)
        b = braid_closure(pre + [2, 1, 2] + post, 3)
        assert alexander_polynomial(a) == alexander_polynomial(b)


def test_markov_moves_on_knots():
    trefoil = alexander_polynomial(braid_closure([1, 1, 1]))
    figure8 = alexander_polynomial(braid_closure([1, -2, 1, -2]))
    # conjugation and stabilization
    assert alexander_polynomial(braid_closure([2, 1, -2, 1, -2, -2], 3)) == figure8
    assert alexander_polynomial(braid_closure([-1, 1, -2, 1, -2, 1], 3)) == figure8
    assert alexander_polynomial(braid_closure([1, 1, 1, 2], 3)) == trefoil
    assert alexander_polynomial(braid_closure([1, 1, 1, -2], 3)) == trefoil
