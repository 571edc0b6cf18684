import pytest
from hypothesis import given, strategies as st

from concordia.smith import AbelianGroupStructure, invariant_factors, smith_normal_form
from oracles import snf_diagonal

matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@given(matrices)
def test_uav_equals_d(A):
    D, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(matrices)
def test_against_sympy(A):
    assert [abs(d) for d in invariant_factors(A)] == snf_diagonal(A)


def test_group_text():
    g = AbelianGroupStructure.from_orders(2, [2, 6, 1])
    assert str(g) == "Z^2 + Z/2 + Z/6"
    assert AbelianGroupStructure.parse(str(g)) == g
    assert str(AbelianGroupStructure(0, ())) == "0"
    assert AbelianGroupStructure.from_orders(0, [4, 6]).torsion == (2, 12)


def test_cokernel():
    assert str(AbelianGroupStructure.cokernel([[2, 0], [0, 3]], 2)) == "Z/6"
    assert AbelianGroupStructure.cokernel([[0, 0]], 2).rank == 2


def test_bad_torsion():
    with pytest.raises(ValueError):
        AbelianGroupStructure(0, (3, 4))
