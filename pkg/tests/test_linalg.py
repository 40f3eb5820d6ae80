import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from fquandle import linalg

matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_snf_transforms(a):
    s = linalg.smith_normal_form(a)
    assert linalg.matmul(linalg.matmul(s.U, a), s.V) == s.D
    r, c = len(a), len(a[0])
    assert linalg.matmul(s.U, s.U_inv) == linalg.identity(r)
    assert linalg.matmul(s.V, s.V_inv) == linalg.identity(c)
    d = s.diag
    for i in range(r):
        for j in range(c):
            if i != j:
                assert s.D[i][j] == 0
    nz = [v for v in d if v]
    assert all(v > 0 for v in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert d[:len(nz)] == nz


@given(matrices)
def test_snf_matches_sympy(a):
    ours = [abs(v) for v in linalg.smith_normal_form(a).diag]
    ref = sympy_snf(Matrix(a), domain=ZZ)
    theirs = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert ours == theirs


@given(matrices, st.sampled_from([2, 3, 4, 5, 6]))
def test_kernel_size_matches_enumeration(a, m):
    c = len(a[0])
    A = np.array(a)
    count = sum(1 for v in itertools.product(range(m), repeat=c) if not ((A @ v) % m).any())
    assert linalg.kernel_size(a, m, c) == count


@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_matches_nullity(a, p):
    c = len(a[0])
    assert p ** (c - linalg.rank_mod_p(a, p)) == linalg.kernel_size(a, p, c)


def test_kernel_lattice_basis_vectors_are_solutions():
    a = [[2, 4, 0], [0, 3, 3]]
    lat = linalg.kernel_lattice(a, 6, 3)
    B = lat.basis
    prod = linalg.matmul(a, B)
    assert all(v % 6 == 0 for row in prod for v in row)
    assert lat.coordinates(B) == linalg.identity(3)
    with pytest.raises(ValueError):
        lat.coordinates([[1], [0], [0]])


def test_kernel_mod_image_simple():
    # d1 = 0, d0 maps onto the first coordinate: quotient Z_4 of rank 1
    q = linalg.kernel_mod_image([[0, 0]], [[1], [0]], 4, 2)
    assert q.divisors == [4]
    q = linalg.kernel_mod_image([[0, 0]], [[2], [0]], 4, 2)
    assert sorted(q.divisors) == [2, 4]
    q = linalg.kernel_mod_image([[1, 0]], None, 3, 2)
    assert q.divisors == [3] and q.generators == [[0, 1]]


def test_is_prime():
    assert [n for n in range(12) if linalg.is_prime(n)] == [2, 3, 5, 7, 11]
