import random
from fractions import Fraction

from gorlin.linalg import (
    det_and_adjugate,
    det_bareiss,
    identity,
    kernel_basis,
    mat_mul,
    rank,
    rref,
    transpose,
)


def F(rows):
    return [[Fraction(v) for v in row] for row in rows]


def rand_matrix(rng, n, m, lo=-5, hi=5):
    return [[Fraction(rng.randint(lo, hi)) for _ in range(m)] for _ in range(n)]


def test_kernel_examples():
    kb = kernel_basis(F([[1, 1]]))
    assert len(kb) == 1 and kb[0][0] == -kb[0][1] != 0
    assert kernel_basis(identity(3)) == []
    kb = kernel_basis(F([[0, 0], [0, 0]]))
    assert len(kb) == 2
    assert kernel_basis([], ncols=2) == identity(2)


def test_rank_nullity():
    rng = random.Random(5)
    for _ in range(20):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        a = rand_matrix(rng, n, m, -2, 2)
        assert rank(a) + len(kernel_basis(a)) == m
        for v in kernel_basis(a):
            prod = [sum(a[i][j] * v[j] for j in range(m)) for i in range(n)]
            assert all(x == 0 for x in prod)


def test_det_examples():
    d, adj = det_and_adjugate(identity(3))
    assert d == 1 and adj == identity(3)
    d, adj = det_and_adjugate(F([[1, 2], [3, 4]]))
    assert d == -2
    assert adj == F([[4, -2], [-3, 1]])


def _cofactor_det(m):
    # textbook expansion along the first row, as an independent oracle
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _cofactor_det(minor)
    return total


def test_det_against_cofactor_oracle():
    rng = random.Random(7)
    for _ in range(15):
        a = rand_matrix(rng, 4, 4)
        assert det_bareiss(a) == _cofactor_det(a)


def test_adjugate_identity_random():
    rng = random.Random(9)
    for _ in range(10):
        n = rng.randint(1, 5)
        a = rand_matrix(rng, n, n)
        d, adj = det_and_adjugate(a)
        target = [[d if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        assert mat_mul(a, adj) == target
        assert mat_mul(adj, a) == target


def test_adjugate_of_singular_matrix():
    a = F([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    d, adj = det_and_adjugate(a)
    assert d == 0
    assert mat_mul(a, adj) == [[Fraction(0)] * 3 for _ in range(3)]


def test_rref_and_transpose():
    a = F([[2, 4], [1, 2], [0, 1]])
    red, pivots = rref(a)
    assert pivots == [0, 1]
    assert rank(a) == rank(transpose(a)) == 2
