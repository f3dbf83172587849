import itertools
import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from pathmorse.linalg import (QQ, LinalgError, Matrix, PrimeField, StabilizationError, Subspace, field_from_spec,
                              fixed_space, image, integer_left_kernel, intersect, kernel, matrix_power_stabilize,
                              rank, rref, smith_decomposition, smith_normal_form, to_integer_rows)

D1 = [[-1, 1, 0, 0], [-1, 0, 1, 0], [-1, 0, 0, 1], [0, -1, 0, 1], [0, 0, -1, 1]]
PHI1 = [[0, 0, 0, 0, 0], [-1, 1, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 0, 0, -1, 1]]


def dense_rank(rows):
    """Plain Gauss elimination on a dense Fraction copy."""
    a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                q = a[i][c] / a[r][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def det(m):
    """Laplace expansion along the first row."""
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)) if m[0][j])


def snf_oracle(m):
    """Invariant factors as ratios of gcds of k-by-k minors."""
    nr, nc = len(m), len(m[0]) if m else 0
    divs = [1]
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rows in itertools.combinations(range(nr), k):
            for cols in itertools.combinations(range(nc), k):
                g = gcd(g, det([[m[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        divs.append(g)
    return [divs[k] // divs[k - 1] for k in range(1, len(divs))]


def small_matrices(max_r=5, max_c=5, lo=-3, hi=3):
    return st.integers(1, max_r).flatmap(lambda r: st.integers(1, max_c).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


# -- examples ----------------------------------------------------------------

def test_rank_examples():
    assert rank(Matrix.from_dense(D1)) == 3
    assert rank(Matrix.zeros(3, 4)) == 0
    assert rank(Matrix.identity(4)) == 4


def test_left_kernel_of_restricted_boundary():
    # rows are v0v2 - v0v1 and v2v3 - v1v3; their boundaries cancel in sum
    k = kernel(Matrix.from_dense([[0, -1, 1, 0], [0, 1, -1, 0]]))
    assert k.dim == 1
    assert {0: 1, 1: 1} in k


def test_kernel_trivial_cases():
    assert kernel(Matrix.identity(3)).dim == 0
    assert kernel(Matrix.zeros(4, 1)).dim == 4
    assert kernel(Matrix.zeros(4, 1)) == Subspace.full(4)


def test_intersect_examples():
    a = Subspace.span([{0: 1, 1: 1}, {2: 1}], 3)
    assert intersect(a, a) == a
    assert intersect(Subspace.span([{0: 1}], 3), Subspace.span([{1: 1}, {2: 1}], 3)).dim == 0
    with pytest.raises(LinalgError):
        intersect(Subspace.zero(2), Subspace.zero(3))


def test_fixed_space_examples():
    fs = fixed_space(Matrix.from_dense(PHI1))
    assert fs.dim == 2
    assert {0: -1, 1: 1} in fs and {3: -1, 4: 1} in fs
    assert fixed_space(Matrix.identity(3)) == Subspace.full(3)
    assert fixed_space(Matrix.zeros(3, 3)).dim == 0
    with pytest.raises(LinalgError):
        fixed_space(Matrix.zeros(2, 3))


def test_stabilize_examples():
    m = Matrix.from_dense(PHI1)
    assert matrix_power_stabilize(m, 6) == (m, 1)
    assert matrix_power_stabilize(Matrix.identity(3), 4) == (Matrix.identity(3), 1)
    j = Matrix.from_dense([[0, 1], [0, 0]])
    p, k = matrix_power_stabilize(j, 3)
    assert p.is_zero() and k == 2
    with pytest.raises(StabilizationError):
        matrix_power_stabilize(Matrix.from_dense([[0, 1], [1, 0]]), 5)


def test_smith_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form(D1) == [1, 1, 1]
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_prime_field_arithmetic():
    f = PrimeField(5)
    assert f(7) == 2 and f(Fraction(1, 2)) == 3
    assert f.inverse(2) == 3
    m = Matrix.from_dense([[1, 2], [3, 1]], f)  # det = -5 = 0 mod 5
    assert rank(m) == 1
    assert rank(Matrix.from_dense([[1, 2], [3, 1]])) == 2
    with pytest.raises(LinalgError):
        PrimeField(6)


def test_field_from_spec():
    assert field_from_spec("q") == QQ
    assert field_from_spec("zp:7") == PrimeField(7)
    with pytest.raises(LinalgError):
        field_from_spec("r")


def test_rref_canonical():
    m = Matrix.from_dense([[2, 4, 0], [1, 2, 1]])
    r, piv = rref(m)
    assert piv == [0, 2]
    assert r.to_dense() == [[1, 2, 0], [0, 0, 1]]


def test_matrix_ops_and_strings():
    a = Matrix.from_dense([[1, Fraction(1, 2)], [0, -1]])
    assert (a @ Matrix.identity(2)) == a
    assert (a - a).is_zero()
    assert a.to_strings() == [["1", "1/2"], ["0", "-1"]]
    assert a.T.to_dense() == [[1, 0], [Fraction(1, 2), -1]]
    with pytest.raises(LinalgError):
        to_integer_rows(a)


# -- properties --------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(small_matrices())
def test_rank_matches_dense_oracle(rows):
    m = Matrix.from_dense(rows)
    assert rank(m) == dense_rank(rows)
    k = kernel(m)
    assert k.dim == m.nrows - rank(m)
    for v in k.vectors():
        assert m.vecmul(v) == {}


@settings(max_examples=200, deadline=None)
@given(small_matrices(4, 6, -2, 2), small_matrices(4, 6, -2, 2))
def test_intersect_properties(ra, rb):
    n = 6
    a = image(Matrix.from_dense([r + [0] * (n - len(r)) for r in ra], ncols=n))
    b = image(Matrix.from_dense([r + [0] * (n - len(r)) for r in rb], ncols=n))
    ab = intersect(a, b)
    assert ab == intersect(b, a)
    assert a.contains_space(ab) and b.contains_space(ab)
    assert ab.dim >= a.dim + b.dim - n
    # dim(a + b) + dim(a & b) = dim a + dim b
    total = Subspace.span(a.vectors() + b.vectors(), n)
    assert total.dim + ab.dim == a.dim + b.dim
    assert intersect(intersect(a, b), a) == ab


@settings(max_examples=100, deadline=None)
@given(small_matrices(4, 4, -2, 2))
def test_fixed_space_vectors_are_fixed(rows):
    k = min(len(rows), len(rows[0]))
    m = Matrix.from_dense([r[:k] for r in rows[:k]])
    for v in fixed_space(m).vectors():
        assert m.vecmul(v) == v


@settings(max_examples=100, deadline=None)
@given(small_matrices(4, 4, -1, 1))
def test_stabilized_power_is_absorbing(rows):
    k = min(len(rows), len(rows[0]))
    m = Matrix.from_dense([r[:k] for r in rows[:k]])
    try:
        p, e = matrix_power_stabilize(m, 8)
    except StabilizationError:
        return
    assert p @ m == p
    assert e >= 1


@settings(max_examples=150, deadline=None)
@given(small_matrices(4, 4, -4, 4))
def test_smith_matches_minor_oracle(rows):
    assert smith_normal_form(rows) == snf_oracle(rows)


@settings(max_examples=150, deadline=None)
@given(small_matrices(4, 5, -4, 4))
def test_smith_decomposition_identity(rows):
    S, D, T = smith_decomposition(rows)
    m = Matrix.from_dense(rows)
    assert (Matrix.from_dense(S, ncols=len(rows)) @ m @ Matrix.from_dense(T, ncols=len(rows[0]))).to_dense() == D
    for i in range(len(D)):
        for j in range(len(D[0])):
            assert i == j or D[i][j] == 0
    inv = smith_normal_form(rows)
    for a, b in zip(inv, inv[1:]):
        assert b % a == 0


def random_unimodular(rng, n):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        q = rng.randint(-2, 2)
        u[i] = [a + q * b for a, b in zip(u[i], u[j])]
    return u


@settings(max_examples=150, deadline=None)
@given(small_matrices(4, 4, -3, 3), st.integers(0, 10**6))
def test_smith_invariant_under_unimodular_ops(rows, seed):
    rng = random.Random(seed)
    r, c = len(rows), len(rows[0])
    U, W = Matrix.from_dense(random_unimodular(rng, r)), Matrix.from_dense(random_unimodular(rng, c))
    mixed = to_integer_rows(U @ Matrix.from_dense(rows) @ W)
    assert smith_normal_form(mixed) == smith_normal_form(rows)


@settings(max_examples=150, deadline=None)
@given(small_matrices(5, 3, -3, 3))
def test_integer_left_kernel_is_saturated_basis(rows):
    k = integer_left_kernel(rows)
    m = Matrix.from_dense(rows)
    assert len(k) == m.nrows - rank(m)
    for v in k:
        assert all(sum(v[i] * rows[i][j] for i in range(len(rows))) == 0 for j in range(len(rows[0])))
    if k:
        # a saturated lattice basis has unit invariant factors
        assert smith_normal_form(k) == [1] * len(k)


@settings(max_examples=100, deadline=None)
@given(small_matrices(4, 4, -3, 3), st.sampled_from([2, 3, 5, 7]))
def test_prime_field_rank_bounded_by_rational_rank(rows, p):
    assert rank(Matrix.from_dense(rows, PrimeField(p))) <= rank(Matrix.from_dense(rows))
