from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohomolab.linalg import (
    F2,
    F3,
    RATIONALS,
    ExactMatrix,
    FieldTag,
    LinalgError,
    QuotientError,
    dump_dense,
    image_basis,
    kernel_basis,
    l1_norm,
    linf_norm,
    load_dense,
    quotient_dim,
    rank,
    solve,
    to_csv,
)


def dense_rank(rows, p=0):
    """Plain Gaussian elimination on a list of lists, independent of the package."""
    a = [[Fraction(x) if p == 0 else x % p for x in r] for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c] if p == 0 else pow(a[r][c], -1, p)
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y if p == 0 else (x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


def matrices(max_dim=6, lo=-3, hi=3):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m)))


FIELDS = st.sampled_from([RATIONALS, F2, F3, FieldTag(7)])


def test_field_tag_rejects_composite():
    with pytest.raises(LinalgError):
        FieldTag(4)
    assert FieldTag.parse("Q") == RATIONALS
    assert FieldTag.parse("F3") == F3


def test_rank_examples():
    assert rank(ExactMatrix.zero(RATIONALS, 3, 3)) == 0
    assert rank(ExactMatrix.identity(RATIONALS, 5)) == 5
    assert rank(ExactMatrix.from_dense(RATIONALS, [[1, 2], [2, 4]])) == 1


def test_rank_depends_on_field():
    m = [[1, 1], [1, -1]]
    assert rank(ExactMatrix.from_dense(RATIONALS, m)) == 2
    assert rank(ExactMatrix.from_dense(F2, m)) == 1


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(RATIONALS, 4)).ncols == 0
    assert kernel_basis(ExactMatrix.zero(RATIONALS, 2, 3)).ncols == 3


def test_quotient_examples():
    e = ExactMatrix.identity(RATIONALS, 2)
    assert quotient_dim(e, e) == 0
    assert quotient_dim(e, ExactMatrix.zero(RATIONALS, 2, 1)) == 2


def test_quotient_reports_witness():
    num = ExactMatrix.from_dense(RATIONALS, [[1], [0]])
    den = ExactMatrix.from_dense(RATIONALS, [[0], [1]])
    with pytest.raises(QuotientError) as err:
        quotient_dim(num, den)
    assert err.value.witness.index == 0
    assert err.value.witness.vector == {1: 1}


def test_norm_examples():
    n = 12
    d = ExactMatrix.diagonal(RATIONALS, [Fraction(1, k) for k in range(1, n + 1)])
    dinv = ExactMatrix.diagonal(RATIONALS, list(range(1, n + 1)))
    assert l1_norm(d) == 1 and linf_norm(d) == 1
    assert l1_norm(dinv) == n and linf_norm(dinv) == n
    i = ExactMatrix.identity(RATIONALS, 3)
    assert l1_norm(i) == linf_norm(i) == 1


def test_norms_reject_prime_fields():
    with pytest.raises(LinalgError):
        l1_norm(ExactMatrix.identity(F2, 2))
    with pytest.raises(LinalgError):
        linf_norm(ExactMatrix.identity(F3, 2))


def test_dump_round_trip():
    m = ExactMatrix.from_dense(RATIONALS, [[Fraction(1, 2), 0], [-3, Fraction(7, 5)]])
    rows = dump_dense(m)
    assert rows == [["1/2", "0"], ["-3", "7/5"]]
    assert load_dense(RATIONALS, rows, 2, 2) == m
    assert to_csv(m) == "1/2,0\n-3,7/5\n"


@settings(max_examples=80, deadline=None)
@given(matrices(), FIELDS)
def test_rank_matches_dense_oracle(rows, field):
    m = ExactMatrix.from_dense(field, rows)
    r = rank(m)
    assert r == dense_rank(rows, field.characteristic)
    assert r == rank(m.transpose())
    assert image_basis(m).ncols == r


@settings(max_examples=80, deadline=None)
@given(matrices(), FIELDS)
def test_kernel_is_kernel(rows, field):
    m = ExactMatrix.from_dense(field, rows)
    k = kernel_basis(m)
    assert k.ncols + rank(m) == m.ncols
    assert (m @ k).is_zero()
    assert rank(k) == k.ncols


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(st.integers(-3, 3), min_size=6, max_size=6), FIELDS)
def test_solve_consistent_systems(rows, coeffs, field):
    a = ExactMatrix.from_dense(field, rows)
    x0 = ExactMatrix.from_dense(field, [[c] for c in coeffs[: a.ncols]])
    b = a @ x0
    x = solve(a, b)
    assert x is not None and a @ x == b


def test_solve_inconsistent():
    a = ExactMatrix.from_dense(RATIONALS, [[1], [1]])
    b = ExactMatrix.from_dense(RATIONALS, [[1], [2]])
    assert solve(a, b) is None


@settings(max_examples=60, deadline=None)
@given(matrices(4, -4, 4), st.lists(st.integers(-4, 4), min_size=12, max_size=12))
def test_l1_submultiplicative(ra, vals):
    a = ExactMatrix.from_dense(RATIONALS, ra)
    b = ExactMatrix.from_dense(RATIONALS, [[Fraction(vals[3 * i + j], 3) for j in range(3)] for i in range(a.ncols)])
    assert l1_norm(a @ b) <= l1_norm(a) * l1_norm(b)
    assert l1_norm(a) == linf_norm(a.transpose())
