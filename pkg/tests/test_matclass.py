import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from seqspaces._poly import RationalFunction as RF
from seqspaces.core import Constant, finite, space
from seqspaces.matclass import (
    COROLLARY_ITEMS, REDUCTIONS, Flavor, class_check, corollary_suite, derived, derived_matrix,
    reduce_and_check, subset_sup_bruteforce, subset_sup_window,
)
from seqspaces.operators import (
    DELTA, GAMMA, IDENTITY, SIGMA, ZERO, ClosedForm, FiniteMatrix, Profile, apply, compose, transform,
)
from seqspaces.verdict import Status
from seqspaces.verify import random_banded

L1, LINF, C = space("l1"), space("linf"), space("c")


def test_lemma_examples():
    v = class_check(DELTA, L1, L1, 128)
    assert v.status is Status.MEMBER and v.certificate["conditions"]["sup_column_sum"]["sup"] == 2
    v = class_check(GAMMA, L1, L1, 128)
    assert v.status is Status.NONMEMBER
    assert all(s == 2 * k for k, s in v.certificate["conditions"]["sup_column_sum"]["witness"])
    v = class_check(SIGMA, L1, LINF, 128)
    assert v.status is Status.MEMBER and v.certificate["conditions"]["sup_entry"]["sup"] == 1
    v = class_check(IDENTITY, L1, C, 128)
    assert v.status is Status.MEMBER and v.certificate["conditions"]["column_limits"]["alpha_k"] == 0


def test_derived_examples():
    # sum_{j >= 2} delta_3j / j = 1/3
    assert derived(IDENTITY, Flavor.OVERBAR, 3, 2) == Fraction(1, 3)
    assert derived(IDENTITY, Flavor.HAT, 4, 4) == 4
    for A in (GAMMA, SIGMA, DELTA):
        assert derived(A, Flavor.ARROW, 1, 1) == A.entry(1, 1)
    # the tail-scaled matrices of Gamma and Sigma are the identity
    over_g, tilde_s = derived_matrix(GAMMA, Flavor.OVERBAR), derived_matrix(SIGMA, Flavor.TILDE)
    for n in range(1, 10):
        for k in range(1, 10):
            assert over_g.entry(n, k) == tilde_s.entry(n, k) == (n == k)


def test_column_scaling_must_sit_inside_the_tail_sum():
    # scaling the whole tail sum by 1/k instead of each a_nj by 1/j breaks A x = over(A) Gamma x
    x = finite([1, 2, 3])
    y = transform(GAMMA, x, 4)
    A = FiniteMatrix([[1], [1, 1], [1, 1, 1]])
    outside = [[sum((A.entry(n, j) for j in range(k, 4)), Fraction(0)) / k for k in range(1, 4)] for n in range(1, 4)]
    n = 3
    assert apply(A, x, n) == apply(derived_matrix(A, Flavor.OVERBAR), y, n) == 6
    assert sum(outside[n - 1][k - 1] * y.term(k) for k in range(1, 4)) != 6


def test_plain_condition_for_bounded_sources():
    # a_nk = 1/n^2 for k <= n maps the constant 1 to (1/n), which is not in l1;
    # the column-differenced sums would stay bounded here
    M = ClosedForm("inv-square-rows", lambda n, k: Fraction(1, n * n), profile=Profile((), RF.monomial(1, -2)))
    assert sum(apply(M, Constant(1), n) for n in range(1, 9)) == sum(Fraction(1, n) for n in range(1, 9))
    for src in ("linf", "c", "c0"):
        assert class_check(M, space(src), L1, 64).status is Status.NONMEMBER
    for src in ("bs", "cs", "c0s"):
        assert class_check(M, space(src), L1, 64).status is Status.MEMBER


def test_reductions():
    v = reduce_and_check(IDENTITY, "from_int_bv", LINF, 128)
    assert v.status is Status.MEMBER
    assert v.certificate["reduced"]["conditions"]["sup_entry"]["sup"] == 1
    v = reduce_and_check(GAMMA, "from_int_bv", L1, 64)
    assert v.status is Status.MEMBER
    for fam in REDUCTIONS:
        assert reduce_and_check(ZERO, fam, LINF, 32).status is Status.MEMBER


def test_corollary_dispatch():
    assert corollary_suite("from_int_bv", IDENTITY, "i", 64).status is Status.MEMBER
    assert corollary_suite("to_int_bv", ZERO, "i", 64).status is Status.MEMBER
    got = corollary_suite("from_d_bv", SIGMA, "ii", 64)
    manual = class_check(derived_matrix(SIGMA, Flavor.TILDE), L1, C, 64)
    assert got.status is manual.status
    assert set(COROLLARY_ITEMS["from_int_bv"]) == {"i", "ii", "iii", "iv", "v", "vi"}
    assert set(COROLLARY_ITEMS["to_d_bv"]) == {"i", "ii", "iii", "iv"}
    with pytest.raises(ValueError):
        corollary_suite("to_int_bv", IDENTITY, "vi", 64)


def test_hat_is_gamma_times_a():
    A = random_banded(random.Random(7))
    hat = derived_matrix(A, Flavor.HAT)
    for n in range(1, 12):
        for k in range(1, n + 1):
            assert hat.entry(n, k) == compose(GAMMA, A, n, k) == derived(A, Flavor.HAT, n, k)


@st.composite
def small_rows(draw):
    W = draw(st.integers(1, 4))
    rows = []
    for n in range(1, W + 1):
        cols = {1, n, max(1, n - 1), n + 1}
        row = {}
        for k in sorted(cols):
            v = draw(st.fractions(-9, 9, max_denominator=5))
            if v:
                row[k] = v
        rows.append(row)
    return rows, W + 1


@settings(max_examples=60, deadline=None)
@given(small_rows())
def test_subset_sup_matches_full_enumeration(data):
    rows, cols = data
    dense = [[r.get(k, Fraction(0)) for k in range(1, cols + 1)] for r in rows]
    expected = oracle.subset_sup(dense, cols)
    assert subset_sup_bruteforce(rows, cols) == expected
    assert subset_sup_window(rows) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_tail_scaled_identities(seed):
    rng = random.Random(seed)
    A = random_banded(rng)
    vals = [Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(rng.randint(1, 10))]
    x = finite(vals)
    dense = [[A.entry(n, k) for k in range(1, 13)] for n in range(1, 13)]
    over, tilde = derived_matrix(A, Flavor.OVERBAR), derived_matrix(A, Flavor.TILDE)
    for n in range(1, 12):
        for k in range(1, n + 1):
            assert over.entry(n, k) == oracle.overbar(dense, n, k)
            assert tilde.entry(n, k) == oracle.tilde(dense, n, k)
    y, z = transform(GAMMA, x, 11), transform(SIGMA, x, 11)
    for n in range(1, 24):
        assert apply(A, x, n) == apply(over, y, n) == apply(tilde, z, n)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_soundness_on_finite_probes(seed):
    rng = random.Random(seed)
    A = random_banded(rng)
    v = class_check(A, L1, LINF, 64)
    if v.status is Status.MEMBER:
        bound = v.certificate["conditions"]["sup_entry"]["sup"]
        for _ in range(5):
            k = rng.randint(1, 30)
            # unit vectors have l1 norm 1, so each image entry stays within the certified sup
            assert all(abs(A.entry(n, k)) <= bound for n in range(k, k + 10))
