from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from seqspaces.core import Alternating, Constant, Geometric, PowerLaw, finite, parse_seq, space, spike, truncate
from seqspaces.errors import NotNormable, NotSummable
from seqspaces.operators import GAMMA, SIGMA, transform
from seqspaces.spaces import (
    D_BV, INT_BV, INT_L1, ak_defect, basis_vector, expansion_coefficients, member, norm, partial_expansion,
    section_distance,
)
from seqspaces.verdict import Status

X3 = finite([1, Fraction(1, 2), Fraction(1, 3)])
vals = st.lists(st.fractions(-100, 100, max_denominator=100), min_size=1, max_size=24)


def test_norm_examples():
    assert norm(INT_BV, X3) == 2
    assert norm(INT_L1, X3) == 3
    assert norm(D_BV, finite([1, 4])) == 4
    assert norm(space("linf"), Constant(5)) == 5


def test_norms_of_families():
    assert norm(INT_BV, PowerLaw(1, -1)) == 1
    # k (1/2)^k rises to 1/2 at k = 1, 2 and then falls to 0
    assert norm(INT_BV, Geometric(1, Fraction(1, 2))) == 1
    assert norm(D_BV, Constant(1)) == 2
    assert norm(space("bs"), Alternating(1)) == 1
    assert norm(space("l1"), Geometric(1, Fraction(1, 2))) == 1


def test_norm_failures():
    with pytest.raises(NotSummable):
        norm(space("l1"), Constant(1))
    with pytest.raises(NotNormable):
        norm(space("cs"), Alternating(1))


@pytest.mark.parametrize("sp, seq, status", [
    ("int_bv", "powerlaw:1,-1", Status.MEMBER),
    ("d_l1", "powerlaw:1,1", Status.NONMEMBER),
    ("l1", "finite:[3,-4]", Status.MEMBER),
    ("c0", "powerlaw:1,-1", Status.MEMBER),
    ("c0", "const:1", Status.NONMEMBER),
    ("bs", "alt:1", Status.MEMBER),
    ("cs", "alt:1", Status.NONMEMBER),
    ("int_bv", "const:1", Status.NONMEMBER),
    ("d_bv", "powerlaw:1,1", Status.MEMBER),
    ("d_bv", "powerlaw:1,2", Status.NONMEMBER),
    ("c0s", "geom:1,1/2", Status.NONMEMBER),
    ("c0s", "finite:[1,-1]", Status.MEMBER),
    ("c0s", "powerlaw:1,-2", Status.INCONCLUSIVE),
])
def test_member_table(sp, seq, status):
    v = member(space(sp), parse_seq(seq), 64)
    assert v.status is status
    if status is Status.NONMEMBER:
        assert v.certificate["witness"]


def test_member_certificates():
    v = member(INT_BV, PowerLaw(1, -1))
    assert v.certificate["norm"] == 1
    v = member(space("l1"), finite([3, -4]))
    assert v.certificate["norm"] == 7
    v = member(space("int_bv"), Constant(1), 64)
    assert [k for k, _ in v.certificate["witness"]] == [1, 2, 4, 8, 16, 32, 64]


def test_basis_vectors():
    assert basis_vector(INT_BV, 1).realization.literal() == "powerlaw:1,-1"
    assert basis_vector(D_BV, 2).realization.terms(5) == (0, 2, 3, 4, 5)
    b3 = basis_vector(INT_BV, 3)
    assert transform(GAMMA, b3.realization, 40).values == tuple(int(k == 3) for k in range(1, 41))
    for k in range(1, 9):
        assert basis_vector(D_BV, k).check(32)


def test_expansion_coefficients():
    assert expansion_coefficients(INT_BV, PowerLaw(1, -1), 4).values == (1, 0, 0, 0)
    assert expansion_coefficients(INT_BV, basis_vector(INT_BV, 3).realization, 5).values == (0, 0, 1, 0, 0)
    assert expansion_coefficients(D_BV, finite([1, 4]), 4).values == (1, 1, -2, 0)


def test_ak_defect_examples():
    assert ak_defect(D_BV, finite([1, 4]), 2) == 2
    assert ak_defect(INT_BV, X3, 3) == 1
    # the transformed sequence of a support-m sequence reaches index m + 1
    assert ak_defect(INT_BV, X3, 4) == 0
    assert ak_defect(INT_BV, PowerLaw(1, -1), 1) == 0
    with pytest.raises(ValueError):
        ak_defect(space("l1"), X3, 1)


def test_section_distance_differs_from_defect():
    x = finite([1, 2, 3])
    assert section_distance(INT_BV, x, 1) == 18
    assert ak_defect(INT_BV, x, 1) == 17


@settings(max_examples=80, deadline=None)
@given(vals)
def test_norms_match_oracle(v):
    x = finite(v)
    assert norm(INT_BV, x) == oracle.int_bv_norm(v)
    assert norm(D_BV, x) == oracle.d_bv_norm(v)
    assert norm(INT_L1, x) == oracle.l1([k * q for k, q in enumerate(v, 1)])


@settings(max_examples=60, deadline=None)
@given(vals, st.integers(0, 30))
def test_defect_is_expansion_distance(v, n):
    x = finite(v)
    for sp, ref in ((INT_BV, oracle.ak_int_bv), (D_BV, oracle.ak_d_bv)):
        assert ak_defect(sp, x, n) == ref(v, n)
        assert norm(sp, x - partial_expansion(sp, x, n)) == ref(v, n)


@settings(max_examples=60, deadline=None)
@given(vals)
def test_section_norms_nondecreasing(v):
    x = finite(v)
    for sp in (INT_BV, D_BV):
        norms = [norm(sp, truncate(x, n)) for n in range(1, len(v) + 1)]
        assert norms == sorted(norms)
