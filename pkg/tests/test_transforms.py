from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jimm.cf import ROOT, CFTuple, DomainError, theta, theta_inverse, tuples_up_to_norm
from jimm.transforms import (
    Mat2,
    NoParent,
    Ones,
    RootAbsorbed,
    T,
    U,
    calkin_wilf,
    farey_map_rational,
    farey_map_tuple,
    flip_rational,
    flip_tuple,
    jimm_extended,
    jimm_matrix,
    jimm_raw,
    jimm_rational,
    jimm_trace,
    jimm_tuple,
    k_rational,
    k_tuple,
    parent_map,
    twisted_calkin_wilf,
)

from oracles import mediant_path, reduced_fractions

F = Fraction
tuples = st.lists(st.integers(1, 7), min_size=1, max_size=7).map(CFTuple)
# partial quotients stay small when numerator and denominator do
positive = st.builds(Fraction, st.integers(1, 5000), st.integers(1, 5000))
signed = st.builds(lambda r, neg: -r if neg else r, positive, st.booleans())
unit = positive.filter(lambda r: r < 1)

TWISTED_30 = [
    F(1, 1), F(1, 2), F(2, 1), F(2, 3), F(3, 1), F(1, 3), F(3, 2), F(3, 5), F(5, 2), F(1, 4), F(4, 3),
    F(3, 4), F(4, 1), F(2, 5), F(5, 3), F(5, 8), F(8, 3), F(2, 7), F(7, 5), F(4, 5), F(5, 1), F(3, 7),
    F(7, 4), F(4, 7), F(7, 3), F(1, 5), F(5, 4), F(5, 7), F(7, 2), F(3, 8),
]


@pytest.mark.parametrize("x, kx", [((2,), (1, 1)), ((1, 1), (2,)), ((3,), (1, 2)), ((1,), (1,))])
def test_k_tuple(x, kx):
    assert k_tuple(x) == kx


@given(tuples)
def test_k_is_reflection(x):
    assert theta(k_tuple(x)) == 1 - theta(x)
    # the reflection mirrors every move of the path
    swap = str.maketrans("LR", "RL")
    assert mediant_path(theta(k_tuple(x))) == mediant_path(theta(x)).translate(swap)


@pytest.mark.parametrize("r, kr", [(F(1, 3), F(2, 3)), (F(1, 2), F(1, 2)), (F(2, 7), F(5, 7))])
def test_k_rational(r, kr):
    assert k_rational(r) == kr


@pytest.mark.parametrize("r", [F(0), F(1), F(5, 4)])
def test_k_rational_domain(r):
    with pytest.raises(DomainError):
        k_rational(r)


@pytest.mark.parametrize("x, fx", [((2, 1), (1, 2)), ((5,), (5,)), ((1, 2, 3), (3, 2, 1))])
def test_flip_tuple(x, fx):
    assert flip_tuple(x) == fx


@pytest.mark.parametrize("n", range(2, 12))
def test_flip_rational_families(n):
    assert flip_rational(F(1, n)) == F(1, n)
    assert flip_rational(F(n, n + 1)) == F(2, 2 * n - 1)


def test_flip_rational_example():
    assert flip_rational(F(2, 5)) == F(3, 4)


def test_flip_rational_domain():
    with pytest.raises(DomainError):
        flip_rational(F(3, 2))


@pytest.mark.parametrize(
    "x, jx",
    [
        ((1, 1, 1, 1), (4,)),
        ((2, 2, 2, 2), (1, 2, 2, 2, 1)),
        ((1, 2, 2, 2, 1), (2, 2, 2, 2)),
        ((1,), (1,)),
        ((2,), (1, 1)),
        ((5,), (1, 1, 1, 1, 1)),
    ],
)
def test_jimm_tuple_examples(x, jx):
    assert jimm_tuple(x) == jx
    assert jimm_trace(x).result == jx


def test_jimm_raw_symbols():
    assert jimm_raw((1, 1, 1, 1)) == [Ones(0), 2, Ones(-1), 2, Ones(-1), 2, Ones(0)]
    assert jimm_raw((3,)) == [1, 1, 1]


def test_jimm_trace_steps_are_single_rewrites():
    trace = jimm_trace((1, 1, 1, 1))
    entries = [e for e, _ in trace.steps]
    assert entries[0] == (Ones(0), 2, Ones(-1), 2, Ones(-1), 2, Ones(0))
    assert entries[1] == (2, Ones(-1), 2, Ones(-1), 2, Ones(0))
    assert entries[-1] == (4,)
    for (before, _), (after, rule) in zip(trace.steps, trace.steps[1:]):
        assert rule and len(after) < len(before)
    assert "1_{-1}" in trace.render()


def test_one_pass_jimm_equals_step_by_step_rewriting():
    for x in tuples_up_to_norm(11):
        assert jimm_tuple(x) == jimm_trace(x).result


@given(tuples)
def test_jimm_is_an_involution(x):
    assert jimm_tuple(jimm_tuple(x)) == x
    assert jimm_tuple(x).norm == x.norm


@given(tuples)
def test_jimm_exchanges_zigzags_and_straight_runs(x):
    # J turns each repeated move into an alternation and vice versa
    path = mediant_path(theta(x))
    jpath = mediant_path(theta(jimm_tuple(x)))
    assert len(path) == len(jpath)
    for i in range(1, len(path)):
        assert (path[i] == path[i - 1]) == (jpath[i] != jpath[i - 1])


@pytest.mark.parametrize("r, jr", [(F(1, 3), F(2, 3)), (F(2, 3), F(1, 3)), (F(1, 2), F(1, 2))])
def test_jimm_rational_and_matrix(r, jr):
    assert jimm_rational(r) == jr
    assert jimm_matrix(r) == jr


def test_rewriting_matches_matrix_oracle():
    for r in reduced_fractions(150):
        assert jimm_rational(r) == jimm_matrix(r)


def test_jimm_matrix_domain():
    with pytest.raises(DomainError):
        jimm_matrix(F(0))
    with pytest.raises(DomainError):
        jimm_matrix(F(-1, 2))


def test_mat2_algebra():
    assert T.det == -1 and U.det == -1
    assert (T**5) == Mat2(8, 5, 5, 3)
    assert (T**0) == Mat2(1, 0, 0, 1)
    with pytest.raises(ValueError):
        T ** -1


@pytest.mark.parametrize("r, jr", [(F(1), F(1)), (F(3, 2), F(3)), (F(5, 2), F(4, 3)), (F(4, 3), F(5, 2)), (F(-1, 3), F(-3, 2))])
def test_jimm_extended(r, jr):
    assert jimm_extended(r) == jr


def test_jimm_extended_rejects_zero():
    with pytest.raises(DomainError):
        jimm_extended(F(0))


@given(signed)
def test_jimm_extended_is_an_involution(r):
    assert jimm_extended(jimm_extended(r)) == r


@given(unit)
def test_jimm_functional_equations(x):
    jx = jimm_rational(x)
    assert jimm_extended(1 / (1 + x)) == jx / (1 + jx)
    assert jimm_extended(x / (1 + x)) == 1 / (1 + jx)


def test_calkin_wilf_prefix():
    assert calkin_wilf(7) == [F(1), F(1, 2), F(2), F(1, 3), F(3, 2), F(2, 3), F(3)]


def test_twisted_calkin_wilf():
    assert twisted_calkin_wilf(1) == [F(1)]
    assert twisted_calkin_wilf(30) == TWISTED_30
    with pytest.raises(ValueError):
        twisted_calkin_wilf(0)


def test_twisted_enumeration_has_no_repeats():
    terms = twisted_calkin_wilf(2000)
    assert len(set(terms)) == len(terms)


@pytest.mark.parametrize("x, tx", [((2, 1), (1, 1)), ((1, 2), (2,)), ((5,), (4,))])
def test_farey_map_tuple(x, tx):
    assert farey_map_tuple(x) == tx


def test_farey_map_absorbs_root():
    with pytest.raises(RootAbsorbed):
        farey_map_tuple(ROOT)


@pytest.mark.parametrize("r, tr", [(F(2, 5), F(2, 3)), (F(1, 2), F(1)), (F(2, 3), F(1, 2))])
def test_farey_map_rational(r, tr):
    assert farey_map_rational(r) == tr


@given(tuples.filter(lambda x: x != ROOT))
def test_farey_map_agrees_under_theta(x):
    assert theta(farey_map_tuple(x)) == farey_map_rational(theta(x))


@pytest.mark.parametrize("x, px", [((1, 2), (1, 1)), ((2, 1), (2,)), ((1, 1, 1), (1, 1))])
def test_parent_map(x, px):
    assert parent_map(x) == px


def test_parent_map_root():
    with pytest.raises(NoParent):
        parent_map(ROOT)


@given(tuples.filter(lambda x: x != ROOT))
def test_parent_is_flip_conjugate_of_farey_map(x):
    assert parent_map(x) == flip_tuple(farey_map_tuple(flip_tuple(x)))
    # and it drops the last move of the path
    assert mediant_path(theta(parent_map(x))) == mediant_path(theta(x))[:-1]


def test_rational_maps_reject_outside_unit_interval():
    with pytest.raises(DomainError):
        farey_map_rational(F(1))
    with pytest.raises(DomainError):
        theta_inverse(F(0))
