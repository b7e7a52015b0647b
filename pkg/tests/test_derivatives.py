from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pyquasiiso import (
    F,
    Branch,
    Circuit,
    DomainError,
    WeightSpec,
    aggregate_circuit_defect,
    gram_scalar,
    h,
    pi_prod,
    random_measure_spec,
    random_weight_spec,
    wgram,
)
from pyquasiiso.common import E1, E2, E3
from pyquasiiso.oracle import h_oracle, wgram_oracle

seeds = st.integers(0, 10**6)


def test_h_on_the_first_example():
    expected = {
        1: ["7/5", "9/5", "11/5"],
        2: [3, 5, 7],
        3: ["5/3", "7/3", 3],
    }
    for r, values in expected.items():
        assert [h(E1.measure, Circuit(r), p) for p in (1, 2, 3)] == [Fraction(v) for v in values]
    assert h(E1.measure, Circuit(1), 0) == 1
    assert h(E1.measure, Branch(1, 2, 4), 3) == 1


def test_h_on_the_second_example():
    atom_measures = {1: [4, 5, 6], 2: [3, 4, 5], 3: [3, 4, 5]}
    for r, values in atom_measures.items():
        c = Circuit(r)
        assert [h(E2.measure, c, p) * E2.measure.mu(c) for p in (2, 3, 4)] == values


def test_h_rejects_bad_input():
    with pytest.raises(DomainError):
        h(E1.measure, Circuit(1), -1)
    with pytest.raises(DomainError):
        h(E1.measure, Branch(3, 1, 1), 1)


def test_weighted_quantities():
    spec, weight = E3.measure, E3.weight
    assert F(spec, weight, Circuit(1), 1) == Fraction(5, 9)
    assert wgram(spec, weight, Circuit(1), 1) == Fraction(40, 31)
    assert F(spec, weight, Branch(1, 1, 1), 1) == Fraction(1, 4)
    assert wgram(spec, weight, Branch(1, 1, 1), 1) == 1
    assert pi_prod(weight, Branch(1, 1, 1), 2) == Fraction(1, 2)
    assert pi_prod(weight, Branch(1, 1, 3), 3) == Fraction(1, 8)
    assert pi_prod(weight, Circuit(2), 0) == 1
    assert F(spec, weight, Circuit(2), 0) == 1


def test_gram_scalar():
    scalar = gram_scalar(E3.measure, Circuit(1), 1, E3.weight)
    assert scalar.value == Fraction(40, 31)
    assert str(scalar) == "40/31"
    assert gram_scalar(E1.measure, Circuit(2), 3).value == 7


def test_aggregate_identity_on_the_first_example():
    assert aggregate_circuit_defect(E1.measure, 1, 1) == (-2, -2, -2)
    assert aggregate_circuit_defect(E1.measure, 1, 2) == (0, 0, 0)
    with pytest.raises(DomainError):
        aggregate_circuit_defect(E1.measure, 1, 0)


@settings(max_examples=100, deadline=None)
@given(seed=seeds, k=st.integers(0, 3), m=st.integers(1, 4))
def test_aggregate_identity(seed, k, m):
    sides = aggregate_circuit_defect(random_measure_spec(seed), k, m)
    assert sides.lhs == sides.rhs == sides.rhs_at_roots


@settings(max_examples=100, deadline=None)
@given(seed=seeds)
def test_h_matches_atom_enumeration(seed):
    spec = random_measure_spec(seed)
    for v in spec.graph.vertices(6):
        for p in range(9):
            assert h(spec, v, p) == h_oracle(spec, v, p)


@settings(max_examples=100, deadline=None)
@given(seed=seeds)
def test_wgram_matches_atom_enumeration(seed):
    spec = random_measure_spec(seed)
    weight = random_weight_spec(spec.graph, seed, allow_zero=True)
    for v in spec.graph.vertices(6):
        for p in range(9):
            assert wgram(spec, weight, v, p) == wgram_oracle(spec, weight, v, p)


@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_unit_weight_reduces_to_h(seed):
    spec = random_measure_spec(seed)
    ones = WeightSpec.ones(spec.graph)
    for v in spec.graph.vertices(3):
        for p in range(5):
            assert F(spec, ones, v, p) == 1
            assert wgram(spec, ones, v, p) == h(spec, v, p)


@settings(max_examples=50, deadline=None)
@given(seed=seeds, p=st.integers(0, 4), q=st.integers(0, 4))
def test_h_cocycle(seed, p, q):
    spec = random_measure_spec(seed)
    for v in spec.graph.vertices(4):
        pushed = sum(
            (h(spec, y, q) * spec.mu(y) for y in spec.graph.preimage(v, p)), Fraction(0)
        )
        assert h(spec, v, p + q) * spec.mu(v) == pushed
