from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pyquasiiso import (
    Branch,
    Circuit,
    DefectQuery,
    DomainError,
    classify,
    compare_with_oracle,
    h,
    random_measure_spec,
    random_weight_spec,
    wgram,
)
from pyquasiiso.common import E1, E2, E3, EXAMPLES
from pyquasiiso.oracle import (
    DEFAULT_MARGIN,
    Truncation,
    defect_quadratic_form,
    gram_matrix,
    h_oracle,
    interior,
    truncated_matrix,
    wgram_oracle,
)

seeds = st.integers(0, 10**6)


def test_truncation():
    t = Truncation(E1.measure.graph, 4)
    assert len(t) == 3 + 2 * 4
    assert t.index[Circuit(1)] == 0
    assert t.vertices[t.index[Branch(1, 2, 3)]] == Branch(1, 2, 3)
    assert Truncation.for_query(E1.measure.graph, DefectQuery(1, 2)).depth == 3 + DEFAULT_MARGIN
    with pytest.raises(DomainError):
        Truncation(E1.measure.graph, 0)


def test_interior():
    t = Truncation(E1.measure.graph, 5)
    inner = interior(t, DefectQuery(1, 2))
    assert Circuit(3) in inner
    assert Branch(1, 1, 2) in inner
    assert Branch(1, 1, 3) not in inner


def test_oracle_values():
    assert h_oracle(E2.measure, Circuit(1), 4) == 3
    assert E2.measure.mu_sum(E2.measure.graph.preimage(Circuit(1), 2)) == 4
    assert h_oracle(E1.measure, Circuit(3), 0) == 1
    assert wgram_oracle(E3.measure, E3.weight, Circuit(2), 3) == Fraction(15, 11)
    assert wgram_oracle(E3.measure, E3.weight, Circuit(1), 1) == Fraction(40, 31)


def test_truncated_matrix():
    t = Truncation(E3.measure.graph, 3)
    matrix = truncated_matrix(E3.measure, t, E3.weight)
    for y in t.vertices:
        row = matrix[t.index[y]]
        assert sum(1 for entry in row if entry != 0) == 1
        assert row[t.index[E3.measure.graph.parent(y)]] == E3.weight.pi(y)
    plain = truncated_matrix(E3.measure, t)
    assert set(plain.flatten()) == {0, 1}


def test_window_too_small():
    t = Truncation(E1.measure.graph, 4)
    with pytest.raises(DomainError, match="need depth >= 5"):
        defect_quadratic_form(E1.measure, DefectQuery(1, 2), t)


def test_defect_quadratic_form():
    t = Truncation(E1.measure.graph, 6)
    values = defect_quadratic_form(E1.measure, DefectQuery(1, 2), t)
    assert set(values.values()) == {0}
    values = defect_quadratic_form(E1.measure, DefectQuery(1, 1), t)
    assert values[Circuit(2)] == -2
    weighted = defect_quadratic_form(E3.measure, DefectQuery(1, 2), t, E3.weight)
    assert weighted[Circuit(1)] == Fraction(-21, 31)


def test_defect_quadratic_form_on_the_second_example():
    values = defect_quadratic_form(E2.measure, DefectQuery(2, 2), Truncation(E2.measure.graph, 8))
    assert len(values) == 15
    assert set(values.values()) == {0}


def test_every_example_agrees_with_the_matrix():
    for example in EXAMPLES.values():
        q = DefectQuery(example.k, example.m)
        comparison = compare_with_oracle(example.measure, q, example.weight, depth=q.k + q.m + 6)
        assert comparison.agrees, example.name
        assert comparison.window_verdict == classify(example.measure, q, example.weight).verdict


@settings(max_examples=25, deadline=None)
@given(seed=seeds, p=st.integers(1, 3))
def test_gram_matrix_is_diagonal(seed, p):
    spec = random_measure_spec(seed)
    weight = random_weight_spec(spec.graph, seed)
    t = Truncation(spec.graph, p + 3)
    inner = set(interior(t, DefectQuery(0, p)))
    for w in (None, weight):
        gram = gram_matrix(spec, t, p, w)
        for a in t.vertices:
            for b in t.vertices:
                entry = gram[t.index[a], t.index[b]]
                if a != b:
                    assert entry == 0
                elif a in inner:
                    scalar = h(spec, a, p) if w is None else wgram(spec, w, a, p)
                    assert entry == spec.mu(a) * scalar
