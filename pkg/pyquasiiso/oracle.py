"""
Brute-force verification of the closed forms.

Two independent routes to the same numbers as ``pyquasiiso.derivatives``:

* preimage enumeration: mu(phi^{-p}({v})) / mu(v), and the weighted sum of
  pi_p(y)^2 mu(y) over the atom with pi_p taken along explicit parent walks;
* the matrix of C (or W) on a finite window of the graph, in the basis of
  vertex indicators, with the defect quadratic form
  sum_p (-1)^p C(m,p) <M^{k+p} chi_v, M^{k+p} chi_v> / mu(v) evaluated on
  window vertices whose preimage tree up to depth k + m stays inside.

Matrices are numpy object arrays holding Fractions, so every entry is exact.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Optional

import numpy as np

from .errors import DomainError
from .graph import Branch, Circuit, GraphSpec, Vertex, walk
from .space import MeasureSpec, WeightSpec, check_same_graph

if TYPE_CHECKING:
    from .classifier import DefectQuery

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = 6
"""Default window depth beyond k + m."""


@dataclass(frozen=True)
class Truncation:
    """
    The finite window of a graph: every circuit vertex and every branch vertex
    with j <= depth, in canonical order.
    """

    graph: GraphSpec
    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise DomainError(f"window depth must be positive, got {self.depth}")

    @classmethod
    def for_query(cls, graph: GraphSpec, q: DefectQuery, margin: int = DEFAULT_MARGIN) -> Truncation:
        return cls(graph, q.k + q.m + margin)

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(self.graph.vertices(self.depth))

    @cached_property
    def index(self) -> dict[Vertex, int]:
        return {v: n for n, v in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)


def required_depth(q: DefectQuery) -> int:
    return q.k + q.m + 2


def interior(t: Truncation, q: DefectQuery) -> list[Vertex]:
    """Window vertices whose preimages up to order k + m all lie in the window."""
    reach = q.k + q.m
    return [
        v
        for v in t.vertices
        if (isinstance(v, Circuit) and t.depth >= reach + 1)
        or (isinstance(v, Branch) and v.j + reach <= t.depth)
    ]


def h_oracle(spec: MeasureSpec, v: Vertex, p: int) -> Fraction:
    """
    Returns mu(phi^{-p}({v})) / mu(v) by enumerating the atom.

    Examples
    --------
    >>> from pyquasiiso.common import E1, E2
    >>> print(h_oracle(E1.measure, Circuit(2), 2), h_oracle(E2.measure, Circuit(1), 4))
    5 3

    """
    if p == 0:
        spec.graph.require(v)
        return Fraction(1)
    return spec.mu_sum(spec.graph.preimage(v, p)) / spec.mu(v)


def _walk_weight(weight: WeightSpec, y: Vertex, p: int) -> Fraction:
    return math.prod((weight.pi(u) for u in walk(weight.graph, y, p)), start=Fraction(1))


def wgram_oracle(spec: MeasureSpec, weight: WeightSpec, v: Vertex, p: int) -> Fraction:
    """
    Returns ||W^p chi_v||^2 / mu(v), summing pi_p(y)^2 mu(y) over the atom.

    Examples
    --------
    >>> from pyquasiiso.common import E3
    >>> print(wgram_oracle(E3.measure, E3.weight, Circuit(2), 3))
    15/11

    """
    check_same_graph(spec, weight)
    if p == 0:
        spec.graph.require(v)
        return Fraction(1)
    total = sum(
        (_walk_weight(weight, y, p) ** 2 * spec.mu(y) for y in spec.graph.preimage(v, p)),
        Fraction(0),
    )
    return total / spec.mu(v)


def truncated_matrix(spec: MeasureSpec, t: Truncation, weight: Optional[WeightSpec] = None) -> np.ndarray:
    """
    Returns the matrix of C, or of W when a weight is given, on the window.

    The column of chi_v holds pi(y) in the row of every window vertex y with
    parent v, since W chi_v = pi * chi_{phi^{-1}(v)}.
    """
    if weight is not None:
        check_same_graph(spec, weight)
    n = len(t)
    matrix = np.full((n, n), Fraction(0), dtype=object)
    for y in t.vertices:
        matrix[t.index[y], t.index[spec.graph.parent(y)]] = (
            Fraction(1) if weight is None else weight.pi(y)
        )
    return matrix


class _SparseOperator:
    """Applies a matrix through its nonzero entries only."""

    def __init__(self, matrix: np.ndarray):
        self.shape = matrix.shape
        self.rows, self.cols = np.nonzero(matrix != 0)
        self.values = matrix[self.rows, self.cols]

    def __matmul__(self, block: np.ndarray) -> np.ndarray:
        result = np.full((self.shape[0], block.shape[1]), Fraction(0), dtype=object)
        np.add.at(result, self.rows, self.values[:, None] * block[self.cols, :])
        return result


def _indicator_block(t: Truncation, columns: list[Vertex]) -> np.ndarray:
    block = np.full((len(t), len(columns)), Fraction(0), dtype=object)
    for n, v in enumerate(columns):
        block[t.index[v], n] = Fraction(1)
    return block


def _measure_vector(spec: MeasureSpec, t: Truncation) -> np.ndarray:
    return np.array([spec.mu(y) for y in t.vertices], dtype=object)


def defect_quadratic_form(
    spec: MeasureSpec, q: DefectQuery, t: Truncation, weight: Optional[WeightSpec] = None
) -> dict[Vertex, Fraction]:
    """
    Evaluates sum_p (-1)^p C(m,p) <M^{k+p} chi_v, M^{k+p} chi_v> / mu(v) on the
    interior of the window, with the inner product <chi_a, chi_b> = mu(a) if
    a = b and 0 otherwise.

    Examples
    --------
    >>> from pyquasiiso.classifier import DefectQuery
    >>> from pyquasiiso.common import E1
    >>> values = defect_quadratic_form(E1.measure, DefectQuery(1, 1), Truncation(E1.measure.graph, 6))
    >>> print(values[Circuit(2)])
    -2

    """
    if t.depth < required_depth(q):
        raise DomainError(
            f"window depth {t.depth} is too small for k={q.k}, m={q.m}: "
            f"need depth >= {required_depth(q)}"
        )
    columns = interior(t, q)
    operator = _SparseOperator(truncated_matrix(spec, t, weight))
    mu = _measure_vector(spec, t)[:, None]
    block = _indicator_block(t, columns)
    squared_norms = []
    for n in range(q.k + q.m + 1):
        if n >= q.k:
            squared_norms.append((block * block * mu).sum(axis=0))
        if n < q.k + q.m:
            block = operator @ block
    logger.debug(
        "matrix oracle on %d window vertices, %d interior, k=%d, m=%d",
        len(t), len(columns), q.k, q.m,
    )
    values = {}
    for n, v in enumerate(columns):
        total = sum(
            ((-1) ** p * math.comb(q.m, p) * squared_norms[p][n] for p in range(q.m + 1)),
            Fraction(0),
        )
        values[v] = Fraction(total) / spec.mu(v)
    return values


def gram_matrix(spec: MeasureSpec, t: Truncation, p: int, weight: Optional[WeightSpec] = None) -> np.ndarray:
    """
    Returns the matrix of <M^p chi_a, M^p chi_b> over all window vertices a, b.

    Distinct vertices have disjoint preimages, so the off-diagonal entries
    vanish; the diagonal entry at an interior vertex v is mu(v) times the
    Gram scalar of order p at v.
    """
    if p < 0:
        raise DomainError(f"power must be nonnegative, got {p}")
    operator = _SparseOperator(truncated_matrix(spec, t, weight))
    block = _indicator_block(t, list(t.vertices))
    for _ in range(p):
        block = operator @ block
    return block.T @ (block * _measure_vector(spec, t)[:, None])
