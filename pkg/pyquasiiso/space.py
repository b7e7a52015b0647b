"""
Measures and weights on a one-circuit graph.

A measure assigns a positive rational to every circuit vertex and an
eventually polynomial sequence to every branch. A weight assigns a rational
to every circuit vertex and an eventually constant sequence to every branch,
so it is bounded by construction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .errors import DomainError, SpecValidationError
from .graph import Branch, Circuit, GraphSpec, Vertex
from .numeric import EventuallyPolynomialSeq, Polynomial, as_rational, format_rational

logger = logging.getLogger(__name__)

BranchKey = tuple[int, int]


def _freeze_branches(
    graph: GraphSpec, sequences: Mapping[BranchKey, EventuallyPolynomialSeq], what: str
) -> Mapping[BranchKey, EventuallyPolynomialSeq]:
    expected = set(graph.branches())
    given = set(sequences)
    if given - expected:
        extra = ", ".join(str(key) for key in sorted(given - expected))
        raise SpecValidationError(f"{what} given for branches not in the graph: {extra}")
    if expected - given:
        missing = ", ".join(str(key) for key in sorted(expected - given))
        raise SpecValidationError(f"{what} missing for branches: {missing}")
    return MappingProxyType(
        {
            key: seq if isinstance(seq, EventuallyPolynomialSeq) else EventuallyPolynomialSeq(*seq)
            for key, seq in sorted(sequences.items())
        }
    )


def _circuit_values(graph: GraphSpec, values: Iterable, what: str) -> tuple[Fraction, ...]:
    values = tuple(as_rational(v) for v in values)
    if len(values) != graph.kappa:
        raise SpecValidationError(
            f"{what} has {len(values)} entries but kappa is {graph.kappa}"
        )
    return values


@dataclass(frozen=True)
class ValidationReport:
    """
    Outcome of MeasureSpec.validate().

    Attributes
    ----------
    valid: bool
        True when every measure value is positive.
    sup_h1: Fraction or None
        The exact supremum of h_1 over all vertices, so that the squared norm
        of the composition operator is sup_h1. None when the measure is invalid.
    horizon: int
        The largest branch index the ratio scan had to inspect.
    problems: tuple of str
        One message per violated condition, naming the vertex or branch.
    """

    valid: bool
    sup_h1: Optional[Fraction]
    horizon: int = 0
    problems: tuple[str, ...] = ()

    def raise_if_invalid(self):
        if not self.valid:
            raise SpecValidationError("; ".join(self.problems))

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "sup_h1": None if self.sup_h1 is None else format_rational(self.sup_h1),
            "horizon": self.horizon,
            "problems": list(self.problems),
        }

    def to_text(self) -> str:
        lines = [f"valid: {str(self.valid).lower()}"]
        if self.sup_h1 is not None:
            lines.append(f"sup h_1: {format_rational(self.sup_h1)}")
            lines.append(f"scan horizon: {self.horizon}")
        lines.extend(f"problem: {problem}" for problem in self.problems)
        return "\n".join(lines)


def _first_nonpositive_tail_index(tail: Polynomial, start: int) -> Optional[int]:
    """
    Returns the first j >= start with tail(j) <= 0, or None when the tail is
    positive for every j >= start.

    If tail(start) > 0, the first nonpositive integer n has a root in
    (n - 1, n], so only start and the integers next to real roots are checked.
    """
    for j in [start, *tail.integers_near_roots(start)]:
        if tail(j) <= 0:
            return j
    return None


def _tail_ratio_indices(tail: Polynomial, start: int) -> list[int]:
    """
    Returns the indices j >= start at which tail(j+1)/tail(j) can reach its
    supremum over the integers j >= start.

    The ratio is monotone between consecutive real roots of tail and of
    tail'(x+1) tail(x) - tail(x+1) tail'(x), so its integer maxima sit at
    start or next to one of those roots; on the last piece it tends to 1.
    """
    shifted = tail.compose_shift(1)
    slope = shifted.derivative() * tail - shifted * tail.derivative()
    near = set(tail.integers_near_roots(start)) | set(slope.integers_near_roots(start))
    return sorted(near | {start})


@dataclass(frozen=True)
class MeasureSpec:
    """
    A measure on the vertices of a one-circuit graph.

    Parameters
    ----------
    graph: GraphSpec
        The underlying graph.
    circuit_mu: sequence of rationals
        mu(x_r) for r = 1..kappa.
    branch_mu: mapping (r, i) -> EventuallyPolynomialSeq
        The sequence j -> mu(x^r_{i,j}), one per branch.

    Examples
    --------
    >>> from pyquasiiso.common import E1
    >>> print(E1.measure.mu(Circuit(1)), E1.measure.mu(Branch(1, 2, 7)))
    5/3 1

    """

    graph: GraphSpec
    circuit_mu: tuple[Fraction, ...]
    branch_mu: Mapping[BranchKey, EventuallyPolynomialSeq] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "circuit_mu", _circuit_values(self.graph, self.circuit_mu, "circuit_mu")
        )
        object.__setattr__(
            self, "branch_mu", _freeze_branches(self.graph, self.branch_mu, "branch_mu")
        )

    def mu(self, v: Vertex) -> Fraction:
        """Returns mu({v})."""
        self.graph.require(v)
        if isinstance(v, Circuit):
            return self.circuit_mu[v.r - 1]
        return self.branch_mu[v.r, v.i].at(v.j)

    def mu_sum(self, vertices: Iterable[Vertex]) -> Fraction:
        """Returns the measure of a finite vertex set."""
        return sum((self.mu(v) for v in vertices), Fraction(0))

    def validate(self) -> ValidationReport:
        """
        Checks positivity of every measure value and computes sup h_1.

        Branch ratios mu(j+1)/mu(j) are checked on the prefix and, on the tail,
        only where the ratio can peak: next to the real roots of the tail and
        of the numerator of its derivative. Ratios tend to 1, which is
        included in the max.

        Examples
        --------
        >>> from pyquasiiso.common import E1
        >>> print(E1.measure.validate().sup_h1)
        3

        """
        problems = []
        for r, value in enumerate(self.circuit_mu, start=1):
            if value <= 0:
                problems.append(f"measure of c:{r} is {format_rational(value)}, must be positive")
        for (r, i), seq in self.branch_mu.items():
            for j, value in enumerate(seq.prefix, start=1):
                if value <= 0:
                    problems.append(
                        f"measure of {Branch(r, i, j)} is {format_rational(value)}, must be positive"
                    )
            if seq.tail.leading <= 0:
                problems.append(
                    f"tail of branch ({r}, {i}) has nonpositive leading coefficient"
                )
                continue
            bad = _first_nonpositive_tail_index(seq.tail, seq.horizon + 1)
            if bad is not None:
                problems.append(
                    f"measure of {Branch(r, i, bad)} is "
                    f"{format_rational(seq.tail(bad))}, must be positive"
                )
        if problems:
            logger.debug("measure rejected: %s", problems)
            return ValidationReport(False, None, 0, tuple(problems))

        candidates = [
            self.mu_sum(self.graph.preimage(c, 1)) / self.mu(c)
            for c in self.graph.circuit_vertices()
        ]
        horizon = 0
        for seq in self.branch_mu.values():
            indices = [*range(1, seq.horizon + 1), *_tail_ratio_indices(seq.tail, seq.horizon + 1)]
            horizon = max(horizon, indices[-1])
            candidates.extend(seq.at(j + 1) / seq.at(j) for j in indices)
            candidates.append(Fraction(1))
        sup_h1 = max(candidates)
        logger.debug("measure valid, sup h_1 = %s (horizon %d)", sup_h1, horizon)
        return ValidationReport(True, sup_h1, horizon, ())


@dataclass(frozen=True)
class WeightSpec:
    """
    A bounded weight on the vertices of a one-circuit graph.

    Branch weights are eventually constant: each is an EventuallyPolynomialSeq
    whose tail has degree at most 0.

    Examples
    --------
    >>> from pyquasiiso.common import E3
    >>> print(E3.weight.pi(Branch(1, 1, 4)), E3.weight.pi(Circuit(2)))
    1/2 1

    """

    graph: GraphSpec
    circuit_pi: tuple[Fraction, ...]
    branch_pi: Mapping[BranchKey, EventuallyPolynomialSeq] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "circuit_pi", _circuit_values(self.graph, self.circuit_pi, "circuit_pi")
        )
        branch_pi = _freeze_branches(self.graph, self.branch_pi, "branch_pi")
        for key, seq in branch_pi.items():
            if seq.tail.degree > 0:
                raise SpecValidationError(f"weight on branch {key} is not eventually constant")
        object.__setattr__(self, "branch_pi", branch_pi)

    @staticmethod
    def eventually_constant(prefix: Iterable, tail_const) -> EventuallyPolynomialSeq:
        """Builds a branch weight from its prefix and its constant tail value."""
        return EventuallyPolynomialSeq(tuple(prefix), Polynomial.constant(tail_const))

    @staticmethod
    def ones(graph: GraphSpec) -> WeightSpec:
        """The weight identically equal to 1."""
        one = EventuallyPolynomialSeq.constant(1)
        return WeightSpec(graph, (1,) * graph.kappa, {key: one for key in graph.branches()})

    def tail_value(self, r: int, i: int) -> Fraction:
        """The constant value of the weight far out on branch (r, i)."""
        return self.branch_pi[r, i].tail(0)

    def pi(self, v: Vertex) -> Fraction:
        """Returns pi(v)."""
        self.graph.require(v)
        if isinstance(v, Circuit):
            return self.circuit_pi[v.r - 1]
        return self.branch_pi[v.r, v.i].at(v.j)

    def is_identically_one(self) -> bool:
        return all(value == 1 for value in self.circuit_pi) and all(
            seq.polynomial_degree() == 0 and seq.tail(0) == 1 for seq in self.branch_pi.values()
        )


def check_same_graph(measure: MeasureSpec, weight: WeightSpec):
    if measure.graph != weight.graph:
        raise DomainError(f"weight lives on {weight.graph}, measure on {measure.graph}")
