"""
Closed-form Radon-Nikodym derivatives and weighted Gram scalars.

For the composition operator C, C^{*p} C^p is multiplication by
h_p = d(mu o phi^{-p}) / d mu. For the weighted operator W f = pi (f o phi),
W^{*p} W^p is multiplication by h_p F_p, where F_p is the conditional
expectation of pi_p^2 = prod_{t<p} (pi o phi^t)^2 pushed down by phi^p.

Everything here follows the closed-form atom description of phi^{-p}; the
brute-force counterparts live in ``pyquasiiso.oracle`` and share no
summation code with this module.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

from .errors import DomainError
from .graph import Branch, Circuit, GraphSpec, Vertex, phi2
from .numeric import format_rational
from .space import MeasureSpec, WeightSpec, check_same_graph

logger = logging.getLogger(__name__)


def _check_order(p: int, lowest: int = 0):
    if isinstance(p, bool) or not isinstance(p, int) or p < lowest:
        raise DomainError(f"order must be an integer >= {lowest}, got {p!r}")


def _circuit_atom(graph: GraphSpec, r: int, p: int) -> Iterator[Vertex]:
    """
    Yields the vertices of the atom phi^{-p}({x_r}) by the index conditions of
    the closed form: x_{phi2(p+r)} and every x^s_{i,j} with j <= p and
    phi2(p + r) = phi2(s + j).
    """
    target = phi2(p + r, graph.kappa)
    yield Circuit(target)
    for j in range(1, p + 1):
        for s in range(1, graph.kappa + 1):
            if phi2(s + j, graph.kappa) == target:
                for i in range(1, graph.eta[s - 1] + 1):
                    yield Branch(s, i, j)


def h(spec: MeasureSpec, v: Vertex, p: int) -> Fraction:
    """
    Returns the Radon-Nikodym derivative h_p at v.

    Examples
    --------
    >>> from pyquasiiso.common import E1
    >>> print(h(E1.measure, Circuit(1), 1), h(E1.measure, Circuit(1), 2))
    7/5 9/5
    >>> print(h(E1.measure, Branch(1, 1, 3), 0))
    1

    """
    _check_order(p)
    spec.graph.require(v)
    if p == 0:
        return Fraction(1)
    if isinstance(v, Branch):
        return spec.mu(Branch(v.r, v.i, v.j + p)) / spec.mu(v)
    atom_measure = sum((spec.mu(y) for y in _circuit_atom(spec.graph, v.r, p)), Fraction(0))
    return atom_measure / spec.mu(v)


def pi_prod(weight: WeightSpec, v: Vertex, k: int) -> Fraction:
    """
    Returns pi_k(v) = pi(v) pi(phi(v)) ... pi(phi^{k-1}(v)).

    Examples
    --------
    >>> from pyquasiiso.common import E3
    >>> print(pi_prod(E3.weight, Branch(1, 1, 1), 2), pi_prod(E3.weight, Branch(1, 1, 3), 3))
    1/2 1/8

    """
    _check_order(k)
    weight.graph.require(v)
    return math.prod((weight.pi(weight.graph.iterate(v, t)) for t in range(k)), start=Fraction(1))


def F(spec: MeasureSpec, weight: WeightSpec, v: Vertex, p: int) -> Fraction:
    """
    Returns F_p(v), the value of E_p(pi_p^2) on the atom phi^{-p}({v}).

    On a branch vertex the atom is a single vertex and F_p is pi_p^2 there;
    on a circuit vertex it is the mu-weighted average of pi_p^2 over the atom.

    Examples
    --------
    >>> from pyquasiiso.common import E3
    >>> print(F(E3.measure, E3.weight, Circuit(1), 1), F(E3.measure, E3.weight, Branch(1, 1, 1), 1))
    5/9 1/4

    """
    _check_order(p)
    check_same_graph(spec, weight)
    spec.graph.require(v)
    if p == 0:
        return Fraction(1)
    if isinstance(v, Branch):
        return pi_prod(weight, Branch(v.r, v.i, v.j + p), p) ** 2
    numerator = Fraction(0)
    denominator = Fraction(0)
    for y in _circuit_atom(spec.graph, v.r, p):
        numerator += pi_prod(weight, y, p) ** 2 * spec.mu(y)
        denominator += spec.mu(y)
    return numerator / denominator


def wgram(spec: MeasureSpec, weight: WeightSpec, v: Vertex, p: int) -> Fraction:
    """
    Returns h_p F_p at v, the diagonal entry of W^{*p} W^p at v.

    Examples
    --------
    >>> from pyquasiiso.common import E3
    >>> print(wgram(E3.measure, E3.weight, Circuit(1), 1))
    40/31

    """
    _check_order(p)
    if p == 0:
        spec.graph.require(v)
        return Fraction(1)
    return h(spec, v, p) * F(spec, weight, v, p)


@dataclass(frozen=True)
class GramScalar:
    """The multiplier of T^{*p} T^p at a vertex."""

    vertex: Vertex
    p: int
    value: Fraction

    def __str__(self) -> str:
        return format_rational(self.value)


def gram_scalar(
    spec: MeasureSpec, v: Vertex, p: int, weight: Optional[WeightSpec] = None
) -> GramScalar:
    """Returns h_p(v), or h_p F_p(v) when a weight is given, as a GramScalar."""
    value = h(spec, v, p) if weight is None else wgram(spec, weight, v, p)
    return GramScalar(v, p, value)


class AggregateSides(NamedTuple):
    """
    The three sides of the aggregate circuit identity.

    lhs:
        sum_r mu(x_r) sum_{p=0}^{m} (-1)^p C(m,p) h_{p+k}(x_r)
    rhs:
        -sum_{r,i} sum_{p=0}^{m-1} (-1)^p C(m-1,p) mu(x^r_{i,p+k+1})
    rhs_at_roots:
        -sum_{r,i} sum_{p=0}^{m-1} (-1)^p C(m-1,p) mu(x^r_{i,1}) h_{p+k}(x^r_{i,1})
    """

    lhs: Fraction
    rhs: Fraction
    rhs_at_roots: Fraction


def aggregate_circuit_defect(spec: MeasureSpec, k: int, m: int) -> AggregateSides:
    """
    Evaluates both sides of the identity relating the mu-weighted sum of the
    circuit defects to alternating sums of branch measures.

    The circuit mass cancels in the alternating sum and the branch atoms of
    all circuit vertices together cover every branch vertex once, so the
    sides are equal for every valid measure.

    Examples
    --------
    >>> from pyquasiiso.common import E1
    >>> sides = aggregate_circuit_defect(E1.measure, 1, 1)
    >>> print(sides.lhs, sides.rhs, sides.rhs_at_roots)
    -2 -2 -2

    """
    _check_order(k)
    _check_order(m, lowest=1)
    lhs = Fraction(0)
    for c in spec.graph.circuit_vertices():
        lhs += spec.mu(c) * sum(
            ((-1) ** p * math.comb(m, p) * h(spec, c, p + k) for p in range(m + 1)),
            Fraction(0),
        )
    rhs = Fraction(0)
    rhs_at_roots = Fraction(0)
    for r, i in spec.graph.branches():
        root = Branch(r, i, 1)
        for p in range(m):
            coefficient = (-1) ** p * math.comb(m - 1, p)
            rhs -= coefficient * spec.mu(Branch(r, i, p + k + 1))
            rhs_at_roots -= coefficient * spec.mu(root) * h(spec, root, p + k)
    logger.debug(
        "aggregate identity k=%d, m=%d: lhs %s, rhs %s",
        k, m, format_rational(lhs), format_rational(rhs),
    )
    return AggregateSides(lhs, rhs, rhs_at_roots)
