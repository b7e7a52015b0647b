"""
Deciding k-quasi-m-isometry of C and W.

An operator T with T^{*p} T^p diagonal is a k-quasi-m-isometry exactly when
the defect sum_{p=0}^{m} (-1)^p C(m,p) g_{p+k}(x) vanishes at every vertex x,
where g_p is h_p for C and h_p F_p for W. On a one-circuit graph the
infinitely many branch conditions collapse to a polynomial-degree test on
each branch measure sequence, and what remains are the kappa circuit
defects. Both forms are computed and must agree.
"""

from __future__ import annotations

import enum
import logging
import math
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Union

from .derivatives import h, wgram
from .errors import DomainError, InvariantViolation
from .graph import Circuit, Vertex
from .numeric import (
    EventuallyPolynomialSeq,
    alt_binomial_sum,
    format_degree,
    format_rational,
)
from .oracle import Truncation, defect_quadratic_form
from .space import MeasureSpec, WeightSpec, check_same_graph

logger = logging.getLogger(__name__)

Degree = Union[int, float]
BranchKey = tuple[int, int]


class Criterion(enum.Enum):
    PER_VERTEX = "per-vertex"
    THEOREM_FORM = "theorem-form"
    WEIGHTED_THEOREM_FORM = "weighted-theorem-form"


@dataclass(frozen=True)
class DefectQuery:
    """The pair (k, m) of a k-quasi-m-isometry question."""

    k: int
    m: int

    def __post_init__(self):
        for name, value, lowest in (("k", self.k, 0), ("m", self.m, 1)):
            if isinstance(value, bool) or not isinstance(value, int) or value < lowest:
                raise DomainError(f"{name} must be an integer >= {lowest}, got {value!r}")

    def lowered(self) -> DefectQuery:
        return DefectQuery(self.k, self.m - 1)


@dataclass(frozen=True)
class ClassificationReport:
    """
    The verdict of a classification together with the data that decided it.

    Attributes
    ----------
    verdict: bool
        Whether the operator is a k-quasi-m-isometry.
    strict: bool
        Whether it is, in addition, not a k-quasi-(m-1)-isometry. Only
        computed by classify_strict; False otherwise.
    circuit_defects: tuple of (r, Fraction)
        The defect at each circuit vertex x_r.
    branch_degrees: tuple of ((r, i), degree)
        Degree of the branch sequence the criterion tests: mu(x^r_{i,k+j}) for
        C, pi_k^2 mu at x^r_{i,k+j} for W. ``-inf`` marks the zero sequence and
        ``inf`` a sequence that is not a polynomial.
    branch_conditions: tuple of ((r, i), bool)
        Whether the defect vanishes at every vertex of branch (r, i).
    theorem_branch_conditions: tuple of ((r, i), bool)
        For W only: the degree <= m - 1 condition on branch_degrees.
    """

    k: int
    m: int
    verdict: bool
    circuit_defects: tuple[tuple[int, Fraction], ...]
    branch_degrees: tuple[tuple[BranchKey, Degree], ...]
    criterion_used: Criterion
    branch_conditions: tuple[tuple[BranchKey, bool], ...] = ()
    strict: bool = False
    weighted: bool = False
    theorem_branch_conditions: tuple[tuple[BranchKey, bool], ...] = ()
    oracle_checked: bool = False
    oracle_agrees: Optional[bool] = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.strict and not self.verdict:
            raise InvariantViolation("a strict report must have a positive verdict")
        if self.verdict and any(defect != 0 for _, defect in self.circuit_defects):
            raise InvariantViolation("positive verdict with a nonzero circuit defect")

    def to_dict(self) -> dict:
        data = {
            "verdict": self.verdict,
            "strict": self.strict,
            "k": self.k,
            "m": self.m,
            "weighted": self.weighted,
            "criterion": self.criterion_used.value,
            "circuit_defects": [
                {"vertex": str(Circuit(r)), "defect": format_rational(defect)}
                for r, defect in self.circuit_defects
            ],
            "branch_degrees": [
                {"r": r, "i": i, "degree": format_degree(degree)}
                for (r, i), degree in self.branch_degrees
            ],
            "branch_conditions": [
                {"r": r, "i": i, "holds": holds} for (r, i), holds in self.branch_conditions
            ],
        }
        if self.weighted:
            data["theorem_branch_conditions"] = [
                {"r": r, "i": i, "holds": holds}
                for (r, i), holds in self.theorem_branch_conditions
            ]
        data["oracle_checked"] = self.oracle_checked
        data["oracle_agrees"] = self.oracle_agrees
        data["notes"] = list(self.notes)
        return data

    def to_text(self) -> str:
        operator = "W" if self.weighted else "C"
        lines = [
            f"operator: {operator}",
            f"k: {self.k}",
            f"m: {self.m}",
            f"verdict: {str(self.verdict).lower()}",
            f"strict: {str(self.strict).lower()}",
            f"criterion: {self.criterion_used.value}",
            "circuit defects:",
        ]
        lines.extend(f"  {Circuit(r)}  {format_rational(d)}" for r, d in self.circuit_defects)
        lines.append("branch degrees:")
        conditions = dict(self.branch_conditions)
        theorem = dict(self.theorem_branch_conditions)
        for (r, i), degree in self.branch_degrees:
            line = f"  ({r},{i})  degree {format_degree(degree)}"
            if (r, i) in conditions:
                line += f", all branch defects vanish: {str(conditions[r, i]).lower()}"
            if (r, i) in theorem:
                line += f", degree <= m-1: {str(theorem[r, i]).lower()}"
            lines.append(line)
        lines.append(f"oracle checked: {str(self.oracle_checked).lower()}")
        if self.oracle_checked:
            lines.append(f"oracle agrees: {str(self.oracle_agrees).lower()}")
        lines.extend(f"note: {note}" for note in self.notes)
        return "\n".join(lines)


def defect_vertex(
    spec: MeasureSpec, q: DefectQuery, v: Vertex, weight: Optional[WeightSpec] = None
) -> Fraction:
    """
    Returns sum_{p=0}^{m} (-1)^p C(m,p) g_{p+k}(v), with g = h, or g = h F when
    a weight is given.
    """
    if weight is None:
        grams = [h(spec, v, q.k + p) for p in range(q.m + 1)]
    else:
        grams = [wgram(spec, weight, v, q.k + p) for p in range(q.m + 1)]
    return alt_binomial_sum(grams)


def defect_circuit(
    spec: MeasureSpec, q: DefectQuery, r: int, weight: Optional[WeightSpec] = None
) -> Fraction:
    """
    Returns the defect at the circuit vertex x_r.

    Examples
    --------
    >>> from pyquasiiso.common import E1, E2
    >>> print(defect_circuit(E1.measure, DefectQuery(1, 2), 1))
    0
    >>> print(defect_circuit(E1.measure, DefectQuery(1, 1), 2))
    -2
    >>> print(defect_circuit(E2.measure, DefectQuery(2, 2), 3))
    0

    """
    return defect_vertex(spec, q, Circuit(r), weight)


def branch_sequence(spec: MeasureSpec, k: int, r: int, i: int) -> EventuallyPolynomialSeq:
    """The sequence j -> mu(x^r_{i,k+j}), j >= 1."""
    return spec.branch_mu[r, i].shift(k)


def defect_branch_all(spec: MeasureSpec, q: DefectQuery, r: int, i: int) -> bool:
    """
    True iff the defect of C vanishes at every vertex of branch (r, i).

    At x^r_{i,j} the defect is sum_p (-1)^p C(m,p) mu(x^r_{i,j+k+p}) / mu(x^r_{i,j}),
    so it vanishes for all j exactly when j -> mu(x^r_{i,k+j}) is a polynomial of
    degree at most m - 1.
    """
    return branch_sequence(spec, q.k, r, i).is_polynomial_of_degree_at_most(q.m - 1)


def _squared_weight_run(seq: EventuallyPolynomialSeq, lo: int, hi: int) -> Fraction:
    """prod_{l=lo}^{hi} pi(x_l)^2 along one branch; 1 when lo > hi."""
    return math.prod((seq.at(l) ** 2 for l in range(lo, hi + 1)), start=Fraction(1))


def weighted_branch_sequence(
    spec: MeasureSpec, weight: WeightSpec, k: int, r: int, i: int
) -> EventuallyPolynomialSeq:
    """
    The sequence j -> pi_k^2(x^r_{i,k+j}) mu(x^r_{i,k+j}), j >= 1.

    pi_k at x^r_{i,k+j} is the product of pi over x^r_{i,j+1}, ..., x^r_{i,j+k};
    once the weight has reached its constant c this is c^(2k) times the
    shifted measure tail.
    """
    mu_seq = spec.branch_mu[r, i]
    pi_seq = weight.branch_pi[r, i]
    cutoff = max(mu_seq.horizon, pi_seq.horizon)
    prefix = [
        _squared_weight_run(pi_seq, j + 1, j + k) * mu_seq.at(j + k)
        for j in range(1, cutoff + 1)
    ]
    tail = mu_seq.tail.compose_shift(k) * weight.tail_value(r, i) ** (2 * k)
    return EventuallyPolynomialSeq(prefix, tail)


def weighted_branch_defects(
    spec: MeasureSpec, weight: WeightSpec, q: DefectQuery, r: int, i: int
) -> EventuallyPolynomialSeq:
    """
    The sequence j -> mu(x^r_{i,j}) times the defect of W at x^r_{i,j}.

    Since h_n F_n(x^r_{i,j}) = pi_n^2(x^r_{i,j+n}) mu(x^r_{i,j+n}) / mu(x^r_{i,j}),
    term j is sum_p (-1)^p C(m,p) [prod_{l=j+1}^{j+k+p} pi(x_l)^2] mu(x_{j+k+p}),
    an eventually polynomial sequence once weight and measure follow their tails.
    """
    mu_seq = spec.branch_mu[r, i]
    pi_seq = weight.branch_pi[r, i]
    c = weight.tail_value(r, i)
    cutoff = max(mu_seq.horizon, pi_seq.horizon)
    signs = [(-1) ** p * math.comb(q.m, p) for p in range(q.m + 1)]
    prefix = [
        sum(
            (
                sign * _squared_weight_run(pi_seq, j + 1, j + q.k + p) * mu_seq.at(j + q.k + p)
                for p, sign in enumerate(signs)
            ),
            Fraction(0),
        )
        for j in range(1, cutoff + 1)
    ]
    tail = mu_seq.tail * 0
    for p, sign in enumerate(signs):
        tail = tail + mu_seq.tail.compose_shift(q.k + p) * (sign * c ** (2 * (q.k + p)))
    return EventuallyPolynomialSeq(prefix, tail)


def _structural_notes(spec: MeasureSpec, q: DefectQuery, verdict: bool, degrees) -> list[str]:
    notes = []
    if spec.graph.kappa == 1 and q.m >= 2:
        notes.append("single circuit vertex: the branch degree condition alone decides")
    if verdict and q.m >= 2:
        exact = [key for key, degree in degrees.items() if degree == q.m - 2]
        if exact:
            r, i = exact[0]
            notes.append(
                f"branch ({r},{i}) has degree exactly m-2 and witnesses strictness"
            )
    return notes


def classify_composition(
    spec: MeasureSpec, q: DefectQuery, check_oracle: bool = False
) -> ClassificationReport:
    """
    Decides whether C is a k-quasi-m-isometry.

    For m >= 2 the theorem form (every branch sequence of degree <= m - 2 and
    zero circuit defects) and the per-vertex form (degree <= m - 1 and zero
    circuit defects) are both evaluated; they must agree. For m = 1 only the
    per-vertex form applies.

    Examples
    --------
    >>> from pyquasiiso.common import E1, E2
    >>> classify_composition(E1.measure, DefectQuery(1, 2)).verdict
    True
    >>> classify_composition(E2.measure, DefectQuery(2, 2)).verdict
    True
    >>> classify_composition(E1.measure, DefectQuery(1, 1)).verdict
    False

    """
    degrees = {
        (r, i): branch_sequence(spec, q.k, r, i).polynomial_degree()
        for r, i in spec.graph.branches()
    }
    defects = tuple((c.r, defect_circuit(spec, q, c.r)) for c in spec.graph.circuit_vertices())
    circuit_ok = all(defect == 0 for _, defect in defects)
    per_vertex = circuit_ok and all(degree <= q.m - 1 for degree in degrees.values())
    if q.m >= 2:
        theorem = circuit_ok and all(degree <= q.m - 2 for degree in degrees.values())
        if theorem != per_vertex:
            raise InvariantViolation(
                f"theorem form says {theorem}, per-vertex form says {per_vertex} "
                f"for k={q.k}, m={q.m}"
            )
        criterion = Criterion.THEOREM_FORM
    else:
        criterion = Criterion.PER_VERTEX
    logger.debug("C with k=%d, m=%d: verdict %s by %s", q.k, q.m, per_vertex, criterion.value)
    report = ClassificationReport(
        k=q.k,
        m=q.m,
        verdict=per_vertex,
        circuit_defects=defects,
        branch_degrees=tuple(degrees.items()),
        criterion_used=criterion,
        branch_conditions=tuple((key, degree <= q.m - 1) for key, degree in degrees.items()),
        notes=tuple(_structural_notes(spec, q, per_vertex, degrees)),
    )
    return _with_oracle(report, spec, q, None) if check_oracle else report


def classify_weighted(
    spec: MeasureSpec, weight: WeightSpec, q: DefectQuery, check_oracle: bool = False
) -> ClassificationReport:
    """
    Decides whether W f = pi (f o phi) is a k-quasi-m-isometry.

    The verdict is the per-vertex criterion: the weighted defect vanishes at
    every branch vertex (checked exactly on an eventually polynomial
    sequence per branch) and at every circuit vertex. The condition that
    j -> pi_k^2 mu at x^r_{i,k+j} has degree <= m - 1 is reported beside it;
    when the two disagree a note says so.

    Examples
    --------
    >>> from pyquasiiso.common import E3
    >>> report = classify_weighted(E3.measure, E3.weight, DefectQuery(1, 2))
    >>> report.verdict
    False
    >>> [format_rational(defect) for _, defect in report.circuit_defects]
    ['-21/31', '15/44', '-1/32']

    """
    check_same_graph(spec, weight)
    branches = spec.graph.branches()
    degrees = {
        (r, i): weighted_branch_sequence(spec, weight, q.k, r, i).polynomial_degree()
        for r, i in branches
    }
    vanishing = {
        (r, i): weighted_branch_defects(spec, weight, q, r, i).is_zero() for r, i in branches
    }
    defects = tuple(
        (c.r, defect_circuit(spec, q, c.r, weight)) for c in spec.graph.circuit_vertices()
    )
    circuit_ok = all(defect == 0 for _, defect in defects)
    verdict = circuit_ok and all(vanishing.values())
    theorem_conditions = {key: degree <= q.m - 1 for key, degree in degrees.items()}
    notes = []
    if q.m >= 2:
        criterion = Criterion.WEIGHTED_THEOREM_FORM
        theorem = circuit_ok and all(theorem_conditions.values())
        if theorem != verdict:
            notes.append(
                f"the branch degree condition (degree <= m-1) gives {str(theorem).lower()}, "
                f"the per-vertex branch defects give {str(verdict).lower()}; "
                "the per-vertex verdict is reported"
            )
            logger.warning("weighted criteria disagree for k=%d, m=%d: %s", q.k, q.m, notes[-1])
    else:
        criterion = Criterion.PER_VERTEX
    if weight.is_identically_one():
        notes.append("pi is identically 1: W coincides with C")
    report = ClassificationReport(
        k=q.k,
        m=q.m,
        verdict=verdict,
        circuit_defects=defects,
        branch_degrees=tuple(degrees.items()),
        criterion_used=criterion,
        branch_conditions=tuple(vanishing.items()),
        weighted=True,
        theorem_branch_conditions=tuple(theorem_conditions.items()),
        notes=tuple(notes),
    )
    return _with_oracle(report, spec, q, weight) if check_oracle else report


def classify(
    spec: MeasureSpec,
    q: DefectQuery,
    weight: Optional[WeightSpec] = None,
    strict: bool = False,
    check_oracle: bool = False,
) -> ClassificationReport:
    """Classifies C, or W when a weight is given, optionally deciding strictness."""
    if strict:
        return classify_strict(spec, q, weight, check_oracle=check_oracle)
    if weight is None:
        return classify_composition(spec, q, check_oracle=check_oracle)
    return classify_weighted(spec, weight, q, check_oracle=check_oracle)


def classify_strict(
    spec: MeasureSpec,
    q: DefectQuery,
    weight: Optional[WeightSpec] = None,
    check_oracle: bool = False,
) -> ClassificationReport:
    """
    Decides whether the operator is a strict k-quasi-m-isometry: one that is
    a k-quasi-m-isometry but not a k-quasi-(m-1)-isometry.

    Examples
    --------
    >>> from pyquasiiso.common import E1
    >>> report = classify_strict(E1.measure, DefectQuery(1, 2))
    >>> report.verdict, report.strict
    (True, True)

    """
    if q.m < 2:
        raise DomainError(f"strictness needs m >= 2, got m={q.m}")
    report = classify(spec, q, weight, check_oracle=check_oracle)
    lower = classify(spec, q.lowered(), weight)
    return replace(report, strict=report.verdict and not lower.verdict)


def classify_m_isometry(spec: MeasureSpec, m: int, check_oracle: bool = False) -> ClassificationReport:
    """
    Decides whether C is an m-isometry, the case k = 0.

    When only the last circuit vertex carries branches, the report notes that
    the single-branching-vertex form of the criterion applies.
    """
    if m < 2:
        raise DomainError(f"the m-isometry criterion needs m >= 2, got m={m}")
    report = classify_composition(spec, DefectQuery(0, m), check_oracle=check_oracle)
    if not any(spec.graph.eta[:-1]):
        report = replace(
            report,
            notes=report.notes
            + ("branches attach only at the last circuit vertex x_kappa",),
        )
    return report


@dataclass(frozen=True)
class OracleComparison:
    """Closed-form defects next to the matrix-oracle defects on a window."""

    q: DefectQuery
    depth: int
    rows: tuple[tuple[Vertex, Fraction, Fraction], ...]

    @property
    def agrees(self) -> bool:
        return all(closed == oracle for _, closed, oracle in self.rows)

    @property
    def window_verdict(self) -> bool:
        """True when every interior oracle defect is zero."""
        return all(oracle == 0 for _, _, oracle in self.rows)

    def disagreements(self) -> list[Vertex]:
        return [v for v, closed, oracle in self.rows if closed != oracle]

    def to_table(self, to_list: bool = False):
        """
        Returns the comparison as a table.

        Notes
        -----
        By default, the table is returned as a pandas.DataFrame object. If the
        Pandas package is not found, the method returns a list of lists instead.

        Parameters
        ----------
        to_list: bool, optional
            Decides if the return value should be a list of lists instead of a
            DataFrame object. Default value is False.

        Returns
        -------
        table: pandas.DataFrame or list of lists
            One row per interior vertex: vertex, closed-form defect, oracle
            defect, with rationals as strings.
        """
        DataFrame = None
        if not to_list:
            try:
                from pandas import DataFrame
            except ImportError:
                warnings.warn(
                    "Optional dependency 'pandas' not found. Falling back to a list of lists.",
                    ImportWarning,
                )
        header = ["vertex", "closed_form", "oracle"]
        table = [
            [str(v), format_rational(closed), format_rational(oracle)]
            for v, closed, oracle in self.rows
        ]
        if to_list or DataFrame is None:
            return [header] + table
        return DataFrame(table, columns=header)


def compare_with_oracle(
    spec: MeasureSpec,
    q: DefectQuery,
    weight: Optional[WeightSpec] = None,
    depth: Optional[int] = None,
) -> OracleComparison:
    """
    Evaluates the defect at every interior window vertex both from the closed
    forms and from the truncated operator matrix.
    """
    t = (
        Truncation.for_query(spec.graph, q)
        if depth is None
        else Truncation(spec.graph, depth)
    )
    oracle_values = defect_quadratic_form(spec, q, t, weight)
    rows = tuple(
        (v, defect_vertex(spec, q, v, weight), value) for v, value in oracle_values.items()
    )
    return OracleComparison(q, t.depth, rows)


def _with_oracle(
    report: ClassificationReport, spec: MeasureSpec, q: DefectQuery, weight: Optional[WeightSpec]
) -> ClassificationReport:
    comparison = compare_with_oracle(spec, q, weight)
    if not comparison.agrees:
        vertices = ", ".join(str(v) for v in comparison.disagreements())
        raise InvariantViolation(f"closed form and matrix oracle disagree at {vertices}")
    if report.verdict and not comparison.window_verdict:
        raise InvariantViolation("positive verdict but the oracle finds a nonzero defect")
    return replace(report, oracle_checked=True, oracle_agrees=True)
