"""
PyQuasiIsometry
===============
Python library for deciding k-quasi-m-isometry of composition and weighted
composition operators on one-circuit directed graphs, with exact rational
arithmetic throughout.
"""

from .classifier import (
    ClassificationReport,
    Criterion,
    DefectQuery,
    OracleComparison,
    classify,
    classify_composition,
    classify_m_isometry,
    classify_strict,
    classify_weighted,
    compare_with_oracle,
    defect_branch_all,
    defect_circuit,
    defect_vertex,
)
from .derivatives import F, aggregate_circuit_defect, gram_scalar, h, pi_prod, wgram
from .errors import DomainError, InvariantViolation, SpecParseError, SpecValidationError
from .graph import Branch, Circuit, GraphSpec, Vertex, phi1, phi2
from .numeric import EventuallyPolynomialSeq, Polynomial
from .random_spec import random_measure_spec, random_weight_spec
from .space import MeasureSpec, ValidationReport, WeightSpec
from .specfile import LoadedSpec, dump_spec, load_spec, parse_spec


__title__ = "pyquasiiso"
__author__ = "srsviegas"
