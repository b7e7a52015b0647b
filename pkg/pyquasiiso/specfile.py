"""
Reading and writing spec files.

A spec file is a JSON document::

    {
      "kappa": 3,
      "eta": [2, 0, 0],
      "circuit_mu": ["5/3", "1/3", "1"],
      "branch_mu": [{"r": 1, "i": 1, "prefix": ["1"], "tail": ["1"]},
                    {"r": 1, "i": 2, "prefix": ["1"], "tail": ["1"]}],
      "weight": {"circuit_pi": ["1", "1", "1"],
                 "branch_pi": [{"r": 1, "i": 1, "prefix": [], "tail_const": "1/2"},
                               {"r": 1, "i": 2, "prefix": [], "tail_const": "1/2"}]},
      "k": 1,
      "m": 2
    }

``tail`` lists polynomial coefficients lowest degree first and applies for
``j > len(prefix)``. ``weight``, ``k`` and ``m`` are optional. Unknown fields
are rejected.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Optional, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, StrictInt, StrictStr, ValidationError

from .errors import DomainError, SpecParseError
from .graph import GraphSpec
from .numeric import EventuallyPolynomialSeq, as_rational, format_rational
from .space import MeasureSpec, WeightSpec

logger = logging.getLogger(__name__)


def _check_rational(value: Union[str, int]) -> str:
    try:
        return format_rational(as_rational(value))
    except DomainError as error:
        raise ValueError(str(error)) from None


RationalText = Annotated[Union[StrictStr, StrictInt], AfterValidator(_check_rational)]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class BranchMeasureEntry(_Strict):
    r: StrictInt
    i: StrictInt
    prefix: list[RationalText] = []
    tail: list[RationalText]


class BranchWeightEntry(_Strict):
    r: StrictInt
    i: StrictInt
    prefix: list[RationalText] = []
    tail_const: RationalText


class WeightEntry(_Strict):
    circuit_pi: list[RationalText]
    branch_pi: list[BranchWeightEntry] = []


class SpecFile(_Strict):
    kappa: StrictInt
    eta: list[StrictInt]
    circuit_mu: list[RationalText]
    branch_mu: list[BranchMeasureEntry] = []
    weight: Optional[WeightEntry] = None
    k: Optional[StrictInt] = None
    m: Optional[StrictInt] = None


@dataclass(frozen=True)
class LoadedSpec:
    """A parsed spec file: the measure, the optional weight and default (k, m)."""

    measure: MeasureSpec
    weight: Optional[WeightSpec] = None
    k: Optional[int] = None
    m: Optional[int] = None


def _keyed(entries, what: str) -> dict:
    keyed = {}
    for entry in entries:
        if (entry.r, entry.i) in keyed:
            raise SpecParseError(f"{what}: duplicate entry for branch ({entry.r}, {entry.i})")
        keyed[entry.r, entry.i] = entry
    return keyed


def _from_model(model: SpecFile) -> LoadedSpec:
    graph = GraphSpec(model.kappa, tuple(model.eta))
    branch_mu = {
        key: EventuallyPolynomialSeq(entry.prefix, entry.tail)
        for key, entry in _keyed(model.branch_mu, "branch_mu").items()
    }
    measure = MeasureSpec(graph, model.circuit_mu, branch_mu)
    weight = None
    if model.weight is not None:
        branch_pi = {
            key: WeightSpec.eventually_constant(entry.prefix, entry.tail_const)
            for key, entry in _keyed(model.weight.branch_pi, "branch_pi").items()
        }
        weight = WeightSpec(graph, model.weight.circuit_pi, branch_pi)
    return LoadedSpec(measure, weight, model.k, model.m)


def parse_spec(text: str) -> LoadedSpec:
    """
    Parses the JSON text of a spec file.

    Raises SpecParseError for malformed JSON, unknown or missing fields and
    malformed rationals, and SpecValidationError when the parsed data does
    not describe a valid graph (for instance kappa and eta disagree).
    """
    try:
        model = SpecFile.model_validate_json(text)
    except ValidationError as error:
        details = "; ".join(
            f"{'.'.join(str(part) for part in problem['loc']) or '<root>'}: {problem['msg']}"
            for problem in error.errors()
        )
        raise SpecParseError(details) from None
    return _from_model(model)


def load_spec(path: Union[str, Path]) -> LoadedSpec:
    """Reads and parses a spec file."""
    path = Path(path)
    logger.debug("loading spec file %s", path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise SpecParseError(f"cannot read {path}: {error.strerror}") from None
    return parse_spec(text)


def to_model(spec: LoadedSpec) -> SpecFile:
    measure, weight = spec.measure, spec.weight
    branch_mu = [
        BranchMeasureEntry(r=r, i=i, prefix=[format_rational(v) for v in seq.prefix], tail=seq.tail.to_strings())
        for (r, i), seq in measure.branch_mu.items()
    ]
    weight_entry = None
    if weight is not None:
        weight_entry = WeightEntry(
            circuit_pi=[format_rational(v) for v in weight.circuit_pi],
            branch_pi=[
                BranchWeightEntry(
                    r=r,
                    i=i,
                    prefix=[format_rational(v) for v in seq.prefix],
                    tail_const=format_rational(seq.tail(0)),
                )
                for (r, i), seq in weight.branch_pi.items()
            ],
        )
    return SpecFile(
        kappa=measure.graph.kappa,
        eta=list(measure.graph.eta),
        circuit_mu=[format_rational(v) for v in measure.circuit_mu],
        branch_mu=branch_mu,
        weight=weight_entry,
        k=spec.k,
        m=spec.m,
    )


def dump_spec(spec: LoadedSpec) -> str:
    """Serializes a spec to spec-file JSON that parses back to an equal spec."""
    return to_model(spec).model_dump_json(indent=2, exclude_none=True)
