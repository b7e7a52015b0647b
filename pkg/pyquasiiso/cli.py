"""
Command-line front end.

::

    pyquasiiso classify --spec FILE [--k K] [--m M] [--weighted] [--strict] [--check-oracle]
    pyquasiiso compute  --spec FILE --vertex V --p P [--quantity {h,F,wgram}]
    pyquasiiso oracle   --spec FILE [--k K] [--m M] [--weighted] [--depth D]
    pyquasiiso example  NAME [--dump] [--no-oracle]
    pyquasiiso validate --spec FILE

Every command accepts ``--format {text,structured}`` and ``-v``/``-vv``.
Exit status is 0 on success, 1 when a spec fails validation, 2 when input
cannot be parsed and 3 when an internal cross-check fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .classifier import DefectQuery, OracleComparison, classify, compare_with_oracle
from .common import EXAMPLES
from .derivatives import F, h, wgram
from .errors import DomainError, InvariantViolation, SpecParseError, SpecValidationError
from .graph import Vertex
from .numeric import format_rational
from .specfile import LoadedSpec, dump_spec, load_spec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3

QUANTITIES = ("h", "F", "wgram")


@dataclass(frozen=True)
class Command:
    """A parsed command line."""

    action: str
    spec_path: Optional[str] = None
    example: Optional[str] = None
    k: Optional[int] = None
    m: Optional[int] = None
    weighted: bool = False
    strict: bool = False
    check_oracle: bool = False
    vertex: Optional[str] = None
    p: Optional[int] = None
    quantity: str = "h"
    depth: Optional[int] = None
    format: str = "text"
    verbosity: int = 0
    dump: bool = False


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("-v", "--verbose", action="count", default=0, dest="verbosity")

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("--spec", required=True, dest="spec_path", help="path to a JSON spec file")

    query = argparse.ArgumentParser(add_help=False)
    query.add_argument("--k", type=int, help="overrides k from the spec file")
    query.add_argument("--m", type=int, help="overrides m from the spec file")
    query.add_argument("--weighted", action="store_true", help="use W instead of C")

    parser = argparse.ArgumentParser(
        prog="pyquasiiso",
        description="Decide k-quasi-m-isometry of composition and weighted composition "
        "operators on one-circuit directed graphs.",
    )
    commands = parser.add_subparsers(dest="action", required=True)

    classify_parser = commands.add_parser(
        "classify", parents=[common, spec, query], help="classify C or W"
    )
    classify_parser.add_argument("--strict", action="store_true")
    classify_parser.add_argument("--check-oracle", action="store_true")

    compute = commands.add_parser(
        "compute", parents=[common, spec], help="evaluate h_p, F_p or h_p F_p at a vertex"
    )
    compute.add_argument("--vertex", required=True, help="c:r or b:r:i:j")
    compute.add_argument("--p", type=int, required=True)
    compute.add_argument("--quantity", choices=QUANTITIES, default="h")

    oracle = commands.add_parser(
        "oracle", parents=[common, spec, query], help="compare closed forms with the matrix oracle"
    )
    oracle.add_argument("--depth", type=int)

    example = commands.add_parser(
        "example", parents=[common], help="run one of the built-in worked examples"
    )
    example.add_argument("example", choices=sorted(EXAMPLES))
    example.add_argument("--dump", action="store_true", help="print the example's spec file")
    example.add_argument(
        "--no-oracle", dest="check_oracle", action="store_false",
        help="skip the comparison with the matrix oracle",
    )

    commands.add_parser("validate", parents=[common, spec], help="validate a spec file")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> Command:
    """Parses a command line into a Command. Usage errors exit with status 2."""
    namespace = _build_parser().parse_args(argv)
    fields = Command.__dataclass_fields__
    return Command(**{name: value for name, value in vars(namespace).items() if name in fields})


def _emit(cmd: Command, data: dict, text: str):
    if cmd.format == "structured":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _load(cmd: Command) -> LoadedSpec:
    loaded = load_spec(cmd.spec_path)
    loaded.measure.validate().raise_if_invalid()
    logger.info("loaded %s: graph %s", cmd.spec_path, loaded.measure.graph)
    return loaded


def _query(cmd: Command, loaded: LoadedSpec) -> DefectQuery:
    k = cmd.k if cmd.k is not None else loaded.k
    m = cmd.m if cmd.m is not None else loaded.m
    if k is None or m is None:
        missing = " and ".join(name for name, value in (("k", k), ("m", m)) if value is None)
        raise SpecParseError(f"{missing} given neither on the command line nor in the spec file")
    return DefectQuery(k, m)


def _weight(cmd: Command, loaded: LoadedSpec):
    if not cmd.weighted:
        return None
    if loaded.weight is None:
        raise SpecParseError("--weighted needs a weight in the spec file")
    return loaded.weight


def _classify(cmd: Command) -> int:
    loaded = _load(cmd)
    q = _query(cmd, loaded)
    report = classify(
        loaded.measure, q, _weight(cmd, loaded), strict=cmd.strict, check_oracle=cmd.check_oracle
    )
    _emit(cmd, report.to_dict(), report.to_text())
    return EXIT_OK


def _compute(cmd: Command) -> int:
    loaded = _load(cmd)
    v = Vertex.parse(cmd.vertex)
    if cmd.quantity == "h":
        value = h(loaded.measure, v, cmd.p)
    elif loaded.weight is None:
        raise SpecParseError(f"--quantity {cmd.quantity} needs a weight in the spec file")
    else:
        quantity = F if cmd.quantity == "F" else wgram
        value = quantity(loaded.measure, loaded.weight, v, cmd.p)
    data = {"quantity": cmd.quantity, "vertex": str(v), "p": cmd.p, "value": format_rational(value)}
    _emit(cmd, data, f"{cmd.quantity}_{cmd.p}({v}) = {format_rational(value)}")
    return EXIT_OK


def _comparison_output(comparison: OracleComparison) -> tuple[dict, list[str]]:
    rows = comparison.to_table(to_list=True)[1:]
    data = {
        "depth": comparison.depth,
        "agrees": comparison.agrees,
        "window_verdict": comparison.window_verdict,
        "rows": [{"vertex": v, "closed_form": closed, "oracle": oracle} for v, closed, oracle in rows],
    }
    lines = [
        f"window depth: {comparison.depth}",
        f"agrees: {str(comparison.agrees).lower()}",
        f"all defects zero: {str(comparison.window_verdict).lower()}",
    ]
    lines.extend(f"  {v}  {closed}  {oracle}" for v, closed, oracle in rows)
    return data, lines


def _oracle(cmd: Command) -> int:
    loaded = _load(cmd)
    q = _query(cmd, loaded)
    comparison = compare_with_oracle(loaded.measure, q, _weight(cmd, loaded), cmd.depth)
    data, lines = _comparison_output(comparison)
    _emit(cmd, {"k": q.k, "m": q.m, **data}, "\n".join(lines))
    if not comparison.agrees:
        logger.error("closed form and oracle disagree at %s", comparison.disagreements())
        return EXIT_INVARIANT
    return EXIT_OK


def _example(cmd: Command) -> int:
    example = EXAMPLES[cmd.example]
    loaded = LoadedSpec(example.measure, example.weight, example.k, example.m)
    if cmd.dump:
        print(dump_spec(loaded))
        return EXIT_OK
    query = DefectQuery(example.k, example.m)
    report = classify(
        example.measure,
        query,
        example.weight,
        strict=example.m >= 2,
        check_oracle=cmd.check_oracle,
    )
    matches = report.verdict == example.claimed_verdict
    if not matches:
        logger.warning(
            "example %s: claimed %s, computed %s",
            example.name, example.claimed_verdict, report.verdict,
        )
    data = {
        "example": example.name,
        "claim": example.claim,
        "claimed_verdict": example.claimed_verdict,
        "computed_verdict": report.verdict,
        "matches_claim": matches,
        "spec": json.loads(dump_spec(loaded)),
        "report": report.to_dict(),
    }
    lines = [
        f"example: {example.name}",
        f"claim: {example.claim}",
        dump_spec(loaded),
        f"claimed verdict: {str(example.claimed_verdict).lower()}",
        f"computed verdict: {str(report.verdict).lower()}",
    ]
    if not matches:
        discrepancy = "the computed verdict differs from the claim"
        if example.remark:
            discrepancy += f": {example.remark}"
        data["discrepancy"] = discrepancy
        lines.append(f"discrepancy: {discrepancy}")
    lines.append(report.to_text())
    if cmd.check_oracle:
        comparison = compare_with_oracle(example.measure, query, example.weight)
        data["oracle"], oracle_lines = _comparison_output(comparison)
        lines.extend(oracle_lines)
    _emit(cmd, data, "\n".join(lines))
    return EXIT_OK


def _validate(cmd: Command) -> int:
    report = load_spec(cmd.spec_path).measure.validate()
    _emit(cmd, report.to_dict(), report.to_text())
    return EXIT_OK if report.valid else EXIT_INVALID


_ACTIONS = {
    "classify": _classify,
    "compute": _compute,
    "oracle": _oracle,
    "example": _example,
    "validate": _validate,
}


def run(cmd: Command) -> int:
    """Runs a parsed command and returns its exit status."""
    try:
        return _ACTIONS[cmd.action](cmd)
    except SpecValidationError as error:
        logger.error("invalid spec: %s", error)
        return EXIT_INVALID
    except (SpecParseError, DomainError) as error:
        logger.error("%s", error)
        return EXIT_PARSE
    except InvariantViolation as error:
        logger.error("internal check failed: %s", error)
        return EXIT_INVARIANT


def main(argv: Optional[Sequence[str]] = None) -> int:
    cmd = parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(cmd.verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )
    return run(cmd)


if __name__ == "__main__":
    sys.exit(main())
