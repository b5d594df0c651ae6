"""Command-line front end: table / solve / enumerate / certify / verify / lawcheck.

Usage shape:

    pairbound <command> [--op add|radd|mul|lexadd] [--dim K]
              [--direction upper|lower] [--bound N]
              [--input PATH | --values v1,v2,...] [--witness "(i,j)(k,l)..."]
              [--format markdown|json|plain] [--cap N] [--seed S] [--cert PATH]

Exit codes: 0 success; 1 verification or law-check failure; 2 parse or
configuration failure; 3 precondition violation (infeasible witness,
exhaustive cap exceeded); 4 theorem-violation diagnostic (with state dump).

Inputs come inline (``--values``), from CSV (one element per cell,
row-major; quote vector cells) or from bracketed-array lines (one dataset
per line, first line used unless ``--all``). The env var PAIRBOUND_CAP
overrides the default exhaustive cap of 8 when ``--cap`` is absent.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .bounding import (
    DEFAULT_EXHAUSTIVE_CAP,
    BoundingInstance,
    Certificate,
    Direction,
    exchange_transform,
    feasible,
    optimality_report,
    verify_certificate,
)
from .errors import (
    CapExceededError,
    CarrierMismatchError,
    CertificateFormatError,
    DomainError,
    ElementParseError,
    InfeasibleWitnessError,
    IngestError,
    MatchingError,
    TheoremViolationError,
)
from .matching import (
    Matching,
    SortedInput,
    count_matchings,
    enumerate_matchings,
    evaluate,
    sort_input,
    symmetric_matching,
)
from .semigroup import Carrier, Element, carrier_from_token, run_law_samples

EXIT_OK = 0
EXIT_VERIFY_FAILURE = 1
EXIT_PARSE_FAILURE = 2
EXIT_PRECONDITION = 3
EXIT_THEOREM_VIOLATION = 4

CAP_ENV_VAR = "PAIRBOUND_CAP"

_FORMATS = ("markdown", "json", "plain")


@dataclass
class RunConfig:
    """Everything one invocation needs; built from argv by :func:`main`."""

    command: str
    op: str = "add"
    dim: int | None = None
    direction: str = "upper"
    bound: str | None = None
    values: str | None = None
    input_path: str | None = None
    all_lines: bool = False
    witness: str | None = None
    output_format: str = "markdown"
    cap: int | None = None
    seed: int = 0
    cert_path: str | None = None


# -- ingestion ---------------------------------------------------------------


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not nested inside parentheses."""
    parts = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(depth - 1, 0)
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def _strip_quotes(token: str) -> str:
    token = token.strip()
    if len(token) >= 2 and token[0] == token[-1] and token[0] in "\"'":
        return token[1:-1].strip()
    return token


def parse_values(text: str, carrier: Carrier, line: int = 1) -> list[Element]:
    """Parse an inline comma-separated element list (vector-literal aware)."""
    elements = []
    for column, token in enumerate(_split_top_level(text), start=1):
        token = _strip_quotes(token)
        if not token:
            raise IngestError("empty element literal", line=line, column=column)
        try:
            elements.append(carrier.parse(token))
        except (ElementParseError, DomainError) as exc:
            raise IngestError(str(exc), line=line, column=column) from exc
    return elements


def _check_even(elements: list[Element], line: int | None = None) -> list[Element]:
    if not elements:
        raise IngestError("dataset is empty", line=line)
    if len(elements) % 2:
        raise IngestError(f"dataset has odd element count ({len(elements)})", line=line)
    return elements


def _ingest_csv(path: Path, carrier: Carrier) -> list[list[Element]]:
    elements = []
    with path.open(newline="") as handle:
        for line_number, row in enumerate(csv.reader(handle), start=1):
            for column, cell in enumerate(row, start=1):
                cell = _strip_quotes(cell)
                if not cell:
                    continue
                try:
                    elements.append(carrier.parse(cell))
                except (ElementParseError, DomainError) as exc:
                    raise IngestError(str(exc), line=line_number, column=column) from exc
    return [_check_even(elements)]


def _ingest_lines(path: Path, carrier: Carrier, all_lines: bool) -> list[list[Element]]:
    datasets = []
    with path.open() as handle:
        for line_number, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if not (stripped.startswith("[") and stripped.endswith("]")):
                raise IngestError("line is not a bracketed element array", line=line_number)
            inner = stripped[1:-1].strip()
            if not inner:
                raise IngestError("dataset is empty", line=line_number)
            datasets.append(
                _check_even(parse_values(inner, carrier, line=line_number), line=line_number)
            )
            if not all_lines:
                break
    if not datasets:
        raise IngestError("no datasets found in file")
    return datasets


def ingest_datasets(
    source: str | Path, carrier: Carrier, all_lines: bool = False
) -> list[list[Element]]:
    """Read one or more datasets from a CSV or bracketed-lines file."""
    path = Path(source)
    if not path.exists():
        raise IngestError(f"input file not found: {path}")
    suffix = path.suffix.lower()
    if suffix in (".jsonl", ".ndjson", ".json"):
        return _ingest_lines(path, carrier, all_lines)
    if suffix == ".csv":
        return _ingest_csv(path, carrier)
    with path.open() as handle:
        head = handle.read(1024).lstrip()
    if head.startswith("["):
        return _ingest_lines(path, carrier, all_lines)
    return _ingest_csv(path, carrier)


def ingest(source: str | Path, carrier: Carrier) -> list[Element]:
    """The single-dataset view of :func:`ingest_datasets` (first dataset)."""
    return ingest_datasets(source, carrier, all_lines=False)[0]


# -- shared pieces -----------------------------------------------------------


def _carrier(config: RunConfig) -> Carrier:
    return carrier_from_token(config.op, config.dim)


def _resolve_cap(config: RunConfig) -> int:
    if config.cap is not None:
        return config.cap
    raw = os.environ.get(CAP_ENV_VAR)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise IngestError(f"{CAP_ENV_VAR} is not an integer: {raw!r}") from None
    return DEFAULT_EXHAUSTIVE_CAP


def _datasets(config: RunConfig, carrier: Carrier) -> list[list[Element]]:
    if config.values is not None and config.input_path is not None:
        raise IngestError("give either --values or --input, not both")
    if config.values is not None:
        return [_check_even(parse_values(config.values, carrier))]
    if config.input_path is not None:
        return ingest_datasets(config.input_path, carrier, all_lines=config.all_lines)
    raise IngestError("no input given; use --values or --input")


def _carrier_doc(carrier: Carrier) -> dict:
    doc: dict = {"op": carrier.token}
    if carrier.dim is not None:
        doc["dim"] = carrier.dim
    return doc


def _join_documents(documents: list[str], output_format: str) -> str:
    if output_format == "json":
        return "\n".join(documents)
    return "\n\n".join(documents)


def _direction(config: RunConfig) -> Direction:
    if config.direction == "upper":
        return Direction.UPPER_STRICT
    if config.direction == "lower":
        return Direction.LOWER_STRICT
    raise IngestError(f"unknown direction {config.direction!r}")


def _forbid(config: RunConfig, **fields) -> None:
    for name, value in fields.items():
        if value is not None:
            raise IngestError(f"--{name} is not valid for '{config.command}'")


# -- table -------------------------------------------------------------------


def _table_document(input: SortedInput, output_format: str) -> str:
    carrier = input.carrier
    symbol = carrier.operation_symbol
    heading = "(sum)" if carrier.is_additive else "(product)"
    symmetric = symmetric_matching(input.n)
    rows = []
    for position, matching in enumerate(enumerate_matchings(input.n), start=1):
        row = evaluate(matching, input)
        label = f"1_{input.n}({position})"
        if matching == symmetric:
            label = f"(#){label}"
        expressions = [
            f"{input.element(i)} {symbol} {input.element(j)} = {value}"
            for (i, j), value in zip(matching.pairs, row.pair_values)
        ]
        rows.append((label, matching, expressions, row))

    if output_format == "json":
        payload = {
            "carrier": _carrier_doc(carrier),
            "elements": [element.text() for element in input.elements],
            "count": len(rows),
            "rows": [
                {
                    "label": label,
                    "symmetric": matching == symmetric,
                    "matching": str(matching),
                    "expressions": expressions,
                    "values": [value.text() for value in row.pair_values],
                    "max": row.max_value.text(),
                    "min": row.min_value.text(),
                }
                for label, matching, expressions, row in rows
            ],
        }
        return json.dumps(payload)

    header = [heading] + [""] * input.n + ["Max", "Min"]
    body = [
        [label, *expressions, row.max_value.text(), row.min_value.text()]
        for label, _, expressions, row in rows
    ]
    if output_format == "markdown":
        lines = ["| " + " | ".join(header) + " |"]
        lines.append("|" + "---|" * len(header))
        lines += ["| " + " | ".join(cells) + " |" for cells in body]
        return "\n".join(lines)
    # plain: fixed-width columns
    table = [header] + body
    widths = [max(len(line[col]) for line in table) for col in range(len(header))]
    return "\n".join(
        "  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip()
        for line in table
    )


def _run_table(config: RunConfig) -> tuple[int, str]:
    _forbid(config, bound=config.bound, witness=config.witness)
    carrier = _carrier(config)
    cap = _resolve_cap(config)
    documents = []
    for dataset in _datasets(config, carrier):
        input = sort_input(dataset)
        if input.n > cap:
            raise CapExceededError(f"n={input.n} exceeds the exhaustive cap {cap}")
        documents.append(_table_document(input, config.output_format))
    return EXIT_OK, _join_documents(documents, config.output_format)


# -- solve -------------------------------------------------------------------


def _solve_document(
    input: SortedInput, config: RunConfig, cap: int
) -> str:
    report = optimality_report(input, cap=cap)
    symmetric_row = report.symmetric
    feasibility = None
    if config.bound is not None:
        direction = _direction(config)
        bound = input.carrier.parse(config.bound)
        inst = BoundingInstance(input=input, bound=bound, direction=direction)
        feasibility = {
            "direction": direction.token,
            "bound": bound.text(),
            "symmetric_feasible": feasible(symmetric_row.matching, inst),
        }

    if config.output_format == "json":
        payload = {
            "carrier": _carrier_doc(input.carrier),
            "elements": [element.text() for element in input.elements],
            "symmetric": str(symmetric_row.matching),
            "pair_values": [value.text() for value in symmetric_row.pair_values],
            "max": symmetric_row.max_value.text(),
            "min": symmetric_row.min_value.text(),
            "minimax": {
                "matching": str(report.minimax_matching),
                "value": report.minimax_value.text(),
            },
            "maximin": {
                "matching": str(report.maximin_matching),
                "value": report.maximin_value.text(),
            },
            "matchings_scanned": report.matchings_scanned,
            "optimal": report.passed,
        }
        if feasibility is not None:
            payload["feasibility"] = feasibility
        return json.dumps(payload)

    lines = [
        f"elements: {', '.join(e.text() for e in input.elements)} ({input.carrier.describe()})",
        f"symmetric matching: {symmetric_row.matching}",
        f"pair values: {', '.join(v.text() for v in symmetric_row.pair_values)}",
        f"max: {symmetric_row.max_value}",
        f"min: {symmetric_row.min_value}",
        f"oracle minimax: {report.minimax_value} at {report.minimax_matching}",
        f"oracle maximin: {report.maximin_value} at {report.maximin_matching}",
        f"matchings scanned: {report.matchings_scanned}",
        f"optimal: {'PASS' if report.passed else 'FAIL'}",
    ]
    if feasibility is not None:
        verdict = "feasible" if feasibility["symmetric_feasible"] else "NOT feasible"
        lines.append(
            f"feasibility ({feasibility['direction']}, bound {feasibility['bound']}): "
            f"symmetric matching {verdict}"
        )
    return "\n".join(lines)


def _run_solve(config: RunConfig) -> tuple[int, str]:
    _forbid(config, witness=config.witness)
    carrier = _carrier(config)
    cap = _resolve_cap(config)
    documents = [
        _solve_document(sort_input(dataset), config, cap)
        for dataset in _datasets(config, carrier)
    ]
    return EXIT_OK, _join_documents(documents, config.output_format)


# -- enumerate ---------------------------------------------------------------


def _run_enumerate(config: RunConfig) -> tuple[int, str]:
    _forbid(config, bound=config.bound, witness=config.witness)
    carrier = _carrier(config)
    cap = _resolve_cap(config)
    documents = []
    for dataset in _datasets(config, carrier):
        n = len(dataset) // 2
        if n > cap:
            raise CapExceededError(f"n={n} exceeds the exhaustive cap {cap}")
        matchings = [str(m) for m in enumerate_matchings(n)]
        if config.output_format == "json":
            documents.append(
                json.dumps({"n": n, "count": count_matchings(n), "matchings": matchings})
            )
        else:
            documents.append("\n".join(matchings))
    return EXIT_OK, _join_documents(documents, config.output_format)


# -- certify / verify --------------------------------------------------------


def _run_certify(config: RunConfig) -> tuple[int, str]:
    if config.bound is None:
        raise IngestError("certify needs --bound")
    if config.witness is None:
        raise IngestError("certify needs --witness")
    carrier = _carrier(config)
    dataset = _datasets(config, carrier)[0]
    input = sort_input(dataset)
    inst = BoundingInstance(
        input=input,
        bound=carrier.parse(config.bound),
        direction=_direction(config),
    )
    witness = Matching.parse(config.witness)
    certificate = exchange_transform(witness, inst)
    if config.cert_path:
        Path(config.cert_path).write_text(certificate.to_json())
        if config.output_format == "json":
            summary = json.dumps(
                {"path": config.cert_path, "steps": len(certificate.steps)}
            )
        else:
            summary = (
                f"certificate written: {config.cert_path} "
                f"({len(certificate.steps)} steps)"
            )
        return EXIT_OK, summary
    return EXIT_OK, certificate.to_json().rstrip("\n")


def _run_verify(config: RunConfig) -> tuple[int, str]:
    if not config.cert_path:
        raise IngestError("verify needs --cert")
    path = Path(config.cert_path)
    if not path.exists():
        raise IngestError(f"certificate file not found: {path}")
    try:
        document = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise IngestError(f"certificate file is not JSON: {exc}") from exc
    result = verify_certificate(document)
    if config.output_format == "json":
        payload: dict = {"ok": result.ok, "steps_checked": result.steps_checked}
        if result.reason:
            payload["reason"] = result.reason
        text = json.dumps(payload)
    elif result.ok:
        text = f"certificate OK ({result.steps_checked} steps checked)"
    else:
        text = f"certificate INVALID: {result.reason}"
    return (EXIT_OK if result.ok else EXIT_VERIFY_FAILURE), text


# -- lawcheck ----------------------------------------------------------------

LAWCHECK_SAMPLES = 1000


def _run_lawcheck(config: RunConfig) -> tuple[int, str]:
    carrier = _carrier(config)
    report = run_law_samples(carrier, samples=LAWCHECK_SAMPLES, seed=config.seed)
    if config.output_format == "json":
        text = json.dumps(
            {
                "carrier": _carrier_doc(carrier),
                "samples": report.samples,
                "seed": report.seed,
                "violations": {
                    "monotonicity": report.monotonicity_violations,
                    "commutativity": report.commutativity_violations,
                    "associativity": report.associativity_violations,
                    "total_order": report.order_violations,
                },
                "ok": report.ok,
            }
        )
    else:
        text = "\n".join(
            [
                f"carrier: {carrier.describe()}",
                f"samples: {report.samples} (seed {report.seed})",
                f"monotonicity violations: {report.monotonicity_violations}",
                f"commutativity violations: {report.commutativity_violations}",
                f"associativity violations: {report.associativity_violations}",
                f"total-order violations: {report.order_violations}",
                f"result: {'PASS' if report.ok else 'FAIL'}",
            ]
        )
    return (EXIT_OK if report.ok else EXIT_VERIFY_FAILURE), text


_HANDLERS = {
    "table": _run_table,
    "solve": _run_solve,
    "enumerate": _run_enumerate,
    "certify": _run_certify,
    "verify": _run_verify,
    "lawcheck": _run_lawcheck,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, emitted document)."""
    handler = _HANDLERS.get(config.command)
    if handler is None:
        return EXIT_PARSE_FAILURE, f"error: unknown command {config.command!r}"
    if config.output_format not in _FORMATS:
        return EXIT_PARSE_FAILURE, f"error: unknown format {config.output_format!r}"
    try:
        return handler(config)
    except (
        ElementParseError,
        MatchingError,
        IngestError,
        DomainError,
        CarrierMismatchError,
        CertificateFormatError,
    ) as exc:
        return EXIT_PARSE_FAILURE, f"error: {exc}"
    except (InfeasibleWitnessError, CapExceededError) as exc:
        return EXIT_PRECONDITION, f"error: {exc}"
    except TheoremViolationError as exc:
        return EXIT_THEOREM_VIOLATION, f"theorem violation: {exc}"


# -- argv plumbing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairbound",
        description="Pairing bounds in totally ordered commutative semigroups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_carrier(p):
        p.add_argument("--op", choices=["add", "radd", "mul", "lexadd"], default="add")
        p.add_argument("--dim", type=int, default=None, help="vector dimension (lexadd)")

    def add_dataset(p, all_flag=True):
        p.add_argument("--values", default=None, help="inline comma-separated elements")
        p.add_argument("--input", dest="input_path", default=None, help="CSV or bracketed-lines file")
        if all_flag:
            p.add_argument("--all", dest="all_lines", action="store_true",
                           help="process every line of a bracketed-lines file")

    def add_format(p):
        p.add_argument("--format", dest="output_format", choices=list(_FORMATS),
                       default="markdown")

    def add_cap(p):
        p.add_argument("--cap", type=int, default=None,
                       help=f"exhaustive-scan cap (default {DEFAULT_EXHAUSTIVE_CAP}, "
                            f"env {CAP_ENV_VAR})")

    def add_direction_bound(p, bound_required):
        p.add_argument("--direction", choices=["upper", "lower"], default="upper")
        p.add_argument("--bound", default=None, required=bound_required,
                       help="bound N in the carrier's textual form")

    p_table = sub.add_parser("table", help="emit the full evaluation table")
    add_carrier(p_table); add_dataset(p_table); add_format(p_table); add_cap(p_table)

    p_solve = sub.add_parser("solve", help="symmetric matching, extrema, oracle verdict")
    add_carrier(p_solve); add_dataset(p_solve); add_format(p_solve); add_cap(p_solve)
    add_direction_bound(p_solve, bound_required=False)

    p_enum = sub.add_parser("enumerate", help="stream canonical matchings")
    add_carrier(p_enum); add_dataset(p_enum); add_format(p_enum); add_cap(p_enum)

    p_cert = sub.add_parser("certify", help="transform a feasible witness into a certificate")
    add_carrier(p_cert); add_dataset(p_cert, all_flag=False); add_format(p_cert)
    add_direction_bound(p_cert, bound_required=True)
    p_cert.add_argument("--witness", required=True, help='matching literal "(i,j)(k,l)..."')
    p_cert.add_argument("--cert", dest="cert_path", default=None,
                        help="write the certificate to this path")

    p_verify = sub.add_parser("verify", help="re-check a certificate file")
    add_format(p_verify)
    p_verify.add_argument("--cert", dest="cert_path", required=True)

    p_law = sub.add_parser("lawcheck", help="sample the carrier laws")
    add_carrier(p_law); add_format(p_law)
    p_law.add_argument("--seed", type=int, default=0)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command)
    for field in (
        "op", "dim", "direction", "bound", "values", "input_path",
        "all_lines", "witness", "output_format", "cap", "seed", "cert_path",
    ):
        if hasattr(args, field):
            setattr(config, field, getattr(args, field))
    return config


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    status, document = run(config_from_args(args))
    if document:
        print(document, file=sys.stdout if status == EXIT_OK else sys.stderr)
    return status


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
