"""Command line entry point.

Exit codes: 0 on success, 1 on bad input or a configured limit being hit,
2 when the oracle contradicts a classifier guarantee or an internal error
occurs.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .classifier import classify
from .completeness import entailment_evidence
from .errors import ComplroverError
from .evaluator import eval_query
from .oracle import DEFAULT_CANDIDATE_CAP, DEFAULT_FRESH_CONSTANTS, Universe, bounded_answers
from .parsing import parse_ntriples, parse_query, parse_statement, parse_statements
from .query import check_consistency
from .report import answers_json, classification_json, dumps, evidence_json, oracle_json, render_text

log = logging.getLogger("complrover")

MAX_CANDIDATE_CAP = 24
SUBCOMMANDS = ("eval", "classify", "entails", "oracle")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


@dataclass(frozen=True)
class WorkspaceConfig:
    graph_path: Path | None
    query_path: Path
    statements_path: Path | None = None
    fresh_constants: int = DEFAULT_FRESH_CONSTANTS
    candidate_cap: int = DEFAULT_CANDIDATE_CAP
    output_format: str = "json"

    def __post_init__(self):
        if self.fresh_constants < 0:
            raise ComplroverError("--fresh-constants must be non-negative")
        if not 1 <= self.candidate_cap <= MAX_CANDIDATE_CAP:
            raise ComplroverError(f"--candidate-cap must be between 1 and {MAX_CANDIDATE_CAP}")
        if self.output_format not in ("json", "text"):
            raise ComplroverError("--format must be json or text")


def _read(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except OSError as exc:
        raise ComplroverError(f"cannot read {path}: {exc.strerror}") from None


def _text(path: Path) -> str:
    try:
        return _read(path).decode("utf-8")
    except UnicodeDecodeError:
        raise ComplroverError(f"{path}: input is not UTF-8") from None


def _load_statements(config: WorkspaceConfig):
    if config.statements_path is None:
        return frozenset()
    return parse_statements(_text(config.statements_path), str(config.statements_path))


def run(config: WorkspaceConfig, subcommand: str) -> tuple[dict, int]:
    """Execute one subcommand and return the report document and exit code.

    Input problems raise :class:`ComplroverError`; callers map them to exit 1.
    """
    if subcommand not in SUBCOMMANDS:
        raise ComplroverError(f"unknown subcommand {subcommand!r}")
    cs = _load_statements(config)

    if subcommand == "entails":
        target = parse_statement(_text(config.query_path), str(config.query_path))
        doc = evidence_json(entailment_evidence(cs, target))
        doc["statements"] = sorted(str(c) for c in cs)
        doc["diagnostics"] = []
        return doc, EXIT_OK

    if config.graph_path is None:
        raise ComplroverError(f"{subcommand} needs --graph")
    g = parse_ntriples(_read(config.graph_path), str(config.graph_path))
    q = parse_query(_text(config.query_path), str(config.query_path))
    diagnostics = []
    if not check_consistency(q):
        diagnostics.append(
            "query is possibly inconsistent: a NOT EXISTS part matches the frozen positive part"
        )
    answers = eval_query(q, g)
    doc = {
        "command": subcommand,
        "query": str(q),
        "variables": sorted(q.distinguished),
        "solutions": answers_json(answers),
        "classification": None,
        "oracle_summary": None,
        "diagnostics": diagnostics,
    }
    if subcommand == "eval":
        return doc, EXIT_OK

    cls = classify(q, cs)
    doc["classification"] = classification_json(cls)
    if subcommand == "classify":
        return doc, EXIT_OK

    u = Universe.build(g, cs, q, fresh_constants=config.fresh_constants)
    bounded = bounded_answers(q, g, cs, u, cap=config.candidate_cap)
    returned = answers.solutions
    checks = [
        {"guarantee": "certain subset of returned", "holds": bounded.certain.solutions <= returned},
        {"guarantee": "returned subset of possible", "holds": returned <= bounded.possible.solutions},
    ]
    if cls.certain_guarantee:
        checks.append({"guarantee": "returned answers are certain", "holds": returned <= bounded.certain.solutions})
    if cls.possible_bound_guarantee:
        checks.append({"guarantee": "no possible answer beyond returned", "holds": bounded.possible.solutions <= returned})
    doc["oracle_summary"] = oracle_json(bounded, u, config.candidate_cap, checks)
    failed = [c["guarantee"] for c in checks if not c["holds"]]
    if failed:
        diagnostics.append("oracle contradicts: " + "; ".join(failed))
        return doc, EXIT_INTERNAL
    return doc, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="complrover",
        description="Evaluate SPARQL with NOT EXISTS over RDF and relate the results "
        "to certain and possible answers using completeness statements.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "eval": "evaluate the query over the graph",
        "classify": "evaluate and classify answers via crucial statements",
        "entails": "check whether the statements entail the statement in --query",
        "oracle": "classify and cross-check against bounded brute-force answers",
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--graph", type=Path, required=name != "entails", help="N-Triples file")
        p.add_argument("--query", type=Path, required=True,
                       help="query file (for entails: a single COMPLETE statement)")
        p.add_argument("--statements", type=Path, help="completeness statements file")
        p.add_argument("--fresh-constants", type=int, default=DEFAULT_FRESH_CONSTANTS)
        p.add_argument("--candidate-cap", type=int, default=DEFAULT_CANDIDATE_CAP)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        config = WorkspaceConfig(
            graph_path=args.graph,
            query_path=args.query,
            statements_path=args.statements,
            fresh_constants=args.fresh_constants,
            candidate_cap=args.candidate_cap,
            output_format=args.format,
        )
        doc, code = run(config, args.command)
    except ComplroverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL
    for d in doc.get("diagnostics", []):
        print(f"warning: {d}", file=sys.stderr)
    out = dumps(doc) if config.output_format == "json" else render_text(doc)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
