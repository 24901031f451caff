"""Command-line interface: decide, witness, classify, oracle, self-check, verify
and the graph tools aut, canon and complement.

Run from the repository root as ``python app/cli.py <command> ...``. Logs go
to stderr so stdout is byte-identical between identical invocations.
"""

import argparse
import json
import logging
import sys
from enum import IntEnum
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from constants import DEFAULT_GROUP_CAP, DEFAULT_ORACLE_MAX_CANDIDATES, DEFAULT_SEARCH_BUDGET
from utils.autgraph import aut_order, canonical_certificate, edge_orbits, is_edge_transitive
from utils.bigraph import complement, parse, serialize, to_dot
from utils.certificates import Outcome, Verdict, outcome_counts, verdict_table, verdict_witness, verify_verdict
from utils.config import DeciderConfig
from utils.decider import classify, decide
from utils.errors import CertificateError, TripleError
from utils.oracle import OracleBudget, OracleOutcome, oracle_decide
from utils.selfcheck import CHECKS, run_checks
from utils.triple import Triple

# Set up logger
logger = logging.getLogger(__name__)


class ExitStatus(IntEnum):
    DECIDED = 0
    USAGE = 1
    UNKNOWN = 2
    EXCEEDED = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; 2 means Unknown here."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ExitStatus.USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def config_from_args(args: argparse.Namespace) -> DeciderConfig:
    return DeciderConfig(
        group_cap=args.group_cap,
        search_budget=args.search_budget,
        oracle_max_candidates=args.oracle_max_candidates,
        oracle_enabled=not args.no_oracle,
    )


def _verdict_status(verdict: Verdict) -> ExitStatus:
    if verdict.outcome is not Outcome.UNKNOWN:
        return ExitStatus.DECIDED
    if verdict.reason == "oracle_budget_exceeded":
        return ExitStatus.EXCEEDED
    return ExitStatus.UNKNOWN


def _print_verdict(verdict: Verdict) -> None:
    a, b, c = verdict.triple
    print(f"({a}, {b}, {c}): {verdict.outcome.value}")
    if verdict.certificate is not None:
        print(f"  certificate: {verdict.certificate.summary()}")
    if verdict.reason is not None:
        print(f"  reason: {verdict.reason}")
    if verdict.stats is not None:
        s = verdict.stats
        print(
            f"  oracle: {s.graphs_generated} generated, {s.graphs_after_dedup} classes, "
            f"{s.nodes_explored} nodes"
        )


def cmd_decide(args: argparse.Namespace) -> ExitStatus:
    verdict = decide(Triple.of(args.a, args.b, args.c), config_from_args(args))
    if args.json:
        print(verdict.model_dump_json(indent=2))
    else:
        _print_verdict(verdict)
    return _verdict_status(verdict)


def cmd_witness(args: argparse.Namespace) -> ExitStatus:
    config = config_from_args(args)
    verdict = decide(Triple.of(args.a, args.b, args.c), config)
    if verdict.outcome is not Outcome.REALIZABLE:
        print(f"{verdict.triple} is {verdict.outcome.value}; there is no witness", file=sys.stderr)
        return ExitStatus.USAGE
    graph = verdict_witness(verdict, config.group_cap)
    if not is_edge_transitive(graph, config.search_budget):
        raise CertificateError(f"witness for {verdict.triple} failed edge-transitivity")
    if args.out:
        Path(args.out).write_text(serialize(graph))
        logger.info(f"Wrote {graph.edge_count}-edge witness to {args.out}")
    if args.dot:
        Path(args.dot).write_text(to_dot(graph))
        logger.info(f"Wrote DOT witness to {args.dot}")
    if not args.out and not args.dot:
        sys.stdout.write(serialize(graph))
    return ExitStatus.DECIDED


def cmd_classify(args: argparse.Namespace) -> ExitStatus:
    verdicts = classify(args.a_max, args.b_max, config_from_args(args), jobs=args.jobs)
    counts = outcome_counts(verdicts)
    if args.json:
        rows = [v.model_dump(mode="json") for v in verdicts]
        print(json.dumps({"rows": rows, "counts": counts}, indent=2))
    else:
        print(verdict_table(verdicts).to_string(index=False))
        print(", ".join(f"{name}: {count}" for name, count in counts.items()))
    return ExitStatus.DECIDED


def cmd_oracle(args: argparse.Namespace) -> ExitStatus:
    budget = OracleBudget(max_candidates=args.oracle_max_candidates, max_nodes=args.search_budget)
    result = oracle_decide(args.a, args.b, args.c, budget=budget)
    if args.json:
        payload = {
            "triple": [args.a, args.b, args.c],
            "outcome": result.outcome.value,
            "stats": result.stats.model_dump(),
            "witness": serialize(result.witness) if result.witness else None,
        }
        print(json.dumps(payload, indent=2))
    else:
        s = result.stats
        print(f"({args.a}, {args.b}, {args.c}): {result.outcome.value}")
        print(
            f"  {s.graphs_generated} generated, {s.graphs_after_dedup} classes, "
            f"{s.nodes_explored} nodes"
        )
        if result.witness is not None:
            sys.stdout.write(serialize(result.witness))
    if result.outcome is OracleOutcome.EXCEEDED:
        return ExitStatus.EXCEEDED
    return ExitStatus.DECIDED


def cmd_self_check(args: argparse.Namespace) -> ExitStatus:
    results = run_checks(args.only, config_from_args(args))
    if args.json:
        print(json.dumps([r.model_dump() for r in results], indent=2))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.name}" + (f": {r.detail}" if r.detail else ""))
    return ExitStatus.DECIDED if all(r.passed for r in results) else ExitStatus.USAGE


def cmd_verify(args: argparse.Namespace) -> ExitStatus:
    verdict = Verdict.model_validate_json(Path(args.file).read_text())
    verify_verdict(verdict, config_from_args(args))
    print(f"{tuple(verdict.triple)}: {verdict.outcome.value} verified")
    return ExitStatus.DECIDED


def cmd_aut(args: argparse.Namespace) -> ExitStatus:
    graph = parse(Path(args.file).read_text())
    order = aut_order(graph, args.search_budget, args.group_cap)
    orbits = len(edge_orbits(graph, args.search_budget))
    if args.json:
        print(json.dumps({"aut_order": order, "edge_orbits": orbits}))
    else:
        print(f"aut order: {order}")
        print(f"edge orbits: {orbits}")
    return ExitStatus.DECIDED


def cmd_canon(args: argparse.Namespace) -> ExitStatus:
    graph = parse(Path(args.file).read_text())
    digest = canonical_certificate(graph, args.search_budget).digest()
    print(json.dumps({"digest": digest}) if args.json else digest)
    return ExitStatus.DECIDED


def cmd_complement(args: argparse.Namespace) -> ExitStatus:
    text = serialize(complement(parse(Path(args.file).read_text())))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return ExitStatus.DECIDED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output.")
    common.add_argument(
        "--oracle-max-candidates",
        type=_positive,
        default=DEFAULT_ORACLE_MAX_CANDIDATES,
        help="Graphs the oracle may generate before giving up.",
    )
    common.add_argument("--no-oracle", action="store_true", help="Never fall back to the oracle.")
    common.add_argument(
        "--search-budget",
        type=_positive,
        default=DEFAULT_SEARCH_BUDGET,
        help="Search nodes allowed per automorphism or oracle search.",
    )
    common.add_argument(
        "--group-cap",
        type=_positive,
        default=DEFAULT_GROUP_CAP,
        help="Largest explicit group or subspace family built.",
    )
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug.")

    parser = _Parser(description="Decide which triples (a, b, c) are index-realizable.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def triple_command(name: str, summary: str):
        sub = subparsers.add_parser(name, help=summary, parents=[common])
        sub.add_argument("a", type=_positive)
        sub.add_argument("b", type=_positive)
        sub.add_argument("c", type=_positive)
        return sub

    triple_command("decide", "Decide one triple.").set_defaults(handler=cmd_decide)

    witness = triple_command("witness", "Write an edge-transitive witness graph.")
    witness.add_argument("--out", help="Write the witness in bigraph format.")
    witness.add_argument("--dot", help="Write the witness as DOT.")
    witness.set_defaults(handler=cmd_witness)

    triple_command("oracle", "Run the exhaustive oracle directly.").set_defaults(handler=cmd_oracle)

    classify_parser = subparsers.add_parser("classify", help="Decide every triple in a box.", parents=[common])
    classify_parser.add_argument("--a-max", type=_positive, default=10)
    classify_parser.add_argument("--b-max", type=_positive, default=10)
    classify_parser.add_argument("--jobs", type=_positive, default=1, help="Worker processes.")
    classify_parser.set_defaults(handler=cmd_classify)

    check = subparsers.add_parser("self-check", help="Run the acceptance checks.", parents=[common])
    check.add_argument("--only", nargs="+", choices=sorted(CHECKS), help="Run only these checks.")
    check.set_defaults(handler=cmd_self_check)

    verify = subparsers.add_parser("verify", help="Replay a verdict JSON document.", parents=[common])
    verify.add_argument("file")
    verify.set_defaults(handler=cmd_verify)

    for name, handler, summary in (
        ("aut", cmd_aut, "Print the automorphism group order and edge orbit count."),
        ("canon", cmd_canon, "Print the canonical certificate digest."),
        ("complement", cmd_complement, "Write the bipartite complement."),
    ):
        tool = subparsers.add_parser(name, help=summary, parents=[common])
        tool.add_argument("file")
        if name == "complement":
            tool.add_argument("--out", help="Output file, stdout when omitted.")
        tool.set_defaults(handler=handler)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return int(args.handler(args))
    except (TripleError, ValidationError, ValueError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return int(ExitStatus.USAGE)


if __name__ == "__main__":
    raise SystemExit(main())
