"""Exhaustive decision for small triples.

A triple is realizable exactly when some bipartite graph with parts a, b,
c edges, no isolated vertices and an edge-transitive automorphism group
exists. Such a graph is biregular with degrees c/a and c/b, so it is enough
to list every biregular graph with those degrees up to isomorphism and test
each one.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from pydantic import BaseModel

from constants import DEFAULT_ORACLE_MAX_CANDIDATES, DEFAULT_SEARCH_BUDGET
from utils.autgraph import CanonicalCertificate, canonical_certificate, is_edge_transitive
from utils.bigraph import BiGraph, is_biregular
from utils.errors import InvariantViolated, SearchBudgetExceeded

# Set up logger
logger = logging.getLogger(__name__)


class OracleOutcome(str, Enum):
    REALIZABLE = "realizable"
    NOT_REALIZABLE = "not_realizable"
    EXCEEDED = "exceeded"


class OracleStats(BaseModel):
    graphs_generated: int = 0
    graphs_after_dedup: int = 0
    nodes_explored: int = 0


@dataclass(frozen=True)
class OracleBudget:
    max_candidates: int = DEFAULT_ORACLE_MAX_CANDIDATES
    max_nodes: int = DEFAULT_SEARCH_BUDGET


@dataclass
class OracleResult:
    outcome: OracleOutcome
    witness: BiGraph | None = None
    stats: OracleStats = field(default_factory=OracleStats)


def forced_degrees(a: int, b: int, c: int) -> tuple[int, int] | None:
    """(c/a, c/b) when both are integers and c <= ab, else None."""
    if c % a or c % b or c > a * b:
        return None
    return c // a, c // b


def next_subset(subset: tuple[int, ...], n: int) -> tuple[int, ...] | None:
    """The r-subset of range(n) after subset in lexicographic order, or None."""
    r = len(subset)
    for i in range(r - 1, -1, -1):
        if subset[i] < n - r + i:
            head = subset[i] + 1
            return subset[:i] + tuple(range(head, head + r - i))
    return None


def enumerate_biregular(
    a: int,
    b: int,
    c: int,
    budget: OracleBudget = OracleBudget(),
    stats: OracleStats | None = None,
) -> Iterator[BiGraph]:
    """Yield one graph per isomorphism class of (c/a, c/b)-biregular a×b graphs.

    Rows are r-subsets of kappa kept in nondecreasing lexicographic order,
    which is complete up to relabeling eta. Relabeling kappa turns any row
    into {0, ..., r-1}, the smallest r-subset, so the first row is fixed to
    it. Column degrees are pruned against the rows still to come.

    Subsets are produced one at a time; every subset tried is a search node.
    """
    stats = stats if stats is not None else OracleStats()
    degrees = forced_degrees(a, b, c)
    if degrees is None:
        return
    r, s = degrees
    column = [0] * b
    rows: list[tuple[int, ...]] = []
    seen: set[CanonicalCertificate] = set()

    def place(choice: tuple[int, ...], sign: int) -> None:
        for j in choice:
            column[j] += sign

    def feasible(remaining: int) -> bool:
        return all(column[j] <= s and s - column[j] <= remaining for j in range(b))

    def extend() -> Iterator[BiGraph]:
        if len(rows) == a:
            stats.graphs_generated += 1
            if stats.graphs_generated > budget.max_candidates:
                raise SearchBudgetExceeded(budget.max_candidates)
            graph = BiGraph(
                a=a,
                b=b,
                edges=frozenset((i, j) for i, choice in enumerate(rows) for j in choice),
            )
            certificate = canonical_certificate(graph, budget.max_nodes)
            if certificate not in seen:
                seen.add(certificate)
                stats.graphs_after_dedup += 1
                yield graph
            return
        first_row = not rows
        choice = rows[-1] if rows else tuple(range(r))
        while choice is not None:
            stats.nodes_explored += 1
            if stats.nodes_explored > budget.max_nodes:
                raise SearchBudgetExceeded(budget.max_nodes)
            place(choice, 1)
            if feasible(a - len(rows) - 1):
                rows.append(choice)
                yield from extend()
                rows.pop()
            place(choice, -1)
            choice = None if first_row else next_subset(choice, b)

    yield from extend()


def oracle_decide(a: int, b: int, c: int, budget: OracleBudget = OracleBudget()) -> OracleResult:
    """Decide (a, b, c) by exhausting the biregular graphs with the forced degrees.

    Among edge-transitive classes the one with the smallest canonical
    certificate is returned, so the witness does not depend on search order.
    """
    if min(a, b, c) < 1:
        raise ValueError(f"triple entries must be positive, got ({a}, {b}, {c})")
    stats = OracleStats()
    best: tuple[CanonicalCertificate, BiGraph] | None = None
    try:
        for graph in enumerate_biregular(a, b, c, budget, stats):
            if not is_edge_transitive(graph, budget.max_nodes):
                continue
            certificate = canonical_certificate(graph, budget.max_nodes)
            if best is None or certificate < best[0]:
                best = (certificate, graph)
    except SearchBudgetExceeded as e:
        logger.warning(f"Oracle gave up on ({a}, {b}, {c}): {e}")
        return OracleResult(OracleOutcome.EXCEEDED, stats=stats)

    if best is None:
        logger.info(
            f"Oracle refuted ({a}, {b}, {c}) after {stats.graphs_after_dedup} classes"
        )
        return OracleResult(OracleOutcome.NOT_REALIZABLE, stats=stats)

    witness = best[1]
    _recheck_witness(witness, a, b, c, budget)
    logger.info(f"Oracle realized ({a}, {b}, {c}) among {stats.graphs_after_dedup} classes")
    return OracleResult(OracleOutcome.REALIZABLE, witness=witness, stats=stats)


def _recheck_witness(g: BiGraph, a: int, b: int, c: int, budget: OracleBudget) -> None:
    if (g.a, g.b, g.edge_count) != (a, b, c):
        raise InvariantViolated(f"oracle witness has parameters ({g.a}, {g.b}, {g.edge_count})")
    if not is_biregular(g, c // a, c // b):
        raise InvariantViolated("oracle witness is not biregular")
    if not is_edge_transitive(g, budget.max_nodes):
        raise InvariantViolated("oracle witness is not edge-transitive")
