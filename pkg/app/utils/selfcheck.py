"""Named end-to-end checks that re-establish the classification from scratch.

Each check returns a CheckResult; run_checks runs them in registry order and
never stops at the first failure.
"""

import logging
import random
from itertools import product
from pathlib import Path
from typing import Callable

import pandas as pd
from pydantic import BaseModel

from utils.autgraph import (
    automorphism_generators,
    brute_force_aut,
    edge_orbits,
    is_edge_transitive,
)
from utils.bigraph import BiGraph
from utils.certificates import Outcome, TheoremRefutation, verify_verdict
from utils.config import DeciderConfig
from utils.decider import box_triples, classify, decide, matching_rules
from utils.errors import TripleError
from utils.oracle import OracleBudget, OracleOutcome, oracle_decide
from utils.permgroup import (
    GroupTriple,
    Perm,
    closure,
    cyclic_group,
    direct_product,
    semidirect_affine,
    stabilizer,
    subgroup_generated,
    subgroup_intersection,
    symmetric_group,
    trivial_subgroup,
)
from utils.realize import (
    coset_intersection_graph,
    pair_block_complement,
    s4_sylow_pair,
    s5_pair_stabilizers,
    subspace_complement_graph,
)
from utils.triple import Triple

# Set up logger
logger = logging.getLogger(__name__)

GOLDEN_REFUTATIONS = Path(__file__).resolve().parent.parent / "data" / "classification_refutations.csv"

# Triples whose outcome is fixed independently of how the box is decided.
KNOWN_REALIZABLE = [
    (7, 7, 28), (7, 7, 21), (8, 8, 24), (9, 9, 36),
    (9, 9, 27), (10, 10, 30), (10, 5, 20), (10, 5, 30),
]
GEOMETRIC_DEGREES = {(2, 2, 1): 2, (2, 3, 1): 4, (3, 2, 1): 3, (2, 4, 1): 8, (2, 4, 2): 16}


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


def load_golden_refutations(path: Path = GOLDEN_REFUTATIONS) -> set[tuple[int, int, int]]:
    table = pd.read_csv(path)
    return {(int(r.a), int(r.b), int(r.c)) for r in table.itertuples()}


def group_corpus(cap: int) -> list[tuple[str, GroupTriple]]:
    """Small group triples with |G| <= 5000 covering every construction the decider uses."""
    corpus = []
    trivial = cyclic_group(1)
    corpus.append(("trivial", GroupTriple(G=trivial, H=trivial, K=trivial)))
    for n in (2, 6, 12):
        G = cyclic_group(n)
        H = subgroup_generated(G, [_power(G.generators[0], 2)])
        K = subgroup_generated(G, [_power(G.generators[0], 3)])
        corpus.append((f"cyclic({n})", GroupTriple(G=G, H=H, K=K)))
    for n in range(2, 7):
        G = symmetric_group(n, cap=cap)
        corpus.append((f"symmetric({n})", GroupTriple(G=G, H=stabilizer(G, 0), K=stabilizer(G, 1))))
        if n <= 4:
            corpus.append((f"symmetric({n}) regular", GroupTriple(G=G, H=trivial_subgroup(G), K=G)))
    for n, p in ((3, 2), (5, 2), (7, 2), (7, 3), (9, 2), (11, 5), (13, 3)):
        corpus.append((f"affine({n},{p})", semidirect_affine(n, p, cap=cap)))
    corpus.append(("s4_sylow_pair", s4_sylow_pair(cap=cap)))
    corpus.append(("s5_pair_stabilizers", s5_pair_stabilizers(cap=cap)))
    corpus.append(
        ("affine(5,2) x affine(7,3)", direct_product(semidirect_affine(5, 2), semidirect_affine(7, 3), cap))
    )
    return corpus


def _power(g: Perm, k: int) -> Perm:
    images = list(range(g.degree))
    for _ in range(k):
        images = [g(x) for x in images]
    return Perm(tuple(images))


def check_classification(config: DeciderConfig) -> CheckResult:
    verdicts = classify(10, 10, config)
    unknown = [v.triple for v in verdicts if v.outcome is Outcome.UNKNOWN]
    refuted = {v.triple for v in verdicts if v.outcome is Outcome.NOT_REALIZABLE}
    golden = load_golden_refutations()
    by_triple = {v.triple: v for v in verdicts}
    problems = []
    if unknown:
        problems.append(f"unknown: {unknown}")
    if refuted != golden:
        problems.append(f"refutations differ: extra {sorted(refuted - golden)}, missing {sorted(golden - refuted)}")
    for t in KNOWN_REALIZABLE:
        v = by_triple[t]
        if v.outcome is not Outcome.REALIZABLE:
            problems.append(f"{t} is {v.outcome.value}")
            continue
        verify_verdict(v, config)
    return CheckResult(
        name="classification",
        passed=not problems,
        detail="; ".join(problems) or f"{len(verdicts)} triples, {len(refuted)} refuted",
    )


def check_oracle_5_5_15(config: DeciderConfig) -> CheckResult:
    budget = OracleBudget(max_candidates=config.oracle_max_candidates, max_nodes=config.search_budget)
    result = oracle_decide(5, 5, 15, budget=budget)
    return CheckResult(
        name="oracle-5-5-15",
        passed=result.outcome is OracleOutcome.NOT_REALIZABLE,
        detail=f"{result.outcome.value} after {result.stats.graphs_after_dedup} classes",
    )


def check_cig_bijection(config: DeciderConfig) -> CheckResult:
    problems = []
    corpus = group_corpus(config.group_cap)
    for name, t in corpus:
        meet = subgroup_intersection(t.H, t.K)
        g = coset_intersection_graph(t).graph
        r_eta, r_kappa = t.H.order // meet.order, t.K.order // meet.order
        if g.edge_count != t.G.order // meet.order:
            problems.append(f"{name}: {g.edge_count} edges")
        if sorted(len(r) for r in g.rows) != [r_eta] * g.a:
            problems.append(f"{name}: eta degrees")
        if sorted(len(c) for c in g.columns) != [r_kappa] * g.b:
            problems.append(f"{name}: kappa degrees")
    return CheckResult(name="cig-bijection", passed=not problems, detail="; ".join(problems) or f"{len(corpus)} group triples")


def check_groups_to_graphs(config: DeciderConfig) -> CheckResult:
    failing = [
        name
        for name, t in group_corpus(config.group_cap)
        if not is_edge_transitive(coset_intersection_graph(t).graph, config.search_budget)
    ]
    return CheckResult(name="groups-to-graphs", passed=not failing, detail=", ".join(failing))


def check_geometric(config: DeciderConfig) -> CheckResult:
    problems = []
    for (q, n, d), expected in GEOMETRIC_DEGREES.items():
        g = subspace_complement_graph(q, n, d)
        degrees = {len(r) for r in g.rows}
        if degrees != {expected}:
            problems.append(f"{(q, n, d)}: complements {sorted(degrees)}, expected {expected}")
    fano = subspace_complement_graph(2, 3, 1)
    if fano.edge_count != 28 or len(edge_orbits(fano, config.search_budget)) != 1:
        problems.append("(2, 3, 1) graph is not a single 28-edge orbit")
    return CheckResult(name="geometric", passed=not problems, detail="; ".join(problems))


def _all_small_graphs(max_side: int):
    for a, b in product(range(1, max_side + 1), repeat=2):
        cells = list(product(range(a), range(b)))
        for mask in range(1 << len(cells)):
            yield BiGraph(a=a, b=b, edges=frozenset(e for k, e in enumerate(cells) if mask >> k & 1))


def _random_graphs(count: int, max_side: int, seed: int = 0):
    rng = random.Random(seed)
    for _ in range(count):
        a, b = rng.randint(1, max_side), rng.randint(1, max_side)
        yield BiGraph(
            a=a,
            b=b,
            edges=frozenset(e for e in product(range(a), range(b)) if rng.random() < 0.5),
        )


def aut_matches_brute_force(g: BiGraph, config: DeciderConfig) -> bool:
    gens = [f.to_perm() for f in automorphism_generators(g, config.search_budget)]
    found = closure(g.a + g.b, gens, cap=config.group_cap).element_set
    return found == {f.to_perm() for f in brute_force_aut(g)}


def check_aut_engine(config: DeciderConfig) -> CheckResult:
    graphs = list(_all_small_graphs(3)) + list(_random_graphs(200, 5))
    failing = [g for g in graphs if not aut_matches_brute_force(g, config)]
    detail = f"{len(graphs)} graphs" if not failing else f"first mismatch: {sorted(failing[0].edges)}"
    return CheckResult(name="aut-engine", passed=not failing, detail=detail)


def check_iff_spot(config: DeciderConfig) -> CheckResult:
    expected = {
        (5, 10, 30): Outcome.REALIZABLE,
        (4, 12, 24): Outcome.REALIZABLE,
        (5, 15, 45): Outcome.NOT_REALIZABLE,
        (8, 8, 40): Outcome.NOT_REALIZABLE,
    }
    problems = []
    for t, outcome in expected.items():
        got = decide(Triple.of(*t), config).outcome
        if got is not outcome:
            problems.append(f"{t}: {got.value}")
    if not is_edge_transitive(pair_block_complement(5, 2), config.search_budget):
        problems.append("pair_block_complement(5, 2) is not edge-transitive")
    return CheckResult(name="iff-spot", passed=not problems, detail="; ".join(problems))


def check_oracle_agreement(config: DeciderConfig) -> CheckResult:
    budget = OracleBudget(max_candidates=config.oracle_max_candidates, max_nodes=config.search_budget)
    problems = []
    triples = box_triples(6, 6)
    for t in triples:
        verdict = decide(t, config)
        if verdict.outcome is Outcome.UNKNOWN:
            continue
        result = oracle_decide(t.a, t.b, t.c, budget=budget)
        if result.outcome is OracleOutcome.EXCEEDED:
            continue
        if result.outcome.value != verdict.outcome.value:
            problems.append(f"{t}: decider {verdict.outcome.value}, oracle {result.outcome.value}")
    return CheckResult(name="oracle-agreement", passed=not problems, detail="; ".join(problems) or f"{len(triples)} triples")


def check_rule_consistency(config: DeciderConfig) -> CheckResult:
    problems = []
    for t in box_triples(10, 10):
        fired = matching_rules(t, config)
        if len({isinstance(cert, TheoremRefutation) for _, cert in fired}) > 1:
            problems.append(f"{t}: {[name for name, _ in fired]}")
        if decide(t, config).outcome is not decide(t.swapped(), config).outcome:
            problems.append(f"{t}: not symmetric")
    return CheckResult(name="rule-consistency", passed=not problems, detail="; ".join(problems))


def check_certificate_replay(config: DeciderConfig) -> CheckResult:
    problems = []
    verdicts = classify(10, 10, config)
    for v in verdicts:
        try:
            verify_verdict(v, config)
        except TripleError as e:
            problems.append(f"{v.triple}: {e}")
    return CheckResult(name="certificate-replay", passed=not problems, detail="; ".join(problems) or f"{len(verdicts)} verdicts")


def check_product_closure(config: DeciderConfig) -> CheckResult:
    """Products of realizable triples within (12, 12, 144) are realizable.

    Factors come in both orientations, so products whose certificates need
    transposed factors are covered.
    """
    realizable = [t for t in box_triples(6, 6) if decide(t, config).outcome is Outcome.REALIZABLE]
    problems = []
    for s, t in product(realizable, repeat=2):
        st = s * t
        if st.a > 12 or st.b > 12:
            continue
        if decide(st, config).outcome is not Outcome.REALIZABLE:
            problems.append(f"{s} * {t}")
    return CheckResult(name="product-closure", passed=not problems, detail="; ".join(problems[:10]))


CHECKS: dict[str, Callable[[DeciderConfig], CheckResult]] = {
    "classification": check_classification,
    "oracle-5-5-15": check_oracle_5_5_15,
    "cig-bijection": check_cig_bijection,
    "groups-to-graphs": check_groups_to_graphs,
    "geometric": check_geometric,
    "aut-engine": check_aut_engine,
    "iff-spot": check_iff_spot,
    "oracle-agreement": check_oracle_agreement,
    "rule-consistency": check_rule_consistency,
    "certificate-replay": check_certificate_replay,
    "product-closure": check_product_closure,
}


def run_checks(names: list[str] | None = None, config: DeciderConfig = DeciderConfig()) -> list[CheckResult]:
    names = list(CHECKS) if not names else names
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    results = []
    for name in names:
        logger.info(f"Running check {name}")
        try:
            result = CHECKS[name](config)
        except Exception as e:
            logger.exception(f"Check {name} raised")
            result = CheckResult(name=name, passed=False, detail=f"{type(e).__name__}: {e}")
        results.append(result)
    return results
