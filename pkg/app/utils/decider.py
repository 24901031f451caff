"""The decision pipeline for index-realizability of (a, b, c).

Order: necessary conditions, the direct rules (cheap arithmetic first),
product decomposition through the rules, then the oracle. Every direct rule
that matches is evaluated and their outcomes must agree.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache, partial
from typing import Callable

from utils.bigraph import serialize
from utils.certificates import (
    Certificate,
    Factor,
    GraphCertificate,
    GroupCertificate,
    NecessaryFailure,
    OracleExhausted,
    Outcome,
    ProductCertificate,
    RuleCertificate,
    TheoremRefutation,
    Verdict,
)
from utils.config import DeciderConfig
from utils.errors import InvariantViolated
from utils.numtheory import divisors, gcd_lcm
from utils.oracle import OracleBudget, OracleOutcome, oracle_decide
from utils.shapes import (
    match_divisor_sandwich,
    match_geometric,
    match_nminus1,
    match_nminus2,
    match_phi_prime,
    match_prime_window,
    nminus2_realizable,
    prime_window_realizable,
)
from utils.triple import Triple

# Set up logger
logger = logging.getLogger(__name__)

RuleResult = RuleCertificate | GroupCertificate | TheoremRefutation | None

# Explicit group constructions, keyed by normalized triple.
CATALOG: dict[tuple[int, int, int], str] = {
    (8, 8, 24): "s4_sylow_pair",
    (10, 10, 30): "s5_pair_stabilizers",
}


def check_necessary(t: Triple) -> NecessaryFailure | None:
    """None when lcm(a, b) | c and c <= ab."""
    _, lcm = gcd_lcm(t.a, t.b)
    if t.c % lcm:
        return NecessaryFailure(triple=t.as_tuple(), condition="lcm_divides_c")
    if t.c > t.a * t.b:
        return NecessaryFailure(triple=t.as_tuple(), condition="c_at_most_ab")
    return None


def rule_divisor_sandwich(t: Triple, config: DeciderConfig = DeciderConfig()) -> RuleResult:
    t = t.normalized()
    s = match_divisor_sandwich(t)
    if s is None:
        return None
    return RuleCertificate(
        rule="divisor_sandwich",
        triple=t.as_tuple(),
        params={"e": s.e, "f": s.f, "m": s.m, "n": s.n},
    )


def rule_catalog(t: Triple, config: DeciderConfig = DeciderConfig()) -> RuleResult:
    t = t.normalized()
    construction = CATALOG.get(t.as_tuple())
    if construction is None:
        return None
    return GroupCertificate(construction=construction, triple=t.as_tuple())


def rule_nminus1(t: Triple, config: DeciderConfig = DeciderConfig()) -> RuleResult:
    t = t.normalized()
    matched = match_nminus1(t)
    if matched is None:
        return None
    n, e = matched
    return RuleCertificate(rule="nminus1", triple=t.as_tuple(), params={"n": n, "e": e})


def rule_phi_prime(t: Triple, config: DeciderConfig = DeciderConfig()) -> RuleResult:
    t = t.normalized()
    matched = match_phi_prime(t)
    if matched is None:
        return None
    n, p, e = matched
    return RuleCertificate(
        rule="phi_prime", triple=t.as_tuple(), params={"n": n, "p": p, "e": e}
    )


def rule_thm_nminus2(t: Triple, config: DeciderConfig = DeciderConfig()) -> RuleResult:
    t = t.normalized()
    matched = match_nminus2(t)
    if matched is None:
        return None
    n, l = matched
    params = {"n": n, "l": l}
    if nminus2_realizable(n, l):
        return RuleCertificate(rule="nminus2", triple=t.as_tuple(), params=params)
    return TheoremRefutation(theorem="nminus2", triple=t.as_tuple(), params=params)


def rule_thm_prime_window(t: Triple, config: DeciderConfig = DeciderConfig()) -> RuleResult:
    t = t.normalized()
    matched = match_prime_window(t)
    if matched is None:
        return None
    n, p, l = matched
    params = {"n": n, "p": p, "l": l}
    if prime_window_realizable(n, p, l):
        return RuleCertificate(rule="prime_window", triple=t.as_tuple(), params=params)
    return TheoremRefutation(theorem="prime_window", triple=t.as_tuple(), params=params)


def rule_geometric(t: Triple, config: DeciderConfig = DeciderConfig()) -> RuleResult:
    t = t.normalized()
    matched = match_geometric(t, config.geometric_q_max, config.geometric_n_max)
    if matched is None:
        return None
    q, n, d = matched
    return RuleCertificate(
        rule="geometric", triple=t.as_tuple(), params={"q": q, "n": n, "d": d}
    )


RULES: list[tuple[str, Callable[[Triple, DeciderConfig], RuleResult]]] = [
    ("divisor_sandwich", rule_divisor_sandwich),
    ("catalog", rule_catalog),
    ("nminus1", rule_nminus1),
    ("phi_prime", rule_phi_prime),
    ("nminus2", rule_thm_nminus2),
    ("prime_window", rule_thm_prime_window),
    ("geometric", rule_geometric),
]


def _outcome_of(cert: Certificate) -> Outcome:
    return Outcome.NOT_REALIZABLE if isinstance(cert, TheoremRefutation) else Outcome.REALIZABLE


def matching_rules(
    t: Triple, config: DeciderConfig = DeciderConfig()
) -> list[tuple[str, Certificate]]:
    """Every direct rule that fires on t, in pipeline order."""
    fired = []
    for name, rule in RULES:
        result = rule(t, config)
        if result is not None:
            fired.append((name, result))
    return fired


def _first_consistent(t: Triple, config: DeciderConfig) -> Certificate | None:
    fired = matching_rules(t, config)
    outcomes = {_outcome_of(cert) for _, cert in fired}
    if len(outcomes) > 1:
        names = ", ".join(f"{name}={_outcome_of(cert).value}" for name, cert in fired)
        raise InvariantViolated(f"rules disagree on {t}: {names}")
    return fired[0][1] if fired else None


@lru_cache(maxsize=65_536)
def _realize_by_rules(t: Triple, config: DeciderConfig, depth: int) -> Certificate | None:
    """A realizing certificate for normalized t from the rules and products alone."""
    if check_necessary(t) is not None:
        return None
    cert = _first_consistent(t, config)
    if cert is not None:
        return cert if _outcome_of(cert) is Outcome.REALIZABLE else None
    if depth <= 0:
        return None
    return decompose_product(t, config, depth)


def decompose_product(
    t: Triple, config: DeciderConfig = DeciderConfig(), depth: int | None = None
) -> ProductCertificate | None:
    """Split t into two proper factors that the rules realize; never refutes.

    Each factor is decided recursively with one less level of depth. Factors
    are tried in divisor order with the first factor no larger than the
    second, so the first decomposition found is deterministic.
    """
    depth = config.product_depth if depth is None else depth
    t = t.normalized()
    for a1 in divisors(t.a):
        for b1 in divisors(t.b):
            for c1 in divisors(t.c):
                first = (a1, b1, c1)
                second = (t.a // a1, t.b // b1, t.c // c1)
                if first == (1, 1, 1) or second == (1, 1, 1) or first > second:
                    continue
                factors = []
                for part in (first, second):
                    factor = Triple.of(*part)
                    cert = _realize_by_rules(factor.normalized(), config, depth - 1)
                    if cert is None:
                        break
                    factors.append(Factor(transposed=factor.a > factor.b, certificate=cert))
                else:
                    logger.debug(f"{t} = {first} * {second}")
                    return ProductCertificate(triple=t.as_tuple(), factors=factors)
    return None


def decide(t: Triple, config: DeciderConfig = DeciderConfig()) -> Verdict:
    """Decide whether t is index-realizable.

    Budget exhaustion never raises; it shows up as an Unknown verdict with a
    reason and the oracle's stats.
    """
    n = t.normalized()
    verdict = partial(Verdict, triple=t.as_tuple(), normalized=t.a > t.b)

    failure = check_necessary(n)
    if failure is not None:
        logger.info(f"{t} fails the necessary condition {failure.condition}")
        return verdict(outcome=Outcome.NOT_REALIZABLE, certificate=failure)

    cert = _first_consistent(n, config)
    if cert is not None:
        logger.info(f"{t} decided by {cert.summary()}")
        return verdict(outcome=_outcome_of(cert), certificate=cert)

    product = decompose_product(n, config)
    if product is not None:
        logger.info(f"{t} decided by {product.summary()}")
        return verdict(outcome=Outcome.REALIZABLE, certificate=product)

    if not config.oracle_enabled:
        logger.info(f"No rule decides {t} and the oracle is disabled")
        return verdict(outcome=Outcome.UNKNOWN, reason="oracle_disabled")

    budget = OracleBudget(
        max_candidates=config.oracle_max_candidates, max_nodes=config.search_budget
    )
    result = oracle_decide(n.a, n.b, n.c, budget=budget)
    if result.outcome is OracleOutcome.REALIZABLE:
        graph = GraphCertificate(triple=n.as_tuple(), graph=serialize(result.witness))
        return verdict(outcome=Outcome.REALIZABLE, certificate=graph, stats=result.stats)
    if result.outcome is OracleOutcome.NOT_REALIZABLE:
        exhausted = OracleExhausted(
            triple=n.as_tuple(),
            stats=result.stats,
            max_candidates=budget.max_candidates,
            search_budget=budget.max_nodes,
        )
        return verdict(outcome=Outcome.NOT_REALIZABLE, certificate=exhausted, stats=result.stats)
    return verdict(outcome=Outcome.UNKNOWN, reason="oracle_budget_exceeded", stats=result.stats)


def box_triples(a_max: int, b_max: int) -> list[Triple]:
    """Every triple with a <= a_max, b <= b_max and lcm(a, b) | c <= ab, in (a, b, c) order."""
    triples = []
    for a in range(1, a_max + 1):
        for b in range(1, b_max + 1):
            _, lcm = gcd_lcm(a, b)
            triples.extend(Triple.of(a, b, c) for c in range(lcm, a * b + 1, lcm))
    return triples


def classify(
    a_max: int, b_max: int, config: DeciderConfig = DeciderConfig(), jobs: int = 1
) -> list[Verdict]:
    """Decide every triple in the box; row order does not depend on jobs."""
    if a_max < 1 or b_max < 1:
        raise ValueError(f"bounds must be positive, got a_max={a_max}, b_max={b_max}")
    triples = box_triples(a_max, b_max)
    logger.info(f"Classifying {len(triples)} triples with a <= {a_max}, b <= {b_max}")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(partial(decide, config=config), triples, chunksize=16))
    else:
        verdicts = [decide(t, config) for t in triples]
    return sorted(verdicts, key=lambda v: v.triple)
