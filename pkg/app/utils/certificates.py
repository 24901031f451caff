"""Verdicts, their certificates, and replay.

A certificate is enough to re-derive its verdict without trusting the
decider: realizable certificates rebuild an explicit witness graph, which
must have the exact parameters and be edge-transitive; refutations re-check
the hypotheses of the theorem they cite or re-run the oracle.

Certificates always describe the normalized triple (a <= b). A verdict whose
input had a > b carries normalized=True and its witness is transposed back.
"""

import logging
from enum import Enum
from functools import reduce
from typing import Annotated, Literal, Union

import pandas as pd
from pydantic import BaseModel, Field

from constants import DEFAULT_GROUP_CAP
from utils.autgraph import is_edge_transitive
from utils.bigraph import BiGraph, graph_product, is_biregular, parse, transpose
from utils.config import DeciderConfig
from utils.errors import CapExceeded, CertificateError, TripleError
from utils.numtheory import binomial, euler_phi, gcd_lcm, is_prime, q_binomial
from utils.oracle import OracleBudget, OracleOutcome, OracleStats, oracle_decide
from utils.permgroup import GroupTriple, semidirect_affine
from utils.realize import (
    coset_intersection_graph,
    complete_bipartite,
    diagonal_matching,
    matching_complement,
    pair_block_complement,
    s4_sylow_pair,
    s5_pair_stabilizers,
    subset_incidence_graph,
    subspace_complement_graph,
)
from utils.shapes import (
    match_nminus2,
    match_prime_window,
    nminus2_realizable,
    prime_window_realizable,
)
from utils.triple import Triple

# Set up logger
logger = logging.getLogger(__name__)

TripleTuple = tuple[int, int, int]


class Outcome(str, Enum):
    REALIZABLE = "realizable"
    NOT_REALIZABLE = "not_realizable"
    UNKNOWN = "unknown"


class RuleCertificate(BaseModel):
    kind: Literal["rule"] = "rule"
    rule: Literal[
        "divisor_sandwich", "nminus1", "phi_prime", "nminus2", "prime_window", "geometric"
    ]
    triple: TripleTuple
    params: dict[str, int]

    def summary(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"rule:{self.rule}({args})"


class GroupCertificate(BaseModel):
    kind: Literal["group"] = "group"
    construction: Literal["s4_sylow_pair", "s5_pair_stabilizers"]
    triple: TripleTuple

    def summary(self) -> str:
        return f"group:{self.construction}"


class GraphCertificate(BaseModel):
    """An explicit witness in the bigraph text format."""

    kind: Literal["graph"] = "graph"
    triple: TripleTuple
    graph: str

    def summary(self) -> str:
        return "graph"


class Factor(BaseModel):
    transposed: bool = False
    certificate: "Certificate"


class ProductCertificate(BaseModel):
    kind: Literal["product"] = "product"
    triple: TripleTuple
    factors: list[Factor]

    def summary(self) -> str:
        parts = []
        for factor in self.factors:
            a, b, c = factor.certificate.triple
            parts.append(f"({b},{a},{c})" if factor.transposed else f"({a},{b},{c})")
        return "product:" + "*".join(parts)


class TheoremRefutation(BaseModel):
    kind: Literal["theorem_refutation"] = "theorem_refutation"
    theorem: Literal["nminus2", "prime_window"]
    triple: TripleTuple
    params: dict[str, int]

    def summary(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"theorem:{self.theorem}({args})"


class OracleExhausted(BaseModel):
    kind: Literal["oracle_exhausted"] = "oracle_exhausted"
    triple: TripleTuple
    stats: OracleStats
    max_candidates: int
    search_budget: int

    def summary(self) -> str:
        return f"oracle:{self.stats.graphs_after_dedup} classes"


class NecessaryFailure(BaseModel):
    kind: Literal["necessary_failure"] = "necessary_failure"
    triple: TripleTuple
    condition: Literal["lcm_divides_c", "c_at_most_ab"]

    def summary(self) -> str:
        return f"necessary:{self.condition}"


Certificate = Annotated[
    Union[
        RuleCertificate,
        GroupCertificate,
        GraphCertificate,
        ProductCertificate,
        TheoremRefutation,
        OracleExhausted,
        NecessaryFailure,
    ],
    Field(discriminator="kind"),
]
Factor.model_rebuild()
ProductCertificate.model_rebuild()

REALIZING_KINDS = ("rule", "group", "graph", "product")
REFUTING_KINDS = ("theorem_refutation", "oracle_exhausted", "necessary_failure")


class Verdict(BaseModel):
    triple: TripleTuple
    outcome: Outcome
    normalized: bool = False
    certificate: Certificate | None = None
    reason: Literal["oracle_disabled", "oracle_budget_exceeded"] | None = None
    stats: OracleStats | None = None

    def summary(self) -> str:
        if self.certificate is None:
            return self.reason or ""
        return self.certificate.summary()


def group_triple_for(construction: str, cap: int = DEFAULT_GROUP_CAP) -> GroupTriple:
    builders = {"s4_sylow_pair": s4_sylow_pair, "s5_pair_stabilizers": s5_pair_stabilizers}
    return builders[construction](cap=cap)


def _rule_graph(cert: RuleCertificate, cap: int) -> BiGraph:
    p = cert.params
    match cert.rule:
        case "divisor_sandwich":
            return reduce(
                graph_product,
                [
                    complete_bipartite(p["e"], p["e"]),
                    diagonal_matching(p["f"]),
                    complete_bipartite(p["m"], p["n"]),
                ],
            )
        case "nminus1":
            return graph_product(matching_complement(p["n"]), complete_bipartite(1, p["e"]))
        case "phi_prime":
            cig = coset_intersection_graph(semidirect_affine(p["n"], p["p"], cap=cap))
            return graph_product(cig.graph, complete_bipartite(1, p["e"]))
        case "nminus2":
            n, l = p["n"], p["l"]
            if n % 2:
                return pair_block_complement(n, l)
            # (m, m, m(m-1)) times K_{2,2l}
            return graph_product(matching_complement(n // 2), complete_bipartite(2, 2 * l))
        case "prime_window":
            n, prime, l = p["n"], p["p"], p["l"]
            return subset_incidence_graph(n, prime, n * l // binomial(n, prime))
        case "geometric":
            return subspace_complement_graph(p["q"], p["n"], p["d"])
    raise CertificateError(f"unknown rule {cert.rule!r}")


def witness_graph(cert: Certificate, cap: int = DEFAULT_GROUP_CAP) -> BiGraph:
    """Rebuild the witness graph of a realizing certificate, oriented as cert.triple."""
    if isinstance(cert, RuleCertificate):
        return _rule_graph(cert, cap)
    if isinstance(cert, GroupCertificate):
        return coset_intersection_graph(group_triple_for(cert.construction, cap)).graph
    if isinstance(cert, GraphCertificate):
        return parse(cert.graph)
    if isinstance(cert, ProductCertificate):
        graphs = []
        for factor in cert.factors:
            g = witness_graph(factor.certificate, cap)
            graphs.append(transpose(g) if factor.transposed else g)
        if not graphs:
            raise CertificateError("product certificate has no factors")
        return reduce(graph_product, graphs)
    raise CertificateError(f"{cert.kind} certificates have no witness graph")


def verdict_witness(verdict: Verdict, cap: int = DEFAULT_GROUP_CAP) -> BiGraph:
    """The witness of a realizable verdict in the caller's (a, b) order."""
    if verdict.outcome is not Outcome.REALIZABLE or verdict.certificate is None:
        raise CertificateError(f"{verdict.triple} is {verdict.outcome.value}, no witness")
    g = witness_graph(verdict.certificate, cap)
    return transpose(g) if verdict.normalized else g


CATALOG_TRIPLES: dict[str, TripleTuple] = {
    "s4_sylow_pair": (8, 8, 24),
    "s5_pair_stabilizers": (10, 10, 30),
}


def _param(cert: RuleCertificate, name: str) -> int:
    value = cert.params.get(name)
    if value is None or value < 1:
        raise CertificateError(f"{cert.summary()} needs a positive parameter {name}")
    return value


def _rule_shape(cert: RuleCertificate, limit: int) -> TripleTuple:
    """The triple a rule's witness would have, from its parameters alone."""
    match cert.rule:
        case "divisor_sandwich":
            e, f, m, n = (_param(cert, k) for k in ("e", "f", "m", "n"))
            return e * f * m, e * f * n, e * e * f * m * n
        case "nminus1":
            n, e = _param(cert, "n"), _param(cert, "e")
            return n, n * e, n * (n - 1) * e
        case "phi_prime":
            n, p, e = _param(cert, "n"), _param(cert, "p"), _param(cert, "e")
            return n, n * e, n * p * e
        case "nminus2":
            n, l = _param(cert, "n"), _param(cert, "l")
            return n, n * l, n * (n - 2) * l
        case "prime_window":
            n, p, l = _param(cert, "n"), _param(cert, "p"), _param(cert, "l")
            return n, n * l, n * p * l
        case "geometric":
            q, n, d = _param(cert, "q"), _param(cert, "n"), _param(cert, "d")
            exponent = d * (n - d)
            # q >= 2, so q^exponent > limit once exponent exceeds limit's bit length
            if q < 2 or d >= n or exponent > limit.bit_length():
                raise CertificateError(f"{cert.summary()} is outside the replayable range")
            size = q_binomial(n, d, q)
            return size, size, q**exponent * size
    raise CertificateError(f"unknown rule {cert.rule!r}")


def _check_rule_conditions(cert: RuleCertificate) -> None:
    p = cert.params
    match cert.rule:
        case "nminus1" if p["n"] < 2:
            raise CertificateError(f"{cert.summary()} needs n >= 2")
        case "phi_prime" if not is_prime(p["p"]) or euler_phi(p["n"]) % p["p"] or p["n"] % p["p"] == 0:
            raise CertificateError(f"{cert.summary()}: p must be a prime dividing phi(n) but not n")
        case "nminus2" if p["n"] <= 2 or not nminus2_realizable(p["n"], p["l"]):
            raise CertificateError(f"{cert.summary()}: n must exceed 2 with n even or n-1 dividing 2l")
        case "prime_window" if (
            not is_prime(p["p"])
            or not p["p"] + 1 < p["n"] < 2 * p["p"]
            or not prime_window_realizable(p["n"], p["p"], p["l"])
        ):
            raise CertificateError(f"{cert.summary()}: prime window hypotheses fail")
        case "geometric" if not is_prime(p["q"]):
            raise CertificateError(f"{cert.summary()}: q must be prime")


def implied_triple(cert: Certificate, limit: int = DEFAULT_GROUP_CAP) -> TripleTuple:
    """The triple a realizing certificate's witness would have, derived without building it.

    Raises CertificateError when the parameters disagree with cert.triple or
    the witness would have more than limit edges.
    """
    if cert.triple[2] > limit:
        raise CertificateError(
            f"witness for {cert.triple} would have {cert.triple[2]} edges, over the cap of {limit}"
        )
    if isinstance(cert, RuleCertificate):
        implied = _rule_shape(cert, limit)
    elif isinstance(cert, GroupCertificate):
        implied = CATALOG_TRIPLES[cert.construction]
    elif isinstance(cert, GraphCertificate):
        implied = cert.triple
    elif isinstance(cert, ProductCertificate):
        if not cert.factors:
            raise CertificateError("product certificate has no factors")
        implied = (1, 1, 1)
        for factor in cert.factors:
            a, b, c = implied_triple(factor.certificate, limit)
            if factor.transposed:
                a, b = b, a
            implied = (implied[0] * a, implied[1] * b, implied[2] * c)
    else:
        raise CertificateError(f"{cert.kind} certificates have no witness graph")
    if tuple(implied) != tuple(cert.triple):
        raise CertificateError(f"{cert.summary()} describes {tuple(implied)}, not {cert.triple}")
    if isinstance(cert, RuleCertificate):
        _check_rule_conditions(cert)
    return tuple(implied)


def _check_witness(cert: Certificate, config: DeciderConfig) -> None:
    a, b, c = cert.triple
    implied_triple(cert, config.group_cap)
    try:
        g = witness_graph(cert, config.group_cap)
    except (TripleError, ValueError) as e:
        raise CertificateError(f"witness for {cert.triple} could not be rebuilt: {e}") from e
    if (g.a, g.b, g.edge_count) != (a, b, c):
        raise CertificateError(
            f"witness has parameters ({g.a}, {g.b}, {g.edge_count}), expected {cert.triple}"
        )
    if not is_biregular(g, c // a, c // b):
        raise CertificateError(f"witness for {cert.triple} is not biregular")
    if not is_edge_transitive(g, config.search_budget):
        raise CertificateError(f"witness for {cert.triple} is not edge-transitive")


def _check_refutation(cert: TheoremRefutation) -> None:
    t = Triple.of(*cert.triple)
    if cert.theorem == "nminus2":
        matched = match_nminus2(t)
        if matched is None or matched != (cert.params.get("n"), cert.params.get("l")):
            raise CertificateError(f"{t} does not have the shape (n, nl, n(n-2)l) claimed")
        if nminus2_realizable(*matched):
            raise CertificateError(f"n={matched[0]} is even or n-1 divides 2l")
        return
    matched = match_prime_window(t)
    if matched is None or matched != (
        cert.params.get("n"),
        cert.params.get("p"),
        cert.params.get("l"),
    ):
        raise CertificateError(f"{t} does not have the prime-window shape claimed")
    if prime_window_realizable(*matched):
        raise CertificateError(f"C(n, p) divides nl for (n, p, l) = {matched}")


def _check_necessary_failure(cert: NecessaryFailure) -> None:
    a, b, c = cert.triple
    _, lcm = gcd_lcm(a, b)
    if cert.condition == "lcm_divides_c" and c % lcm == 0:
        raise CertificateError(f"lcm({a}, {b}) = {lcm} does divide {c}")
    if cert.condition == "c_at_most_ab" and c <= a * b:
        raise CertificateError(f"{c} <= {a * b}")


def _check_oracle(cert: OracleExhausted, config: DeciderConfig) -> None:
    # the re-run never gets more budget than the verifier is configured with
    budget = OracleBudget(
        max_candidates=min(cert.max_candidates, config.oracle_max_candidates),
        max_nodes=min(cert.search_budget, config.search_budget),
    )
    result = oracle_decide(*cert.triple, budget=budget)
    if result.outcome is not OracleOutcome.NOT_REALIZABLE:
        raise CertificateError(f"oracle re-run on {cert.triple} gave {result.outcome.value}")


def verify_verdict(verdict: Verdict, config: DeciderConfig = DeciderConfig()) -> None:
    """Replay a verdict from its certificate; raises CertificateError on the first failed check."""
    a, b, c = verdict.triple
    expected = (b, a, c) if verdict.normalized else (a, b, c)
    if verdict.normalized != (a > b):
        raise CertificateError(f"normalized flag is wrong for {verdict.triple}")
    if verdict.outcome is Outcome.UNKNOWN:
        if verdict.certificate is not None:
            raise CertificateError("unknown verdicts carry no certificate")
        return
    cert = verdict.certificate
    if cert is None:
        raise CertificateError(f"{verdict.outcome.value} verdict without a certificate")
    if tuple(cert.triple) != expected:
        raise CertificateError(f"certificate is for {cert.triple}, verdict for {verdict.triple}")

    if verdict.outcome is Outcome.REALIZABLE:
        if cert.kind not in REALIZING_KINDS:
            raise CertificateError(f"{cert.kind} certificate cannot prove realizability")
        try:
            _check_witness(cert, config)
        except CapExceeded as e:
            raise CertificateError(f"witness too large to replay: {e}") from e
    else:
        if cert.kind not in REFUTING_KINDS:
            raise CertificateError(f"{cert.kind} certificate cannot refute")
        if isinstance(cert, TheoremRefutation):
            _check_refutation(cert)
        elif isinstance(cert, NecessaryFailure):
            _check_necessary_failure(cert)
        else:
            _check_oracle(cert, config)
    logger.info(f"Verified {verdict.outcome.value} verdict for {verdict.triple} ({cert.summary()})")


def verdict_table(verdicts: list[Verdict]) -> pd.DataFrame:
    rows = [
        {
            "a": v.triple[0],
            "b": v.triple[1],
            "c": v.triple[2],
            "outcome": v.outcome.value,
            "certificate": v.summary(),
        }
        for v in verdicts
    ]
    table = pd.DataFrame(rows, columns=["a", "b", "c", "outcome", "certificate"])
    return table.sort_values(["a", "b", "c"], ignore_index=True)


def outcome_counts(verdicts: list[Verdict]) -> dict[str, int]:
    counts = verdict_table(verdicts)["outcome"].value_counts()
    return {o.value: int(counts.get(o.value, 0)) for o in Outcome}
