import pytest
from pydantic import ValidationError

import utils.certificates
from utils.autgraph import is_edge_transitive
from utils.certificates import (
    Factor,
    GraphCertificate,
    NecessaryFailure,
    OracleExhausted,
    Outcome,
    ProductCertificate,
    RuleCertificate,
    TheoremRefutation,
    Verdict,
    implied_triple,
    outcome_counts,
    verdict_table,
    verdict_witness,
    verify_verdict,
    witness_graph,
)
from utils.bigraph import serialize
from utils.config import DeciderConfig
from utils.decider import classify, decide
from utils.errors import CertificateError
from utils.oracle import OracleStats
from utils.realize import matching_complement
from utils.triple import Triple


def verdict_for(a, b, c):
    return decide(Triple.of(a, b, c))


@pytest.mark.parametrize(
    "t",
    [(8, 8, 24), (10, 10, 30), (9, 9, 36), (10, 5, 30), (5, 10, 30), (6, 6, 24), (3, 3, 6), (4, 12, 24)],
)
def test_realizable_verdicts_replay(t):
    verdict = verdict_for(*t)
    assert verdict.outcome is Outcome.REALIZABLE
    verify_verdict(verdict)
    g = verdict_witness(verdict)
    assert (g.a, g.b, g.edge_count) == t
    assert is_edge_transitive(g)


def test_json_round_trip_keeps_replayability():
    verdict = verdict_for(10, 5, 20)
    document = verdict.model_dump_json()
    restored = Verdict.model_validate_json(document)
    assert restored == verdict
    verify_verdict(restored)


def test_json_document_shape():
    document = verdict_for(5, 5, 15).model_dump(mode="json")
    assert document["triple"] == [5, 5, 15]
    assert document["outcome"] == "not_realizable"
    assert document["certificate"]["kind"] == "theorem_refutation"


def test_product_witness_transposes_factors():
    cert = ProductCertificate(
        triple=(2, 3, 6),
        factors=[
            Factor(transposed=True, certificate=RuleCertificate(
                rule="divisor_sandwich", triple=(1, 2, 2), params={"e": 1, "f": 1, "m": 1, "n": 2}
            )),
            Factor(certificate=RuleCertificate(
                rule="divisor_sandwich", triple=(1, 3, 3), params={"e": 1, "f": 1, "m": 1, "n": 3}
            )),
        ],
    )
    g = witness_graph(cert)
    assert (g.a, g.b, g.edge_count) == (2, 3, 6)
    verify_verdict(Verdict(triple=(2, 3, 6), outcome=Outcome.REALIZABLE, certificate=cert))


def test_graph_certificate_replays():
    cert = GraphCertificate(triple=(3, 3, 6), graph=serialize(matching_complement(3)))
    verify_verdict(Verdict(triple=(3, 3, 6), outcome=Outcome.REALIZABLE, certificate=cert))


def test_tampered_parameters_are_rejected():
    verdict = verdict_for(7, 7, 21)
    bad = verdict.model_copy(update={"certificate": verdict.certificate.model_copy(update={"params": {"n": 7, "p": 3, "e": 2}})})
    with pytest.raises(CertificateError):
        verify_verdict(bad)


def test_implied_triple_of_a_product():
    assert implied_triple(verdict_for(9, 9, 36).certificate) == (9, 9, 36)
    assert implied_triple(verdict_for(10, 5, 30).certificate) == (5, 10, 30)


def test_oversized_parameters_are_rejected_before_any_build(monkeypatch):
    def never(*args, **kwargs):
        raise AssertionError("witness built")

    monkeypatch.setattr(utils.certificates, "witness_graph", never)
    forged = [
        RuleCertificate(rule="divisor_sandwich", triple=(1, 1, 1), params={"e": 1, "f": 1, "m": 3000, "n": 3000}),
        RuleCertificate(rule="geometric", triple=(7, 7, 28), params={"q": 2, "n": 10**6, "d": 5}),
        RuleCertificate(rule="nminus1", triple=(3, 3, 6), params={"n": 3}),
        GraphCertificate(triple=(3000, 3000, 9_000_000), graph="bipartite 3000 3000\n"),
        ProductCertificate(triple=(3, 3, 6), factors=[]),
    ]
    for cert in forged:
        verdict = Verdict(triple=cert.triple, outcome=Outcome.REALIZABLE, certificate=cert)
        with pytest.raises(CertificateError):
            verify_verdict(verdict)


def test_rule_side_conditions_are_rechecked():
    # (4, 4, 8) has the phi_prime shape with p = 2, but 2 divides 4
    cert = RuleCertificate(rule="phi_prime", triple=(4, 4, 8), params={"n": 4, "p": 2, "e": 1})
    with pytest.raises(CertificateError, match="prime dividing"):
        implied_triple(cert)
    window = RuleCertificate(rule="prime_window", triple=(5, 5, 15), params={"n": 5, "p": 3, "l": 1})
    with pytest.raises(CertificateError):
        implied_triple(window)


def test_refutation_cannot_prove_realizability():
    verdict = verdict_for(5, 5, 15)
    with pytest.raises(CertificateError):
        verify_verdict(verdict.model_copy(update={"outcome": Outcome.REALIZABLE}))


def test_refutation_hypotheses_are_rechecked():
    wrong = TheoremRefutation(theorem="nminus2", triple=(5, 10, 30), params={"n": 5, "l": 2})
    with pytest.raises(CertificateError):
        verify_verdict(Verdict(triple=(5, 10, 30), outcome=Outcome.NOT_REALIZABLE, certificate=wrong))
    window = TheoremRefutation(theorem="prime_window", triple=(5, 5, 15), params={"n": 5, "p": 3, "l": 1})
    verify_verdict(Verdict(triple=(5, 5, 15), outcome=Outcome.NOT_REALIZABLE, certificate=window))


def test_wrong_normalized_flag_is_rejected():
    verdict = verdict_for(10, 5, 30)
    assert verdict.normalized
    with pytest.raises(CertificateError):
        verify_verdict(verdict.model_copy(update={"normalized": False}))


def test_necessary_failure_replay():
    ok = NecessaryFailure(triple=(3, 3, 12), condition="c_at_most_ab")
    verify_verdict(Verdict(triple=(3, 3, 12), outcome=Outcome.NOT_REALIZABLE, certificate=ok))
    wrong = NecessaryFailure(triple=(3, 3, 12), condition="lcm_divides_c")
    with pytest.raises(CertificateError):
        verify_verdict(Verdict(triple=(3, 3, 12), outcome=Outcome.NOT_REALIZABLE, certificate=wrong))


def test_oracle_exhaustion_is_rerun():
    def exhausted(t):
        return OracleExhausted(triple=t, stats=OracleStats(), max_candidates=10**6, search_budget=10**7)

    verify_verdict(Verdict(triple=(5, 5, 15), outcome=Outcome.NOT_REALIZABLE, certificate=exhausted((5, 5, 15))))
    with pytest.raises(CertificateError):
        verify_verdict(Verdict(triple=(3, 3, 6), outcome=Outcome.NOT_REALIZABLE, certificate=exhausted((3, 3, 6))))


def test_oracle_rerun_is_held_to_the_verifier_budget():
    claimed = OracleExhausted(triple=(5, 5, 15), stats=OracleStats(), max_candidates=10**12, search_budget=10**12)
    verdict = Verdict(triple=(5, 5, 15), outcome=Outcome.NOT_REALIZABLE, certificate=claimed)
    with pytest.raises(CertificateError, match="exceeded"):
        verify_verdict(verdict, DeciderConfig(search_budget=3))


def test_unknown_has_no_witness():
    verdict = Verdict(triple=(11, 11, 44), outcome=Outcome.UNKNOWN, reason="oracle_disabled")
    verify_verdict(verdict)
    with pytest.raises(CertificateError):
        verdict_witness(verdict)


def test_verdict_table():
    verdicts = classify(5, 5)
    table = verdict_table(list(reversed(verdicts)))
    assert list(table.columns) == ["a", "b", "c", "outcome", "certificate"]
    assert list(table.itertuples(index=False))[0][:3] == (1, 1, 1)
    refuted = table[table["outcome"] == "not_realizable"]
    assert refuted["certificate"].tolist() == ["theorem:nminus2(n=5,l=1)"]
    counts = outcome_counts(verdicts)
    assert counts["not_realizable"] == 1
    assert counts["unknown"] == 0
    assert sum(counts.values()) == len(verdicts)


def test_unknown_reasons_are_the_ones_decide_produces():
    for reason in ("oracle_disabled", "oracle_budget_exceeded"):
        Verdict(triple=(11, 11, 44), outcome=Outcome.UNKNOWN, reason=reason)
    with pytest.raises(ValidationError):
        Verdict(triple=(11, 11, 44), outcome=Outcome.UNKNOWN, reason="no_rule_matched")


def test_decided_product_with_a_transposed_factor_replays():
    verdict = verdict_for(10, 10, 40)
    cert = verdict.certificate
    assert isinstance(cert, ProductCertificate)
    assert [f.transposed for f in cert.factors] == [False, True]
    assert cert.summary() == "product:(1,2,2)*(10,5,20)"
    verify_verdict(verdict)
    g = verdict_witness(verdict)
    assert (g.a, g.b, g.edge_count) == (10, 10, 40)
    assert is_edge_transitive(g)
