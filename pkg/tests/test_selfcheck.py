import pytest

import utils.decider
import utils.selfcheck
from utils.selfcheck import CHECKS, CheckResult, group_corpus, load_golden_refutations, run_checks
from utils.permgroup import triple_indices


def test_golden_refutations_file():
    assert load_golden_refutations() == {
        (5, 5, 15), (7, 7, 35), (8, 8, 40), (9, 9, 45), (9, 9, 63), (10, 10, 70)
    }


def test_group_corpus_stays_small():
    corpus = group_corpus(100_000)
    assert all(t.G.order <= 5000 for _, t in corpus)
    names = dict(corpus)
    assert triple_indices(names["s4_sylow_pair"]).as_tuple() == (8, 8, 24)


def test_quick_checks_pass():
    results = run_checks(["cig-bijection", "groups-to-graphs", "geometric", "iff-spot", "oracle-5-5-15"])
    assert [r.name for r in results] == ["cig-bijection", "groups-to-graphs", "geometric", "iff-spot", "oracle-5-5-15"]
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_unknown_check_name():
    with pytest.raises(ValueError):
        run_checks(["no-such-check"])


def test_broken_rule_is_reported_by_name(monkeypatch):
    monkeypatch.setattr(utils.decider, "nminus2_realizable", lambda n, l: True)
    [result] = run_checks(["iff-spot"])
    assert result.name == "iff-spot"
    assert not result.passed


def test_raising_check_is_a_failure(monkeypatch):
    def explode(config):
        raise RuntimeError("boom")

    monkeypatch.setitem(utils.selfcheck.CHECKS, "geometric", explode)
    [result] = run_checks(["geometric"])
    assert result == CheckResult(name="geometric", passed=False, detail="RuntimeError: boom")


@pytest.mark.slow
def test_full_suite_passes():
    results = run_checks(list(CHECKS))
    assert all(r.passed for r in results), [r for r in results if not r.passed]
