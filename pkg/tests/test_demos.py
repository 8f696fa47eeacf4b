import pytest

from app.demos import (
    DEMOS, FIRST_CBV_REDUCT, FIRST_CONTEXTS, FIRST_COUNTEREXAMPLE, SECOND_CBN_REDUCT,
    SECOND_CONTEXTS, SECOND_COUNTEREXAMPLE, DemoReport, DemoSettings, _restricted_rejects, run_demo,
)
from app.derivation import Judgement, System
from app.exceptions import RuleError
from app.iu_types import parse_contexts
from app.net_parser import parse_net
from app.reduction import reduce
from app.rewrite import Regime
from app.search import search
from app.syntax import alpha_eq

SMALL = DemoSettings(seed=0, cases=5)


def test_report_text():
    report = DemoReport("demo", ["line"])
    assert report.verdict == "FAIL"
    report.passed = True
    assert report.to_text() == "line\nVERDICT: PASS"


def test_demo_names():
    assert sorted(DEMOS) == [
        'cbn-preservation', 'cbv-preservation', 'counterexample-1', 'counterexample-2',
        'expansion', 'expansion-failure',
    ]


def test_unknown_demo():
    with pytest.raises(KeyError):
        run_demo("counterexample-3")


def test_first_counterexample_is_typable():
    gamma, delta = parse_contexts(FIRST_CONTEXTS)
    assert search(Judgement(parse_net(FIRST_COUNTEREXAMPLE), gamma, delta), System.IU)


def test_first_counterexample_cbv_reduct():
    final = reduce(parse_net(FIRST_COUNTEREXAMPLE), Regime.CBV).final
    assert alpha_eq(final, parse_net(FIRST_CBV_REDUCT))


def test_second_counterexample_cbn_reduct():
    final = reduce(parse_net(SECOND_COUNTEREXAMPLE), Regime.CBN).final
    assert alpha_eq(final, parse_net(SECOND_CBN_REDUCT))


@pytest.mark.parametrize("name", ['counterexample-1', 'counterexample-2', 'expansion-failure'])
def test_published_results_reproduce(name):
    report = run_demo(name, SMALL)
    assert report.passed, report.to_text()
    assert report.to_text().endswith("VERDICT: PASS")


def test_expansion_demo():
    report = run_demo('expansion', SMALL)
    assert report.lines[0].startswith("expansion:")


@pytest.mark.parametrize("name", ['cbn-preservation', 'cbv-preservation'])
def test_preservation_demos(name):
    report = run_demo(name, DemoSettings(seed=0, cases=20))
    assert report.passed, report.to_text()
    assert report.lines[0].startswith(name)


@pytest.mark.parametrize("system, text, contexts, reason", [
    (System.CBN, SECOND_COUNTEREXAMPLE, SECOND_CONTEXTS, "unionL on z needs it introduced"),
    (System.CBV, FIRST_COUNTEREXAMPLE, FIRST_CONTEXTS, "interR on a needs it introduced"),
])
def test_restricted_checker_rejects_the_split(system, text, contexts, reason):
    report = DemoReport("split")
    assert _restricted_rejects(report, system, text, contexts, SMALL), report.to_text()
    assert reason in report.to_text()


def test_other_rejections_do_not_count(monkeypatch):
    def reject(d):
        raise RuleError((0,), "premise sockets disagree")

    monkeypatch.setattr("app.demos.check_derivation", reject)
    report = DemoReport("split")
    assert not _restricted_rejects(report, System.CBN, SECOND_COUNTEREXAMPLE, SECOND_CONTEXTS, SMALL)
    assert "expected unionL on z needs it introduced" in report.to_text()
