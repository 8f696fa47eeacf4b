import pytest
from unittest.mock import Mock

from app.exceptions import ParseError, ValidationError
from app.history import RuleCountObserver
from app.lambda_bridge import translate
from app.lambda_terms import parse_lambda
from app.net_parser import parse_net
from app.reduction import reduce, reduction_graph
from app.rewrite import Redex, Regime, RuleId
from app.strategies import ChooserFactory, DeterministicFirst, RandomChoice
from app.syntax import alpha_eq, show_net
from app.trace import TraceStep


########################
# reduce               #
########################

def test_reduce_critical_pair_to_left(critical_pair):
    trace = reduce(critical_pair, Regime.FULL)
    assert [s.redex.rule for s in trace.steps] == [RuleId.ActL, RuleId.DL_cap]
    assert show_net(trace.final) == "<y.b>"
    assert not trace.exhausted


@pytest.mark.parametrize("regime, expected", [(Regime.CBN, "<z.c>"), (Regime.CBV, "<y.b>")])
def test_reduce_per_regime(critical_pair, regime, expected):
    assert show_net(reduce(critical_pair, regime).final) == expected


def test_fuel_exhaustion(critical_pair):
    trace = reduce(critical_pair, Regime.FULL, fuel=1)
    assert len(trace.steps) == 1
    assert trace.exhausted


def test_zero_fuel(critical_pair):
    trace = reduce(critical_pair, Regime.FULL, fuel=0)
    assert trace.steps == []
    assert trace.final == critical_pair
    assert trace.exhausted


def test_normal_form_is_not_exhausted(peirce_net):
    trace = reduce(peirce_net, Regime.FULL, fuel=0)
    assert not trace.exhausted
    assert trace.final == peirce_net


def test_negative_fuel(critical_pair):
    with pytest.raises(ValueError):
        reduce(critical_pair, fuel=-1)


def test_observers_see_every_step(critical_pair):
    counter = RuleCountObserver()
    spy = Mock()
    trace = reduce(critical_pair, Regime.CBN, observers=[counter, spy])
    assert counter.counts == {'ActR': 1, 'DR_cap': 1}
    assert spy.update.call_count == len(trace.steps)


def test_random_chooser_is_seeded(critical_pair):
    first = reduce(critical_pair, chooser=RandomChoice(3)).final
    second = reduce(critical_pair, chooser=RandomChoice(3)).final
    assert first == second
    assert show_net(first) in ("<y.b>", "<z.c>")


########################
# Reduction graphs     #
########################

def test_graph_of_critical_pair(critical_pair):
    graph = reduction_graph(critical_pair, Regime.FULL)
    assert len(graph.nodes) == 5
    assert sorted(show_net(n) for n in graph.sinks()) == ["<y.b>", "<z.c>"]
    assert not graph.truncated
    assert graph.contains(parse_net("<y.b>"))


def test_restricted_graphs_are_confluent(critical_pair):
    assert len(reduction_graph(critical_pair, Regime.CBN).sinks()) == 1
    assert len(reduction_graph(critical_pair, Regime.CBV).sinks()) == 1


def test_graph_truncation(critical_pair):
    graph = reduction_graph(critical_pair, Regime.FULL, node_budget=1)
    assert graph.truncated
    assert "TRUNCATED" in graph.to_text()
    assert all(not alpha_eq(n, critical_pair) for n in graph.sinks())


def test_graph_identifies_alpha_equivalent_nets():
    graph = reduction_graph(parse_net("<x.a>"))
    index, new = graph.add(parse_net("<x.a>"))
    assert index == 0 and not new


def test_graph_dataframe(critical_pair):
    df = reduction_graph(critical_pair).to_dataframe()
    assert list(df.columns) == ['source', 'target', 'rule', 'path', 'source_net', 'target_net']
    assert len(df) == 4
    assert set(df['rule']) == {'ActL', 'ActR', 'DL_cap', 'DR_cap'}


########################
# Traces               #
########################

def test_trace_text(critical_pair):
    text = reduce(critical_pair).to_text().splitlines()
    assert text[0] == "START: <y.b> a^ + x^ <z.c>"
    assert text[1] == "STEP 1: ActL @ root  ==>  <y.b> a^ <+ x^ <z.c>"
    assert text[-1] == "END: normal form"


def test_trace_dataframe_and_json(critical_pair):
    trace = reduce(critical_pair)
    df = trace.to_dataframe()
    assert list(df.columns) == ['step', 'rule', 'path', 'net']
    assert df.iloc[1]['net'] == "<y.b>"
    assert '"rule": "DL_cap"' in trace.to_json()


def test_trace_step_from_dict():
    step = TraceStep.from_dict({'step': '2', 'rule': 'DL_cap', 'path': '0', 'net': '<y.b>'})
    assert step.index == 2
    assert step.redex == Redex((0,), RuleId.DL_cap)
    assert show_net(step.net) == "<y.b>"


def test_trace_step_unknown_rule():
    with pytest.raises(ParseError):
        TraceStep.from_dict({'step': 1, 'rule': 'Beta', 'path': 'root', 'net': '<x.a>'})


########################
# Choosers             #
########################

def test_chooser_factory():
    assert isinstance(ChooserFactory.create("first"), DeterministicFirst)
    chooser = ChooserFactory.create("RANDOM", seed=5)
    assert isinstance(chooser, RandomChoice)
    assert chooser.seed == 5
    assert ChooserFactory.names() == ['first', 'random']
    assert str(chooser) == "RandomChoice"


def test_chooser_factory_unknown():
    with pytest.raises(ValidationError):
        ChooserFactory.create("outermost")


def test_chooser_prefers_lower_ordinal():
    redexes = [Redex((), RuleId.DL_cut), Redex((0, 1), RuleId.ImpL), Redex((1,), RuleId.ImpL)]
    assert DeterministicFirst().choose(redexes) == Redex((0, 1), RuleId.ImpL)


########################
# Self-application     #
########################

@pytest.fixture
def self_application():
    return translate(parse_lambda("(\\x.x x)(\\y.y)"), "a")


@pytest.mark.parametrize("regime", [Regime.FULL, Regime.CBN, Regime.CBV])
def test_self_application_reaches_identity(self_application, regime):
    trace = reduce(self_application, regime, fuel=200)
    assert not trace.exhausted
    assert alpha_eq(trace.final, parse_net("y^ <y.s> s^ . a"))


def test_self_application_at_default_fuel(self_application):
    trace = reduce(self_application)
    assert not trace.exhausted
    assert len(trace.steps) <= 200


@pytest.mark.parametrize("regime", [Regime.CBN, Regime.CBV])
def test_self_application_graph_has_one_sink(self_application, regime):
    graph = reduction_graph(self_application, regime, node_budget=5_000)
    assert not graph.truncated
    sinks = graph.sinks()
    assert len(sinks) == 1
    assert alpha_eq(sinks[0], parse_net("y^ <y.s> s^ . a"))


########################
# Deep nets            #
########################

def test_reduce_stops_on_a_net_too_deep(critical_pair, monkeypatch):
    def overflow(*args, **kwargs):
        raise RecursionError("maximum recursion depth exceeded")

    monkeypatch.setattr("app.reduction.step", overflow)
    trace = reduce(critical_pair, Regime.FULL)
    assert trace.exhausted
    assert trace.steps == []
    assert trace.to_text().splitlines()[-1] == "END: fuel exhausted"


def test_graph_stops_on_a_net_too_deep(critical_pair, monkeypatch):
    def overflow(*args, **kwargs):
        raise RecursionError("maximum recursion depth exceeded")

    monkeypatch.setattr("app.reduction.step", overflow)
    graph = reduction_graph(critical_pair, Regime.FULL)
    assert graph.truncated
    assert graph.sinks() == []
