import pytest

from app.checker import check_derivation
from app.derivation import AX, IMP_R, System
from app.exceptions import PreservationError, StaleRedexError
from app.iu_types import ctx_equiv
from app.net_parser import parse_net
from app.preservation import SYSTEM_REGIMES, preserve
from app.rewrite import Redex, Regime, RuleId, find_redexes
from app.simple_inference import derive_simple
from app.syntax import NameSupply, alpha_eq, show_net


def run_to_normal_form(d, regime, limit=50):
    supply = NameSupply()
    for _ in range(limit):
        redexes = find_redexes(d.net, regime)
        if not redexes:
            return d
        _, d = preserve(d, redexes[0], supply, regime)
    raise AssertionError("no normal form within the limit")


def test_system_regimes():
    assert SYSTEM_REGIMES[System.SIMPLE] is Regime.FULL
    assert SYSTEM_REGIMES[System.CBN] is Regime.CBN
    assert SYSTEM_REGIMES[System.CBV] is Regime.CBV


def test_axiom_step():
    d = derive_simple(parse_net("<y.a> a^ + x^ <x.b>"))
    reduct, result = preserve(d, Redex((), RuleId.Ax))
    assert show_net(reduct) == "<y.b>"
    assert result.rule == AX
    assert ctx_equiv(result.gamma, d.gamma) and ctx_equiv(result.delta, d.delta)


def test_export_renaming_step():
    d = derive_simple(parse_net("(x^ <x.c> d^ . a) a^ + y^ <y.b>"))
    reduct, result = preserve(d, Redex((), RuleId.ExpR))
    assert alpha_eq(reduct, parse_net("x^ <x.c> d^ . b"))
    assert result.rule == IMP_R
    assert check_derivation(result)
    assert ctx_equiv(result.delta, d.delta)


def test_critical_pair_in_simple(critical_pair):
    d = derive_simple(critical_pair)
    final = run_to_normal_form(d, Regime.FULL)
    assert show_net(final.net) == "<y.b>"
    assert ctx_equiv(final.gamma, d.gamma) and ctx_equiv(final.delta, d.delta)


def test_critical_pair_in_cbn(critical_pair):
    d = derive_simple(critical_pair).with_system(System.CBN)
    final = run_to_normal_form(d, Regime.CBN)
    assert show_net(final.net) == "<z.c>"
    assert final.system is System.CBN
    assert ctx_equiv(final.gamma, d.gamma)


def test_logical_redex_chain():
    d = derive_simple(parse_net("(x^ <x.b> c^ . a) a^ + y^ (<u.d> d^ [y] w^ <w.e>)"))
    final = run_to_normal_form(d, Regime.CBV)
    assert check_derivation(final)
    assert ctx_equiv(final.gamma, d.gamma) and ctx_equiv(final.delta, d.delta)


def test_step_must_be_legal_in_regime(critical_pair):
    d = derive_simple(critical_pair)
    with pytest.raises(StaleRedexError):
        preserve(d, Redex((), RuleId.ActR), regime=Regime.CBV)


def test_stale_redex(critical_pair):
    with pytest.raises(StaleRedexError):
        preserve(derive_simple(critical_pair), Redex((), RuleId.Ax))


def test_preservation_error_names_rule():
    error = PreservationError("DL_imp", "no single branch", (0, 1))
    assert error.rule == "DL_imp"
    assert error.path == (0, 1)
