import pytest

from app.checker import check_derivation
from app.derivation import AX, CUT, System, node
from app.exceptions import ExpansionShapeError
from app.expansion import CASES, expand
from app.derivation import Derivation, Judgement
from app.iu_types import Var, ctx_equiv, parse_type
from app.net_parser import parse_net
from app.rewrite import Redex, RuleId, step
from app.search import search
from app.syntax import alpha_eq

A, Z = Var("A"), Var("Z")


def axiom(text, gamma, delta, system=System.IU):
    return node(system, AX, parse_net(text), gamma, delta)


def test_axiom_expansion():
    reduct = axiom("<y.b>", {"y": A}, {"b": A})
    result = expand(reduct, parse_net("<y.a> a^ + x^ <x.b>"), Redex((), RuleId.Ax))
    assert result.rule == CUT
    assert check_derivation(result)
    assert ctx_equiv(result.gamma, reduct.gamma) and ctx_equiv(result.delta, reduct.delta)


def test_garbage_is_typed_back():
    reduct = axiom("<y.b>", {"y": A, "z": Z}, {"b": A, "c": Z})
    result = expand(reduct, parse_net("<y.b> a^ <+ x^ <z.c>"), Redex((), RuleId.DL_cap))
    assert check_derivation(result)
    assert ctx_equiv(result.gamma, reduct.gamma)


def test_simple_derivation_is_relabelled():
    reduct = axiom("<y.b>", {"y": A}, {"b": A}, System.SIMPLE)
    result = expand(reduct, parse_net("<y.a> a^ + x^ <x.b>"), Redex((), RuleId.Ax))
    assert result.system is System.IU


def test_restricted_systems_are_rejected():
    reduct = axiom("<y.b>", {"y": A}, {"b": A}, System.CBN)
    with pytest.raises(ExpansionShapeError):
        expand(reduct, parse_net("<y.a> a^ + x^ <x.b>"), Redex((), RuleId.Ax))


def test_derivation_must_type_the_reduct():
    reduct = axiom("<y.c>", {"y": A}, {"c": A})
    with pytest.raises(ExpansionShapeError):
        expand(reduct, parse_net("<y.a> a^ + x^ <x.b>"), Redex((), RuleId.Ax))


def test_renaming_rules_have_no_expansion():
    assert RuleId.Ren_L not in CASES
    reduct = axiom("<y.b>", {"y": A}, {"b": A})
    with pytest.raises(ExpansionShapeError):
        expand(reduct, parse_net("<y.a> a^ + x^ <x.b>"), Redex((), RuleId.Ren_L))


def test_export_with_unused_bound_plug():
    n = parse_net("(y^ <y.a> b^ . a) a^ <+ x^ <x.c>")
    redex = Redex((), RuleId.DL_expOuts)
    goal = Judgement(step(n, redex), {}, {"c": parse_type("(A -> B) | A")})
    found = search(goal, System.IU)
    assert isinstance(found, Derivation)
    result = expand(found, n, redex)
    assert check_derivation(result)
    assert alpha_eq(result.net, n)
    assert ctx_equiv(result.delta, found.delta)
