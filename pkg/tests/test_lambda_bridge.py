import pytest

from app.checker import check_derivation
from app.derivation import IMP_R, INTER_R, System
from app.exceptions import RuleError, ShapeError
from app.iu_types import Arrow, Inter, Var, parse_type
from app.lambda_bridge import (
    LC_ABS, LC_AX, LC_INTER_I, LCDerivation, check_curry, check_lc_inter, check_simulation,
    check_typing_preservation, curry_infer, derive_curry, simple_typing_of, translate,
)
from app.lambda_terms import Abs, LVar, parse_lambda
from app.net_parser import parse_net
from app.rewrite import Regime
from app.syntax import Activation, Capsule, Cut, Export, alpha_eq, is_barendregt, show_net

A, B = Var("A"), Var("B")
SELF_APPLICATION_NET = ("(x^ (<x.c> c^ + z^ (<x.d> d^ [z] w^ <w.e>)) e^ . b) b^ + "
                        "u^ ((y^ <y.s> s^ . g) g^ [u] v^ <v.a>)")


def identity_at(t):
    term = Abs("x", LVar("x"))
    return LCDerivation(LC_ABS, {}, term, Arrow(t, t), (LCDerivation(LC_AX, {"x": t}, LVar("x"), t),))


########################
# Translation          #
########################

def test_variable_is_a_capsule():
    assert translate(LVar("x")) == Capsule("x", "a")


def test_abstraction_is_an_export():
    assert translate(parse_lambda("\\x.x")) == Export("x", Capsule("x", "g0"), "g0", "a")


def test_application_is_a_cut_against_an_import():
    n = translate(parse_lambda("(\\x.x) y"))
    assert show_net(n) == "(x^ <x.g1> g1^ . g0) g0^ + v0^ (<y.g2> g2^ [v0] v1^ <v1.a>)"
    assert is_barendregt(n)


def test_self_application_translation():
    n = translate(parse_lambda("(\\x.x x)(\\y.y)"))
    assert alpha_eq(n, parse_net(SELF_APPLICATION_NET))


def test_plug_clash():
    with pytest.raises(ShapeError):
        translate(parse_lambda("\\a.a"), "a")


def test_explicit_substitution_needs_the_flag():
    term = parse_lambda("x<x:=y>")
    with pytest.raises(ShapeError):
        translate(term)
    n = translate(term, explicit_substitution=True)
    assert isinstance(n, Cut)
    assert n.activation is Activation.RIGHT


########################
# Simulation           #
########################

def test_simulation_of_identity_application():
    report = check_simulation(parse_lambda("(\\x.x) y"))
    assert report.verified
    assert report.checked == 1
    assert report.verdict() == "verified"


def test_simulation_of_normal_form_checks_nothing():
    report = check_simulation(parse_lambda("\\x.x"), Regime.CBV)
    assert report.checked == 0
    assert report.verified


########################
# Curry typing         #
########################

@pytest.mark.parametrize("text, expected", [
    ("\\x.x", "A -> A"),
    ("\\f x.f x", "(A -> B) -> A -> B"),
    ("\\x y.x", "A -> B -> A"),
])
def test_curry_infer_closed_terms(text, expected):
    gamma, t = curry_infer(parse_lambda(text))
    assert gamma == {}
    assert t == parse_type(expected)


def test_curry_infer_open_term():
    gamma, t = curry_infer(parse_lambda("f x"))
    assert t == A
    assert gamma == {"f": Arrow(B, A), "x": B}


def test_self_application_is_untypable():
    assert curry_infer(parse_lambda("\\x.x x")) is None
    assert derive_curry(parse_lambda("\\x.x x")) is None
    assert simple_typing_of(parse_lambda("\\x.x x")) is None


def test_derive_curry_checks():
    d = derive_curry(parse_lambda("\\f x.f x"))
    assert check_curry(d)
    assert d.pretty().startswith("(impI)  |- \\f x.f x : (A -> B) -> A -> B")


def test_simple_typing_of_identity():
    d = simple_typing_of(parse_lambda("\\x.x"))
    assert d.system is System.SIMPLE
    assert d.rule == IMP_R
    assert d.delta == {"a": Arrow(A, A)}
    assert check_derivation(d)


########################
# Intersection typing  #
########################

def test_intersection_typing_carries_over():
    d = LCDerivation(LC_INTER_I, {}, Abs("x", LVar("x")), Inter(Arrow(A, A), Arrow(B, B)),
                     (identity_at(A), identity_at(B)))
    assert check_lc_inter(d)
    with pytest.raises(RuleError):
        check_curry(d)
    result = check_typing_preservation(d)
    assert result.system is System.IU
    assert result.rule == INTER_R
    assert check_derivation(result)


def test_lc_checker_rejects_wrong_type():
    d = identity_at(A)
    d.type = Arrow(A, B)
    with pytest.raises(RuleError) as exc_info:
        check_lc_inter(d)
    assert exc_info.value.path == ()


def test_typing_preservation_rejects_plug_clash():
    d = LCDerivation(LC_AX, {"a": A}, LVar("a"), A)
    with pytest.raises(ShapeError):
        check_typing_preservation(d)
