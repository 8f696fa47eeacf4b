import pytest

from app.exceptions import ParseError
from app.lambda_terms import (
    Abs, App, ExplicitSub, LVar, beta_step, free_vars, is_barendregt_term, lambda_alpha_eq, normal_form,
    parse_lambda, rename_bound, show_lambda, substitute, term_size,
)

x, y, z = LVar("x"), LVar("y"), LVar("z")


def test_parse_several_binders():
    assert parse_lambda("\\x y.x") == Abs("x", Abs("y", x))


def test_application_is_left_associative():
    assert parse_lambda("x y z") == App(App(x, y), z)


def test_lambda_symbol():
    assert parse_lambda("λx.x") == Abs("x", x)


def test_trailing_abstraction_is_an_argument():
    assert parse_lambda("x \\y.y") == App(x, Abs("y", y))


def test_explicit_substitution():
    assert parse_lambda("x<x:=y>") == ExplicitSub(x, "x", y)


@pytest.mark.parametrize("text", [
    "\\x y.x",
    "(\\x.x x) (\\y.y)",
    "x (y z)",
    "x<x:=y z>",
    "(x y)<x:=z>",
])
def test_show_round_trip(text):
    assert show_lambda(parse_lambda(text)) == text


@pytest.mark.parametrize("text, position", [
    ("\\x.", 3),
    ("(x", 2),
    ("x )", 2),
    ("x $", 2),
])
def test_parse_errors(text, position):
    with pytest.raises(ParseError) as exc_info:
        parse_lambda(text)
    assert exc_info.value.position == position


def test_free_vars():
    assert free_vars(parse_lambda("\\x.x y")) == {"y"}
    assert free_vars(parse_lambda("x<x:=z>")) == {"z"}


def test_substitute_avoids_capture():
    result = substitute(parse_lambda("\\y.x"), "x", y)
    assert lambda_alpha_eq(result, parse_lambda("\\z.y"))
    assert result.var != "y"


def test_substitute_stops_at_rebinding():
    term = parse_lambda("\\x.x")
    assert substitute(term, "x", y) == term


def test_alpha_equivalence():
    assert lambda_alpha_eq(parse_lambda("\\x.x"), parse_lambda("\\y.y"))
    assert not lambda_alpha_eq(parse_lambda("\\x.y"), parse_lambda("\\y.y"))


def test_rename_bound():
    term = rename_bound(parse_lambda("(\\x.x) (\\x.x)"))
    assert is_barendregt_term(term)
    assert term.fun.var == "x"
    assert term.arg.var != "x"


def test_rename_bound_respects_taken():
    assert rename_bound(parse_lambda("\\a.a"), taken={"a"}).var != "a"


def test_beta_step_outermost_first():
    reducts = beta_step(parse_lambda("(\\x.x) ((\\y.y) z)"))
    assert len(reducts) == 2
    assert reducts[0] == parse_lambda("(\\y.y) z")


def test_beta_step_values_only():
    reducts = beta_step(parse_lambda("(\\x.x) ((\\y.y) z)"), values_only=True)
    assert reducts == [parse_lambda("(\\x.x) z")]


def test_normal_form():
    result = normal_form(parse_lambda("(\\x.x x) (\\y.y)"))
    assert lambda_alpha_eq(result, parse_lambda("\\y.y"))


def test_normal_form_runs_out_of_fuel():
    assert normal_form(parse_lambda("(\\x.x x) (\\x.x x)"), fuel=10) is None


def test_term_size():
    assert term_size(parse_lambda("(\\x.x) y")) == 4
