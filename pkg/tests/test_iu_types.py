import pytest

from app.exceptions import IncompatibleContextError, ParseError
from app.iu_types import (
    BOT, TOP, Arrow, Inter, Union, Var, arrows_of, ctx_compatible_union, ctx_equiv, ctx_merge_inter,
    ctx_merge_union, equiv, is_intersection, is_simple, is_union, leq, mk_inter, mk_union, normalize,
    parse_contexts, parse_type, show_judgement_contexts, show_type, subformulas,
)

A, B, C = Var("A"), Var("B"), Var("C")


########################
# Parsing and printing #
########################

def test_arrow_is_right_associative():
    assert parse_type("A -> B -> C") == Arrow(A, Arrow(B, C))


def test_meet_and_join_share_precedence():
    assert parse_type("A & B | C") == Union(Inter(A, B), C)
    assert parse_type("A | B & C") == Inter(Union(A, B), C)
    assert parse_type("A & B & C | A -> B") == Arrow(Union(Inter(A, Inter(B, C)), A), B)


def test_units():
    assert parse_type("TOP") == TOP
    assert parse_type("BOT") == BOT


@pytest.mark.parametrize("text", [
    "((A -> B) -> A) -> A",
    "(A & B) | C",
    "A & (B | C)",
    "(A -> B) & (C -> A)",
    "TOP -> BOT",
])
def test_show_round_trip(text):
    assert show_type(parse_type(text)) == text


@pytest.mark.parametrize("text", ["A ->", "A B", "(A", "& A", "A %"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_type(text)


########################
# Preorder              #
########################

def test_lattice_basics():
    assert leq(Inter(A, B), A)
    assert leq(A, Union(A, B))
    assert not leq(A, Inter(A, B))
    assert leq(BOT, A) and leq(A, TOP)
    assert not leq(TOP, A)


def test_no_distributivity():
    left, right = parse_type("A | (B & C)"), parse_type("(A | B) & (A | C)")
    assert leq(left, right)
    assert not leq(right, left)


def test_arrows_have_no_variance():
    assert not leq(parse_type("(A & B) -> C"), parse_type("A -> C"))
    assert not leq(parse_type("A -> C"), parse_type("(A & B) -> C"))
    assert not leq(parse_type("A -> B & C"), parse_type("A -> B"))


def test_arrows_compare_modulo_equivalence():
    assert equiv(parse_type("(A & B) -> C"), parse_type("(B & A) -> C"))


def test_meet_of_arrows():
    assert leq(parse_type("(A -> B) & (C -> A)"), parse_type("C -> A"))


########################
# Canonical forms       #
########################

def test_normalize_idempotent_meet():
    assert normalize(Inter(A, A)) == A


def test_normalize_orders_components():
    assert normalize(Inter(B, A)) == Inter(A, B)


def test_normalize_absorption():
    assert normalize(Union(A, Inter(A, B))) == A
    assert normalize(Inter(A, Union(A, B))) == A


def test_normalize_units():
    assert normalize(Inter(A, TOP)) == A
    assert normalize(Union(A, TOP)) == TOP
    assert normalize(Inter(A, BOT)) == BOT


def test_empty_spines():
    assert mk_inter([]) == TOP
    assert mk_union([]) == BOT
    assert mk_inter([A, B, C]) == Inter(A, Inter(B, C))


def test_shape_predicates():
    assert is_simple(parse_type("(A -> B) -> A"))
    assert not is_simple(parse_type("A & B"))
    assert is_intersection(parse_type("A & B"))
    assert is_intersection(TOP)
    assert not is_intersection(Inter(A, A))
    assert is_union(BOT)


def test_arrows_of():
    t = parse_type("(A -> B) & C | (C -> A)")
    assert set(arrows_of(t)) == {Arrow(A, B), Arrow(C, A)}


def test_subformulas():
    assert subformulas(parse_type("A -> B")) == {Arrow(A, B), A, B}


########################
# Contexts              #
########################

def test_parse_contexts():
    gamma, delta = parse_contexts("x:A&(A->C), y:B |- a:C")
    assert gamma == {"x": Inter(A, Arrow(A, C)), "y": B}
    assert delta == {"a": C}


def test_parse_empty_side():
    gamma, delta = parse_contexts("|- g:((A->B)->A)->A")
    assert gamma == {}
    assert show_judgement_contexts(gamma, delta) == "|- g:((A -> B) -> A) -> A"


@pytest.mark.parametrize("text", ["x:A", "x:A, x:B |-", "x |- a:A", "1x:A |-"])
def test_parse_contexts_errors(text):
    with pytest.raises(ParseError):
        parse_contexts(text)


def test_context_merges():
    assert ctx_merge_inter({"x": A}, {"x": B, "y": C}) == {"x": Inter(A, B), "y": C}
    assert ctx_merge_union({"a": B}, {"a": A}) == {"a": Union(A, B)}


def test_compatible_union():
    assert ctx_compatible_union({"x": Inter(A, B)}, {"x": Inter(B, A), "y": C}) == {"x": Inter(A, B), "y": C}
    with pytest.raises(IncompatibleContextError):
        ctx_compatible_union({"x": A}, {"x": B})


def test_ctx_equiv():
    assert ctx_equiv({"x": Inter(A, B)}, {"x": Inter(B, A)})
    assert not ctx_equiv({"x": A}, {"x": A, "y": B})
