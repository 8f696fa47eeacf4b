import pytest

from app.exceptions import NamespaceClashError, ParseError
from app.net_parser import parse_net, print_net, tokenize
from app.syntax import Activation, Capsule, Cut, Export, Import, NameSupply, is_barendregt


def test_tokenize_offsets():
    assert tokenize("<x.a> a^ <+ y^ <y.b>") == [
        ("<", 0), ("x", 1), (".", 2), ("a", 3), (">", 4),
        ("a", 6), ("^", 7), ("<+", 9), ("y", 12), ("^", 13),
        ("<", 15), ("y", 16), (".", 17), ("b", 18), (">", 19),
    ]


def test_tokenize_bad_character():
    with pytest.raises(ParseError) as exc_info:
        tokenize("<x.a> $")
    assert exc_info.value.position == 6


def test_parse_capsule():
    assert parse_net("<x.a>") == Capsule("x", "a")


def test_parse_export():
    assert parse_net("x^ <x.b> b^ . a") == Export("x", Capsule("x", "b"), "b", "a")


def test_parse_import():
    n = parse_net("<u.b> b^ [w] y^ <y.e>")
    assert n == Import(Capsule("u", "b"), "b", "w", "y", Capsule("y", "e"))


@pytest.mark.parametrize("op, activation", [
    ("+", Activation.INACTIVE), ("<+", Activation.LEFT), ("+>", Activation.RIGHT),
])
def test_parse_cut_activation(op, activation):
    n = parse_net(f"<y.b> a^ {op} x^ <z.c>")
    assert isinstance(n, Cut)
    assert n.activation is activation


def test_caret_is_optional():
    assert parse_net("x <x.b> b . a") == parse_net("x^ <x.b> b^ . a")


@pytest.mark.parametrize("text", [
    "<x.a>",
    "x^ <x.b> b^ . a",
    "z^ (y^ <y.e> h^ . a) a^ [z] w^ <w.e> e^ . g",
    "(<x.g> g^ [x] v^ <v.a>) a^ + y^ (<y.d> d^ [y] w^ <w.b>)",
    "<w.a> a^ +> x^ (<u.b> b^ [x] y^ <x.e>)",
    "(x^ <x.d> b^ . d) d^ <+ z^ (v^ <z.a> a^ . g)",
])
def test_print_round_trip(text):
    assert print_net(parse_net(text)) == text


def test_parse_brings_net_into_barendregt_form():
    n = parse_net("<x.a> a^ + x^ <x.b>")
    assert is_barendregt(n)
    assert n.left == Capsule("x", "a")
    assert n.bind_socket != "x"


def test_parse_draws_from_session_supply():
    supply = NameSupply(reserved=["v0"])
    n = parse_net("<x.a> a^ + x^ <x.b>", supply)
    assert n.bind_socket == "v1"


def test_namespace_clash():
    with pytest.raises(NamespaceClashError) as exc_info:
        parse_net("<x.x>")
    assert exc_info.value.position == 1


def test_namespace_clash_across_binders():
    with pytest.raises(NamespaceClashError):
        parse_net("x^ <y.b> b^ . x")


@pytest.mark.parametrize("text, position", [
    ("<x.a", 4),
    ("<x.a> a^ +", 10),
    ("<x.a> <y.b>", 6),
    ("", 0),
])
def test_parse_errors_report_position(text, position):
    with pytest.raises(ParseError) as exc_info:
        parse_net(text)
    assert exc_info.value.position == position
