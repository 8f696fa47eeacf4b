from app.iu_types import BOT, TOP, leq, parse_type
from app.type_oracle import ClosureOracle


def test_universe_is_closed_under_subformulas():
    oracle = ClosureOracle([parse_type("A -> B & C")])
    assert TOP in oracle.universe and BOT in oracle.universe
    assert parse_type("B & C") in oracle.universe
    assert oracle.universe[0] in (TOP, BOT, parse_type("A"))


def test_distributivity_is_one_way():
    left, right = parse_type("A | (B & C)"), parse_type("(A | B) & (A | C)")
    oracle = ClosureOracle([left, right])
    assert oracle.leq(left, right)
    assert not oracle.leq(right, left)
    assert oracle.disagreements() == []


def test_arrow_congruence():
    first, second = parse_type("(A & B) -> C"), parse_type("(B & A) -> C")
    oracle = ClosureOracle([first, second])
    assert oracle.leq(first, second) and oracle.leq(second, first)


def test_arrows_have_no_variance():
    narrow, wide = parse_type("(A & B) -> C"), parse_type("A -> C")
    oracle = ClosureOracle([narrow, wide])
    assert not oracle.leq(narrow, wide)
    assert not oracle.leq(wide, narrow)


def test_units():
    oracle = ClosureOracle([parse_type("A")])
    assert oracle.leq(BOT, TOP)
    assert not oracle.leq(TOP, BOT)
    assert oracle.rounds >= 1


def test_agrees_with_leq_on_mixed_types():
    types = [parse_type(t) for t in ("(A -> B) & (C -> A)", "(A | C) -> B", "A & (B | C)", "TOP -> BOT")]
    oracle = ClosureOracle(types)
    assert oracle.disagreements() == []
    for a in oracle.universe:
        for b in oracle.universe:
            assert oracle.leq(a, b) == leq(a, b)
