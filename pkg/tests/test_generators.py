import random

import pytest

from app.checker import check_derivation
from app.derivation import AX, INTER_R, UNION_L, System, node
from app.generators import (
    TypedNetGenerator, absorb_plug, absorb_socket, add_wrappers, random_lambda, random_net,
)
from app.iu_types import Var, is_simple
from app.lambda_terms import free_vars, term_size
from app.syntax import Capsule, free_plugs, free_sockets, is_barendregt

A, Z = Var("A"), Var("Z")


@pytest.mark.parametrize("system", list(System))
def test_generated_derivations_check(system):
    generator = TypedNetGenerator(random.Random(7), system)
    for _ in range(5):
        d = generator.derivation(3)
        assert d.system is system
        assert is_barendregt(d.net)
        assert check_derivation(d)


def test_generation_is_seeded():
    first = TypedNetGenerator(random.Random(3)).derivation(4)
    second = TypedNetGenerator(random.Random(3)).derivation(4)
    assert first.net == second.net


def test_simple_generator_draws_simple_types():
    generator = TypedNetGenerator(random.Random(1), System.SIMPLE, type_depth=3)
    assert all(is_simple(generator.random_type()) for _ in range(50))


def test_absorb_plug_keeps_conclusion():
    d = node(System.IU, AX, Capsule("y", "a"), {"y": A}, {"a": A})
    wrapped = absorb_plug(d, "a", Z)
    assert wrapped.rule == INTER_R
    assert wrapped.delta == d.delta
    assert check_derivation(wrapped)


def test_absorb_socket_keeps_conclusion():
    d = node(System.IU, AX, Capsule("y", "a"), {"y": A}, {"a": A})
    wrapped = absorb_socket(d, "y", Z)
    assert wrapped.rule == UNION_L
    assert check_derivation(wrapped)


def test_add_wrappers_keeps_the_judgement():
    rng = random.Random(11)
    d = TypedNetGenerator(rng, System.CBN).derivation(3)
    wrapped = add_wrappers(d, rng, rate=1.0)
    assert wrapped.conclusion == d.conclusion
    assert wrapped.size() > d.size()
    assert check_derivation(wrapped)


def test_add_wrappers_leaves_simple_alone():
    d = TypedNetGenerator(random.Random(2)).derivation(3)
    assert add_wrappers(d, random.Random(2), rate=1.0) is d


def test_random_net_is_barendregt():
    rng = random.Random(5)
    for _ in range(20):
        n = random_net(rng, depth=4)
        assert is_barendregt(n)
        assert set(free_sockets(n)) <= {"u0", "u1"}
        assert set(free_plugs(n)) <= {"e0", "e1"}


def test_random_lambda_respects_size():
    rng = random.Random(9)
    for _ in range(20):
        m = random_lambda(rng, size=8)
        assert term_size(m) <= 8
        assert free_vars(m) <= {"f", "g"}
