import hypothesis
import hypothesis.strategies as s

from app.arbitrary import derivations, lambda_terms, nets, s_simple_types, s_types
from app.checker import check_derivation
from app.derivation import System
from app.iu_types import equiv, is_simple, normalize, parse_type, show_type
from app.lambda_bridge import translate
from app.lambda_terms import free_vars
from app.net_parser import parse_net
from app.reduction import reduce
from app.rewrite import Regime, find_redexes, step
from app.syntax import (
    Capsule, Export, Import, alpha_eq, canonical, free_plugs, free_sockets, is_barendregt, refresh,
    show_net,
)


def interface(n):
    """Free sockets and plugs read off the binding structure."""
    if isinstance(n, Capsule):
        return {n.socket}, {n.plug}
    if isinstance(n, Export):
        sockets, plugs = interface(n.body)
        return sockets - {n.bind_socket}, (plugs - {n.bind_plug}) | {n.out}
    left_s, left_p = interface(n.left)
    right_s, right_p = interface(n.right)
    sockets = left_s | (right_s - {n.bind_socket})
    plugs = (left_p - {n.bind_plug}) | right_p
    if isinstance(n, Import):
        sockets |= {n.mid}
    return sockets, plugs


########################
# Types                #
########################

@hypothesis.given(s_types)
def test_normalize_is_idempotent(t):
    assert normalize(normalize(t)) == normalize(t)
    assert equiv(normalize(t), t)


@hypothesis.given(s_types)
def test_printed_type_parses_back(t):
    assert equiv(parse_type(show_type(t)), t)


@hypothesis.given(s_simple_types)
def test_simple_types_are_simple(t):
    assert is_simple(t)


########################
# Nets                 #
########################

@hypothesis.given(nets())
@hypothesis.settings(max_examples=200)
def test_drawn_nets_are_barendregt(n):
    assert is_barendregt(n)


@hypothesis.given(nets())
@hypothesis.settings(max_examples=300)
def test_free_connectors_match_binding_structure(n):
    sockets, plugs = interface(n)
    assert set(free_sockets(n)) == sockets
    assert set(free_plugs(n)) == plugs


@hypothesis.given(nets())
def test_alpha_eq_is_an_equivalence(n):
    renamed = refresh(n)
    twice = refresh(renamed)
    assert alpha_eq(n, n)
    assert alpha_eq(n, renamed) and alpha_eq(renamed, n)
    assert alpha_eq(renamed, twice) and alpha_eq(n, twice)


@hypothesis.given(nets(), nets())
def test_alpha_eq_is_decided_by_canonical_print(first, second):
    same = show_net(canonical(first)) == show_net(canonical(second))
    assert same == alpha_eq(first, second)


@hypothesis.given(nets())
@hypothesis.settings(max_examples=300)
def test_printed_net_parses_back(n):
    assert alpha_eq(parse_net(show_net(n)), n)
    assert alpha_eq(parse_net(show_net(refresh(n))), n)


########################
# Reduction            #
########################

@hypothesis.given(nets(depth=3))
@hypothesis.settings(max_examples=200, deadline=None)
def test_steps_never_widen_the_interface(n):
    sockets, plugs = free_sockets(n), free_plugs(n)
    for redex in find_redexes(n, Regime.FULL, include_admissible=True):
        result = step(n, redex)
        assert free_sockets(result) <= sockets
        assert free_plugs(result) <= plugs
        assert is_barendregt(result)


@hypothesis.given(nets(), s.sampled_from([Regime.CBN, Regime.CBV]))
@hypothesis.settings(max_examples=300)
def test_restricted_redexes_are_full_redexes(n, regime):
    full = set(find_redexes(n, Regime.FULL))
    assert set(find_redexes(n, regime)) <= full


@hypothesis.given(nets(depth=3), s.sampled_from(list(Regime)))
@hypothesis.settings(max_examples=100, deadline=None)
def test_reduce_is_deterministic(n, regime):
    first = reduce(n, regime, fuel=50)
    second = reduce(n, regime, fuel=50)
    assert [entry.redex for entry in first.steps] == [entry.redex for entry in second.steps]
    assert first.final == second.final
    assert first.exhausted == second.exhausted


########################
# Derivations          #
########################

@hypothesis.given(s.sampled_from(list(System)).flatmap(lambda system: derivations(system, depth=4)))
@hypothesis.settings(max_examples=60, deadline=None)
def test_drawn_derivations_check(d):
    assert check_derivation(d)


@hypothesis.given(s.sampled_from([System.IU, System.CBN, System.CBV])
                  .flatmap(lambda system: derivations(system, depth=4, wrappers=True)))
@hypothesis.settings(max_examples=60, deadline=None)
def test_wrapped_derivations_keep_their_conclusion(d):
    assert check_derivation(d)
    assert is_barendregt(d.net)


@hypothesis.given(lambda_terms())
@hypothesis.settings(max_examples=100)
def test_translation_interface(m):
    n = translate(m, "a")
    assert set(free_sockets(n)) == set(free_vars(m))
    assert set(free_plugs(n)) == {"a"}
    assert is_barendregt(n)
