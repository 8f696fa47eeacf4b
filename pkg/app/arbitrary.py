########################
# Hypothesis Strategies #
########################

"""
Hypothesis strategies for types, nets, typed derivations and lambda terms.

Types are drawn natively. Nets, derivations and lambda terms come from the
generators in ``app.generators`` fed with a ``Random`` seeded from the
hypothesis data, so every draw replays from the seed of the run.
"""

from typing import Sequence

import hypothesis
import hypothesis.strategies as s

from app.derivation import Derivation, System
from app.exceptions import ShapeError
from app.generators import TypedNetGenerator, add_wrappers, random_lambda, random_net
from app.iu_types import BOT, TOP, Arrow, Inter, Union, Var

VARIABLES = (Var("A"), Var("B"), Var("C"))

s_randoms = s.randoms(use_true_random=True)


def type_atoms(variables: Sequence[str] = ("A", "B", "C")) -> s.SearchStrategy:
    return s.one_of(
        s.sampled_from([Var(v) for v in variables]),
        s.sampled_from([TOP, BOT]),
    )


def s_types_extend(parts):
    return s.one_of(
        s.builds(Arrow, parts, parts),
        s.builds(Inter, parts, parts),
        s.builds(Union, parts, parts),
    )


def types(variables: Sequence[str] = ("A", "B", "C"), max_leaves: int = 8) -> s.SearchStrategy:
    return s.recursive(type_atoms(variables), s_types_extend, max_leaves=max_leaves)


s_types = types()
s_simple_types = s.recursive(s.sampled_from(VARIABLES), lambda parts: s.builds(Arrow, parts, parts),
                             max_leaves=6)


def nets(depth: int = 4, free: int = 2) -> s.SearchStrategy:
    """Barendregt nets over ``free`` sockets and plugs, up to ``depth`` constructors deep."""
    return s.builds(random_net, s_randoms, depth=s.integers(0, depth), free=s.just(free))


@s.composite
def derivations(draw, system: System = System.SIMPLE, depth: int = 5, wrappers: bool = False) -> Derivation:
    """
    Derivations of random nets in ``system``, built rule by rule.

    With ``wrappers`` the derivation is also wrapped in interR/unionL
    absorption splits wherever the system allows them.
    """
    generator = TypedNetGenerator(draw(s_randoms), system)
    try:
        d = generator.derivation(depth, attempts=20)
    except ShapeError:
        hypothesis.reject()
    if wrappers:
        d = add_wrappers(d, draw(s_randoms), rate=draw(s.sampled_from([0.3, 0.6])))
    return d


def lambda_terms(size: int = 12) -> s.SearchStrategy:
    return s.integers(3, size).flatmap(lambda k: s.builds(random_lambda, s_randoms, size=s.just(k)))
