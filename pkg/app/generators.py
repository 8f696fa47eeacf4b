########################
# Random Generators     #
########################

"""
Seeded generators for nets, typed derivations and lambda terms.

Typed generation works from an environment of connector types: free names
keep one type everywhere, and every binder gets a name that is fresh for the
whole run. Contexts of the premises of a node are therefore always
compatible, and the generated nets are in Barendregt form.
"""

import random
from typing import Dict, List, Optional, Sequence, Tuple

from app.checker import allowed_cut_rule
from app.derivation import INTER_R, STRUCTURAL_RULES, UNION_L, Derivation, System, node
from app.exceptions import ShapeError
from app.iu_types import (
    Arrow, IUType, Var, arrows_of, equiv, leq, mk_inter, mk_union, normalize,
)
from app.lambda_terms import Abs, App, LambdaTerm, LVar
from app.syntax import (
    Activation, Capsule, Cut, Export, Import, Net, free_plugs, free_sockets, introduces_plug,
    introduces_socket,
)
from app.transformers import (
    build_ax, build_cut, build_export, build_import, check_cut_side_conditions, extend, lift,
)

Env = Dict[str, IUType]


class TypedNetGenerator:
    """
    Random derivations of random nets in one system.

    Args:
        rng (random.Random): Source of randomness.
        system (System): Rule set the derivations are built in.
        variables (Sequence[str]): Type variables to draw from.
        type_depth (int): Maximum arrow nesting of generated types.
    """

    def __init__(self, rng: random.Random, system: System = System.SIMPLE,
                 variables: Sequence[str] = ("A", "B", "C"), type_depth: int = 2):
        self.rng = rng
        self.system = system
        self.variables = list(variables)
        self.type_depth = type_depth
        self._counter = 0

    def fresh(self, socket: bool) -> str:
        self._counter += 1
        return f"{'x' if socket else 'a'}{self._counter}"

    def random_type(self, depth: Optional[int] = None) -> IUType:
        depth = self.type_depth if depth is None else depth
        roll = self.rng.random()
        if depth > 0 and roll < 0.4:
            return Arrow(self.random_type(depth - 1), self.random_type(depth - 1))
        if self.system is not System.SIMPLE and depth > 0 and roll < 0.5:
            parts = [self.random_type(depth - 1), self.random_type(depth - 1)]
            return normalize(mk_inter(parts) if self.rng.random() < 0.5 else mk_union(parts))
        return Var(self.rng.choice(self.variables))

    def environment(self) -> Tuple[Env, Env]:
        """Two sockets and two plugs, one socket/plug pair sharing a type."""
        shared = self.random_type()
        sockets = {self.fresh(True): shared, self.fresh(True): self.random_type()}
        plugs = {self.fresh(False): shared, self.fresh(False): self.random_type()}
        arrow = Arrow(self.random_type(1), self.random_type(1))
        if self.rng.random() < 0.5:
            sockets[self.fresh(True)] = arrow
        else:
            plugs[self.fresh(False)] = arrow
        return sockets, plugs

    def derivation(self, depth: int = 5, attempts: int = 100) -> Derivation:
        """
        A checked-by-construction derivation of a random net.

        Raises:
            ShapeError: If no derivation was produced within ``attempts``.
        """
        for _ in range(attempts):
            sockets, plugs = self.environment()
            found = self._gen(sockets, plugs, depth)
            if found is not None:
                return found
        raise ShapeError(f"no {self.system.value} derivation generated in {attempts} attempts")

    def _restrict(self, n: Net, sockets: Env, plugs: Env) -> Tuple[Env, Env]:
        return ({s: sockets[s] for s in free_sockets(n)}, {a: plugs[a] for a in free_plugs(n)})

    def _below(self, low: IUType, high: IUType) -> bool:
        return equiv(low, high) if self.system is System.SIMPLE else leq(low, high)

    def _gen(self, sockets: Env, plugs: Env, depth: int) -> Optional[Derivation]:
        options = ["capsule"]
        if depth > 0:
            options = ["export", "import", "cut", "cut"] + (["capsule"] if self.rng.random() < 0.3 else [])
        self.rng.shuffle(options)
        for option in options:
            found = getattr(self, f"_gen_{option}")(sockets, plugs, depth)
            if found is not None:
                return found
        return None

    def _gen_capsule(self, sockets: Env, plugs: Env, depth: int) -> Optional[Derivation]:
        pairs = [(x, a) for x in sorted(sockets) for a in sorted(plugs) if self._below(sockets[x], plugs[a])]
        if not pairs:
            return None
        x, a = self.rng.choice(pairs)
        n = Capsule(x, a)
        gamma, delta = self._restrict(n, sockets, plugs)
        return build_ax(self.system, n, gamma, delta)

    def _with(self, d: Derivation, name: str, t: IUType, socket: bool) -> Derivation:
        if socket and name not in d.gamma:
            return lift(d, extend(d.gamma, name, t), d.delta)
        if not socket and name not in d.delta:
            return lift(d, d.gamma, extend(d.delta, name, t))
        return d

    def _gen_export(self, sockets: Env, plugs: Env, depth: int) -> Optional[Derivation]:
        candidates = [(a, arrow) for a in sorted(plugs) for arrow in arrows_of(plugs[a])
                      if self._below(arrow, plugs[a])]
        if not candidates:
            return None
        a, arrow = self.rng.choice(candidates)
        y, b = self.fresh(True), self.fresh(False)
        body = self._gen(extend(sockets, y, arrow.left), extend(plugs, b, arrow.right), depth - 1)
        if body is None:
            return None
        body = self._with(self._with(body, y, arrow.left, True), b, arrow.right, False)
        n = Export(y, body.net, b, a)
        gamma, delta = self._restrict(n, sockets, plugs)
        return build_export(self.system, n, gamma, delta, body)

    def _gen_import(self, sockets: Env, plugs: Env, depth: int) -> Optional[Derivation]:
        candidates = [(y, arrow) for y in sorted(sockets) for arrow in arrows_of(sockets[y])
                      if self._below(sockets[y], arrow)]
        if not candidates:
            return None
        y, arrow = self.rng.choice(candidates)
        a, x = self.fresh(False), self.fresh(True)
        left = self._gen(sockets, extend(plugs, a, arrow.left), depth - 1)
        right = self._gen(extend(sockets, x, arrow.right), plugs, depth - 1) if left else None
        if left is None or right is None:
            return None
        left = self._with(left, a, arrow.left, False)
        right = self._with(right, x, arrow.right, True)
        n = Import(left.net, a, y, x, right.net)
        gamma, delta = self._restrict(n, sockets, plugs)
        return build_import(self.system, n, gamma, delta, left, right)

    def _gen_cut(self, sockets: Env, plugs: Env, depth: int) -> Optional[Derivation]:
        known = list(sockets.values()) + list(plugs.values())
        cut_type = self.rng.choice(known) if known and self.rng.random() < 0.6 else self.random_type()
        a, x = self.fresh(False), self.fresh(True)
        left = self._gen(sockets, extend(plugs, a, cut_type), depth - 1)
        right = self._gen(extend(sockets, x, cut_type), plugs, depth - 1) if left else None
        if left is None or right is None:
            return None
        left = self._with(left, a, cut_type, False)
        right = self._with(right, x, cut_type, True)
        activation = self.rng.choice(list(Activation))
        n = Cut(left.net, a, activation, x, right.net)
        try:
            check_cut_side_conditions(allowed_cut_rule(self.system, activation), n, normalize(cut_type))
        except ShapeError:
            n = Cut(left.net, a, Activation.INACTIVE, x, right.net)
        gamma, delta = self._restrict(n, sockets, plugs)
        return build_cut(self.system, n, gamma, delta, cut_type, left, right)


########################
# Absorption wrappers  #
########################

def absorb_plug(d: Derivation, subject: str, extra: IUType) -> Derivation:
    """
    interR on ``subject`` over ``d`` and a W copy widened by ``extra``;
    the conclusion is unchanged up to equivalence.
    """
    t = d.delta[subject]
    widened = lift(d, d.gamma, extend(d.delta, subject, mk_union([t, extra])))
    return node(d.system, INTER_R, d.net, d.gamma, d.delta, (d, widened), subject=subject)


def absorb_socket(d: Derivation, subject: str, extra: IUType) -> Derivation:
    """unionL dual of ``absorb_plug``."""
    t = d.gamma[subject]
    narrowed = lift(d, extend(d.gamma, subject, mk_inter([t, extra])), d.delta)
    return node(d.system, UNION_L, d.net, d.gamma, d.delta, (d, narrowed), subject=subject)


def add_wrappers(d: Derivation, rng: random.Random, rate: float = 0.3,
                 extra: Optional[IUType] = None) -> Derivation:
    """
    Wrap random nodes in absorption splits the system allows there.

    The root keeps its conclusion, so the result derives the same judgement.
    """
    if d.system is System.SIMPLE:
        return d
    extra = extra or Var("Z")
    premises = tuple(add_wrappers(p, rng, rate, extra) for p in d.premises)
    d = d if premises == d.premises else Derivation(d.system, d.rule, d.conclusion, premises, d.rule_data)
    if d.rule in STRUCTURAL_RULES or rng.random() >= rate:
        return d
    plugs = [a for a in sorted(d.delta)
             if d.system is not System.CBV or introduces_plug(d.net, a)]
    sockets = [x for x in sorted(d.gamma)
               if d.system is not System.CBN or introduces_socket(d.net, x)]
    choices = [(a, False) for a in plugs] + [(x, True) for x in sockets]
    if not choices:
        return d
    subject, socket = rng.choice(choices)
    return absorb_socket(d, subject, extra) if socket else absorb_plug(d, subject, extra)


########################
# Untyped generation   #
########################

def random_net(rng: random.Random, depth: int = 4, free: int = 2) -> Net:
    """A Barendregt net over ``free`` sockets and plugs with fresh binders."""
    counter = [0]

    def fresh(prefix: str) -> str:
        counter[0] += 1
        return f"{prefix}{counter[0]}"

    def gen(sockets: List[str], plugs: List[str], k: int) -> Net:
        roll = rng.random() if k > 0 else 0.0
        if roll < 0.25:
            return Capsule(rng.choice(sockets), rng.choice(plugs))
        if roll < 0.45:
            y, b = fresh("y"), fresh("b")
            return Export(y, gen(sockets + [y], plugs + [b], k - 1), b, rng.choice(plugs))
        if roll < 0.65:
            a, x = fresh("c"), fresh("z")
            return Import(gen(sockets, plugs + [a], k - 1), a, rng.choice(sockets), x,
                          gen(sockets + [x], plugs, k - 1))
        a, x = fresh("c"), fresh("z")
        return Cut(gen(sockets, plugs + [a], k - 1), a, rng.choice(list(Activation)), x,
                   gen(sockets + [x], plugs, k - 1))

    return gen([f"u{i}" for i in range(free)], [f"e{i}" for i in range(free)], depth)


def random_lambda(rng: random.Random, size: int = 8, free: Sequence[str] = ("f", "g")) -> LambdaTerm:
    """A random lambda term with at most ``size`` constructors."""
    counter = [0]

    def gen(scope: List[str], budget: int) -> LambdaTerm:
        if budget <= 1 or (scope and rng.random() < 0.3):
            return LVar(rng.choice(scope or list(free)))
        if budget == 2 or rng.random() < 0.45:
            counter[0] += 1
            x = f"x{counter[0]}"
            return Abs(x, gen(scope + [x], budget - 1))
        left_budget = rng.randint(1, max(1, budget - 2))
        return App(gen(scope, left_budget), gen(scope, budget - 1 - left_budget))

    return gen(list(free), size)
