########################
# Derivation Search     #
########################

"""
Bounded backward search for derivations.

Splits (interR on an intersection plug, unionL on a union socket) are taken
eagerly wherever the system allows them: each branch sees a wider plug or a
narrower socket, so nothing is lost. Weakening never has to be guessed
because premises always receive the goal's own contexts. Cut types come
from a finite universe built from the goal's context types.
"""

from dataclasses import dataclass
import logging
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from app.checker import allowed_cut_rule, check_derivation
from app.derivation import AX, IMP_L, IMP_R, INTER_R, UNION_L, Derivation, Judgement, System, node
from app.exceptions import ShapeError
from app.iu_types import (
    IUType, arrows_of, ctx_key, equiv, is_simple, joinands, leq, meetands, mk_inter,
    mk_union, normalize, show_type, size, subformulas,
)
from app.syntax import Capsule, Cut, Export, Net, free_plugs, free_sockets, introduces_plug, introduces_socket
from app.transformers import check_cut_side_conditions, extend, lift, trivial_derivation, without


@dataclass
class Exhausted:
    """No derivation exists within the budget."""
    explored: int
    depth: int
    universe_size: int

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"exhausted after {self.explored} goals (depth {self.depth}, universe {self.universe_size})"


def type_universe(types: Iterable[IUType], limit: int) -> List[IUType]:
    """
    Normalized subformulas of ``types`` and their pairwise intersections and
    unions, smallest first, cut to ``limit`` entries.
    """
    base = set()
    for t in types:
        base |= {normalize(s) for s in subformulas(normalize(t))}
    ordered = sorted(base, key=lambda t: (size(t), show_type(t)))
    found = set(base)
    for i, first in enumerate(ordered):
        for second in ordered[i + 1:]:
            found.add(normalize(mk_inter([first, second])))
            found.add(normalize(mk_union([first, second])))
    return sorted(found, key=lambda t: (size(t), show_type(t)))[:limit]


class DerivationSearch:
    """
    Memoized depth-bounded prover for one system and cut-type universe.

    Depth counts the logical and cut rules on a branch; splits are free.
    """

    def __init__(self, system: System, depth: int, universe: List[IUType]):
        self.system = system
        self.depth = depth
        if system is System.SIMPLE:
            universe = [t for t in universe if is_simple(t)]
        self.universe = universe
        self.explored = 0
        self._memo: Dict[Tuple, Optional[Derivation]] = {}

    def run(self, judgement: Judgement) -> Optional[Derivation]:
        gamma = {s: normalize(t) for s, t in judgement.gamma.items()}
        delta = {a: normalize(t) for a, t in judgement.delta.items()}
        return self.prove(judgement.net, gamma, delta, self.depth)

    def prove(self, n: Net, gamma: Mapping[str, IUType], delta: Mapping[str, IUType],
              depth: int) -> Optional[Derivation]:
        if depth <= 0:
            return None
        trivial = trivial_derivation(n, gamma, delta, self.system)
        if trivial is not None:
            return trivial
        sockets, plugs = free_sockets(n), free_plugs(n)
        own_gamma = {s: t for s, t in gamma.items() if s in sockets}
        own_delta = {a: t for a, t in delta.items() if a in plugs}
        key = (n, ctx_key(own_gamma), ctx_key(own_delta), depth)
        if key not in self._memo:
            self.explored += 1
            self._memo[key] = None
            self._memo[key] = self._attempt(n, own_gamma, own_delta, depth)
        found = self._memo[key]
        if found is None:
            return None
        try:
            return lift(found, gamma, delta)
        except ShapeError:
            return None

    def _attempt(self, n: Net, gamma: Dict[str, IUType], delta: Dict[str, IUType],
                 depth: int) -> Optional[Derivation]:
        split = self._split(n, gamma, delta, depth)
        if split is not False:
            return split
        if isinstance(n, Capsule):
            return self._capsule(n, gamma, delta)
        if isinstance(n, Export):
            return self._export(n, gamma, delta, depth)
        if isinstance(n, Cut):
            return self._cut(n, gamma, delta, depth)
        return self._import(n, gamma, delta, depth)

    def _split(self, n: Net, gamma: Dict[str, IUType], delta: Dict[str, IUType],
               depth: int) -> Union[Derivation, None, bool]:
        """The split derivation, None if a branch fails, False if nothing splits."""
        if self.system is System.SIMPLE:
            return False
        for a in sorted(delta):
            parts = meetands(delta[a])
            if len(parts) >= 2 and (self.system is not System.CBV or introduces_plug(n, a)):
                branches = []
                for part in parts:
                    branch = self.prove(n, gamma, extend(delta, a, part), depth)
                    if branch is None:
                        return None
                    branches.append(branch)
                return node(self.system, INTER_R, n, gamma, delta, tuple(branches), subject=a)
        for x in sorted(gamma):
            parts = joinands(gamma[x])
            if len(parts) >= 2 and (self.system is not System.CBN or introduces_socket(n, x)):
                branches = []
                for part in parts:
                    branch = self.prove(n, extend(gamma, x, part), delta, depth)
                    if branch is None:
                        return None
                    branches.append(branch)
                return node(self.system, UNION_L, n, gamma, delta, tuple(branches), subject=x)
        return False

    def _capsule(self, n: Capsule, gamma: Dict[str, IUType], delta: Dict[str, IUType]) -> Optional[Derivation]:
        if n.socket not in gamma or n.plug not in delta:
            return None
        below = gamma[n.socket], delta[n.plug]
        ok = equiv(*below) if self.system is System.SIMPLE else leq(*below)
        return node(self.system, AX, n, gamma, delta) if ok else None

    def _export(self, n: Export, gamma: Dict[str, IUType], delta: Dict[str, IUType],
                depth: int) -> Optional[Derivation]:
        a = n.out
        if a not in delta:
            return None
        target = delta[a]
        body_delta = dict(delta) if a in free_plugs(n.body) else without(delta, a)
        for arrow in arrows_of(target):
            if not leq(arrow, target):
                continue
            if self.system is System.SIMPLE and not equiv(arrow, target):
                continue
            body = self.prove(n.body, extend(gamma, n.bind_socket, arrow.left),
                              extend(body_delta, n.bind_plug, arrow.right), depth - 1)
            if body is None:
                continue
            out = mk_union([body_delta[a], arrow]) if a in body_delta else arrow
            result = node(self.system, IMP_R, n, gamma, extend(body_delta, a, out), (body,))
            return lift(result, gamma, delta)
        return None

    def _import(self, n, gamma: Dict[str, IUType], delta: Dict[str, IUType],
                depth: int) -> Optional[Derivation]:
        y = n.mid
        if y not in gamma:
            return None
        source = gamma[y]
        used = y in free_sockets(n.left) or y in free_sockets(n.right)
        body_gamma = dict(gamma) if used else without(gamma, y)
        for arrow in arrows_of(source):
            if not leq(source, arrow):
                continue
            if self.system is System.SIMPLE and not equiv(arrow, source):
                continue
            left = self.prove(n.left, body_gamma, extend(delta, n.bind_plug, arrow.left), depth - 1)
            if left is None:
                continue
            right = self.prove(n.right, extend(body_gamma, n.bind_socket, arrow.right), delta, depth - 1)
            if right is None:
                continue
            mid = mk_inter([body_gamma[y], arrow]) if y in body_gamma else arrow
            result = node(self.system, IMP_L, n, extend(body_gamma, y, mid), delta, (left, right))
            return lift(result, gamma, delta)
        return None

    def _cut(self, n: Cut, gamma: Dict[str, IUType], delta: Dict[str, IUType],
             depth: int) -> Optional[Derivation]:
        rule = allowed_cut_rule(self.system, n.activation)
        for cut_type in self.universe:
            try:
                check_cut_side_conditions(rule, n, cut_type)
            except ShapeError:
                continue
            left = self.prove(n.left, gamma, extend(delta, n.bind_plug, cut_type), depth - 1)
            if left is None:
                continue
            right = self.prove(n.right, extend(gamma, n.bind_socket, cut_type), delta, depth - 1)
            if right is None:
                continue
            return node(self.system, rule, n, gamma, delta, (left, right), cut_type=cut_type)
        return None


def search(judgement: Judgement, system: System, depth: int = 6,
           universe_size: int = 48) -> Union[Derivation, Exhausted]:
    """
    Look for a derivation of ``judgement`` within the budget.

    Args:
        judgement (Judgement): The goal.
        system (System): Rule set to search in.
        depth (int): Maximum number of logical and cut rules on a branch.
        universe_size (int): Number of candidate cut types.

    Returns:
        Union[Derivation, Exhausted]: A checked derivation, or the number
        of goals explored before giving up.
    """
    if depth < 0 or universe_size < 0:
        raise ValueError("search budgets must be non-negative")
    universe = type_universe(list(judgement.gamma.values()) + list(judgement.delta.values()), universe_size)
    prover = DerivationSearch(system, depth, universe)
    found = prover.run(judgement)
    if found is None:
        logging.info(f"Search {system.value} exhausted for {judgement} after {prover.explored} goals")
        return Exhausted(prover.explored, depth, universe_size)
    check_derivation(found)
    logging.info(f"Search {system.value} found a derivation of size {found.size()} for {judgement}")
    return found


def refuted(judgement: Judgement, system: System, budgets: Iterable[Tuple[int, int]]) -> bool:
    """True when search is exhausted under every (depth, universe size) budget."""
    return all(isinstance(search(judgement, system, depth, size_), Exhausted) for depth, size_ in budgets)
