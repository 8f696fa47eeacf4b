########################
# Simple Type Inference #
########################

"""
First-order unification over simple types, and principal Simple typing of
nets.
"""

from typing import Dict, Iterable, Optional, Tuple

from app.derivation import AX, Derivation, System, node
from app.exceptions import UnificationError
from app.iu_types import Arrow, IUType, Var
from app.syntax import (
    Capsule, Export, Import, Net, barendregtize, free_plugs, free_sockets, is_barendregt,
)
from app.transformers import build_cut, build_export, build_import, extend, lift, transport


class Unifier:
    """Triangular substitution on type variables named ``t0, t1, ...``."""

    def __init__(self):
        self.subst: Dict[str, IUType] = {}
        self._counter = 0

    def fresh(self) -> Var:
        self._counter += 1
        return Var(f"t{self._counter - 1}")

    def resolve(self, t: IUType) -> IUType:
        while isinstance(t, Var) and t.name in self.subst:
            t = self.subst[t.name]
        return t

    def apply(self, t: IUType) -> IUType:
        t = self.resolve(t)
        if isinstance(t, Arrow):
            return Arrow(self.apply(t.left), self.apply(t.right))
        return t

    def occurs(self, name: str, t: IUType) -> bool:
        t = self.resolve(t)
        if isinstance(t, Var):
            return t.name == name
        if isinstance(t, Arrow):
            return self.occurs(name, t.left) or self.occurs(name, t.right)
        return False

    def unify(self, a: IUType, b: IUType) -> None:
        """
        Make ``a`` and ``b`` equal.

        Raises:
            UnificationError: On an occurs-check failure or a shape clash.
        """
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, Var):
            if self.occurs(a.name, b):
                raise UnificationError(f"{a.name} occurs in {self.apply(b)}")
            self.subst[a.name] = b
        elif isinstance(b, Var):
            self.unify(b, a)
        elif isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify(a.left, b.left)
            self.unify(a.right, b.right)
        else:
            raise UnificationError(f"cannot unify {a} with {b}")


def prettify(types: Iterable[IUType]) -> Dict[str, str]:
    """Map the variables of ``types`` to A, B, C, ... in order of appearance."""
    names: Dict[str, str] = {}

    def walk(t: IUType) -> None:
        if isinstance(t, Var):
            if t.name not in names:
                k = len(names)
                names[t.name] = chr(ord('A') + k % 26) + (str(k // 26) if k >= 26 else "")
        elif isinstance(t, Arrow):
            walk(t.left)
            walk(t.right)

    for t in types:
        walk(t)
    return names


def rename_vars(t: IUType, names: Dict[str, str]) -> IUType:
    if isinstance(t, Var):
        return Var(names.get(t.name, t.name))
    if isinstance(t, Arrow):
        return Arrow(rename_vars(t.left, names), rename_vars(t.right, names))
    return t


def _constraints(n: Net, var, unifier: Unifier) -> None:
    if isinstance(n, Capsule):
        unifier.unify(var(n.socket, True), var(n.plug, False))
    elif isinstance(n, Export):
        _constraints(n.body, var, unifier)
        unifier.unify(var(n.out, False), Arrow(var(n.bind_socket, True), var(n.bind_plug, False)))
    elif isinstance(n, Import):
        _constraints(n.left, var, unifier)
        _constraints(n.right, var, unifier)
        unifier.unify(var(n.mid, True), Arrow(var(n.bind_plug, False), var(n.bind_socket, True)))
    else:
        _constraints(n.left, var, unifier)
        _constraints(n.right, var, unifier)
        unifier.unify(var(n.bind_plug, False), var(n.bind_socket, True))


def _solve(n: Net) -> Optional[Dict[Tuple[str, bool], IUType]]:
    unifier = Unifier()
    table: Dict[Tuple[str, bool], Var] = {}

    def var(name: str, socket: bool) -> Var:
        key = (name, socket)
        if key not in table:
            table[key] = unifier.fresh()
        return table[key]

    try:
        _constraints(n, var, unifier)
    except UnificationError:
        return None
    solved = {key: unifier.apply(v) for key, v in table.items()}
    names = prettify(solved[key] for key in sorted(solved))
    return {key: rename_vars(t, names) for key, t in solved.items()}


def infer_simple(n: Net) -> Optional[Tuple[Dict[str, IUType], Dict[str, IUType]]]:
    """
    Principal Simple typing of a net.

    Returns:
        The socket and plug contexts over the free connectors, or None when
        the net has no Simple typing.
    """
    if not is_barendregt(n):
        n = barendregtize(n)
    solved = _solve(n)
    if solved is None:
        return None
    gamma = {s: solved[(s, True)] for s in sorted(free_sockets(n))}
    delta = {a: solved[(a, False)] for a in sorted(free_plugs(n))}
    return gamma, delta


def derive_simple(n: Net) -> Optional[Derivation]:
    """A Simple derivation of ``n`` at its principal typing, or None."""
    original = n
    if not is_barendregt(n):
        n = barendregtize(n)
    solved = _solve(n)
    if solved is None:
        return None
    d = _derive(n, solved)
    return transport(d, original) if original != n else d


def _derive(n: Net, solved: Dict[Tuple[str, bool], IUType]) -> Derivation:
    def contexts(m: Net) -> Tuple[Dict[str, IUType], Dict[str, IUType]]:
        return ({s: solved[(s, True)] for s in free_sockets(m)},
                {a: solved[(a, False)] for a in free_plugs(m)})

    def ensure(d: Derivation, socket: Optional[str] = None, plug: Optional[str] = None) -> Derivation:
        gamma, delta = dict(d.gamma), dict(d.delta)
        if socket is not None and socket not in gamma:
            gamma = extend(gamma, socket, solved[(socket, True)])
        if plug is not None and plug not in delta:
            delta = extend(delta, plug, solved[(plug, False)])
        return lift(d, gamma, delta)

    gamma, delta = contexts(n)
    if isinstance(n, Capsule):
        return node(System.SIMPLE, AX, n, gamma, delta)
    if isinstance(n, Export):
        body = ensure(_derive(n.body, solved), socket=n.bind_socket, plug=n.bind_plug)
        return build_export(System.SIMPLE, n, gamma, delta, body)
    if isinstance(n, Import):
        left = ensure(_derive(n.left, solved), plug=n.bind_plug)
        right = ensure(_derive(n.right, solved), socket=n.bind_socket)
        return build_import(System.SIMPLE, n, gamma, delta, left, right)
    left = ensure(_derive(n.left, solved), plug=n.bind_plug)
    right = ensure(_derive(n.right, solved), socket=n.bind_socket)
    return build_cut(System.SIMPLE, n, gamma, delta, solved[(n.bind_plug, False)], left, right)
