########################
# Derivation Checker    #
########################

"""
Rule-by-rule validation of derivations for the four type systems.

All systems share the multiplicative context discipline: the premises of a
two-premise rule carry the conclusion's contexts, extended by the cut or
import binder. Context comparison is modulo type equivalence.
"""

import logging
from typing import Callable, Dict, Iterable, Mapping, Optional, Tuple

from app.derivation import (
    AX, CUT, CUT_L, CUT_R, IMP_L, IMP_R, INTER_E, INTER_R, UNION_E, UNION_L, WEAK,
    Derivation, System,
)
from app.exceptions import RuleError
from app.iu_types import (
    Arrow, IUType, equiv, is_intersection, is_simple, is_union, joinands, leq, meetands,
    mk_inter, mk_union, normalize, show_type,
)
from app.syntax import (
    Activation, Capsule, Cut, Export, Import, bound_names, introduces_plug, introduces_socket,
)

Ctx = Mapping[str, IUType]


def _without(ctx: Ctx, *names: str) -> Dict[str, IUType]:
    return {s: t for s, t in ctx.items() if s not in names}


def _same(first: Ctx, second: Ctx) -> bool:
    if set(first) != set(second):
        return False
    return all(equiv(first[s], second[s]) for s in first)


def allowed_cut_rule(system: System, activation: Activation) -> str:
    """The cut rule name a system uses for a cut with the given flag."""
    if system is System.CBN and activation is Activation.LEFT:
        return CUT_L
    if system is System.CBV and activation is Activation.RIGHT:
        return CUT_R
    return CUT


class _Checker:
    def __init__(self, system: System):
        self.system = system
        self.simple = system is System.SIMPLE

    def fail(self, path: Tuple[int, ...], reason: str) -> None:
        raise RuleError(path, reason)

    def require(self, condition: bool, path: Tuple[int, ...], reason: str) -> None:
        if not condition:
            self.fail(path, reason)

    def check(self, d: Derivation, path: Tuple[int, ...]) -> None:
        self.require(d.system is self.system, path, f"mixed systems {d.system.value} and {self.system.value}")
        bound = bound_names(d.net)
        for subject in list(d.gamma) + list(d.delta):
            self.require(subject not in bound, path, f"context mentions bound connector {subject}")
        if self.simple:
            for subject, t in list(d.gamma.items()) + list(d.delta.items()):
                self.require(is_simple(t), path, f"{subject} has non-simple type {show_type(t)}")
        handler: Optional[Callable[[Derivation, Tuple[int, ...]], None]] = {
            AX: self.check_ax,
            IMP_R: self.check_imp_r,
            IMP_L: self.check_imp_l,
            CUT: self.check_cut,
            CUT_L: self.check_cut,
            CUT_R: self.check_cut,
            INTER_R: self.check_inter_r,
            UNION_L: self.check_union_l,
            INTER_E: self.check_inter_e,
            UNION_E: self.check_union_e,
            WEAK: self.check_weak,
        }.get(d.rule)
        if handler is None:
            self.fail(path, f"unknown rule {d.rule}")
        if self.simple and d.rule not in (AX, IMP_R, IMP_L, CUT):
            self.fail(path, f"rule {d.rule} is not part of the simple system")
        handler(d, path)
        for index, premise in enumerate(d.premises):
            self.check(premise, path + (index,))

    def arity(self, d: Derivation, n: int, path: Tuple[int, ...]) -> None:
        self.require(len(d.premises) == n, path, f"{d.rule} expects {n} premise(s), got {len(d.premises)}")

    # Logical rules

    def check_ax(self, d: Derivation, path: Tuple[int, ...]) -> None:
        self.require(isinstance(d.net, Capsule), path, "Ax needs a capsule")
        self.arity(d, 0, path)
        y, a = d.net.socket, d.net.plug
        self.require(y in d.gamma, path, f"socket {y} missing from context")
        self.require(a in d.delta, path, f"plug {a} missing from context")
        if self.simple:
            self.require(equiv(d.gamma[y], d.delta[a]), path,
                         f"{show_type(d.gamma[y])} differs from {show_type(d.delta[a])}")
        else:
            self.require(leq(d.gamma[y], d.delta[a]), path,
                         f"{show_type(d.gamma[y])} is not below {show_type(d.delta[a])}")

    def check_imp_r(self, d: Derivation, path: Tuple[int, ...]) -> None:
        self.require(isinstance(d.net, Export), path, "impR needs an export")
        self.arity(d, 1, path)
        n: Export = d.net
        p = d.premises[0]
        self.require(p.net == n.body, path, "premise net is not the export body")
        self.require(n.bind_socket in p.gamma, path, f"premise lacks {n.bind_socket}")
        self.require(n.bind_plug in p.delta, path, f"premise lacks {n.bind_plug}")
        arrow = Arrow(p.gamma[n.bind_socket], p.delta[n.bind_plug])
        self.require(_same(_without(p.gamma, n.bind_socket), d.gamma), path, "socket contexts disagree")
        self.require(_same(_without(p.delta, n.bind_plug, n.out), _without(d.delta, n.out)), path,
                     "plug contexts disagree")
        self.require(n.out in d.delta, path, f"plug {n.out} missing from context")
        if n.out in p.delta:
            if self.simple:
                self.require(equiv(p.delta[n.out], arrow), path, f"incompatible types for {n.out}")
            expected = mk_union([p.delta[n.out], arrow])
        else:
            expected = arrow
        self.require(equiv(d.delta[n.out], expected), path,
                     f"{n.out} should have type {show_type(normalize(expected))}")

    def check_imp_l(self, d: Derivation, path: Tuple[int, ...]) -> None:
        self.require(isinstance(d.net, Import), path, "impL needs an import")
        self.arity(d, 2, path)
        n: Import = d.net
        left, right = d.premises
        self.require(left.net == n.left and right.net == n.right, path, "premise nets do not match")
        self.require(n.bind_plug in left.delta, path, f"left premise lacks {n.bind_plug}")
        self.require(n.bind_socket in right.gamma, path, f"right premise lacks {n.bind_socket}")
        arrow = Arrow(left.delta[n.bind_plug], right.gamma[n.bind_socket])
        self.require(_same(left.gamma, _without(right.gamma, n.bind_socket)), path, "premise sockets disagree")
        self.require(_same(_without(left.delta, n.bind_plug), right.delta), path, "premise plugs disagree")
        self.require(_same(d.delta, right.delta), path, "conclusion plugs disagree")
        self.require(_same(_without(d.gamma, n.mid), _without(left.gamma, n.mid)), path,
                     "conclusion sockets disagree")
        self.require(n.mid in d.gamma, path, f"socket {n.mid} missing from context")
        if n.mid in left.gamma:
            if self.simple:
                self.require(equiv(left.gamma[n.mid], arrow), path, f"incompatible types for {n.mid}")
            expected = mk_inter([left.gamma[n.mid], arrow])
        else:
            expected = arrow
        self.require(equiv(d.gamma[n.mid], expected), path,
                     f"{n.mid} should have type {show_type(normalize(expected))}")

    def check_cut(self, d: Derivation, path: Tuple[int, ...]) -> None:
        self.require(isinstance(d.net, Cut), path, f"{d.rule} needs a cut")
        self.arity(d, 2, path)
        n: Cut = d.net
        expected_rule = allowed_cut_rule(self.system, n.activation)
        self.require(d.rule == expected_rule, path,
                     f"{self.system.value} types a {n.activation.value} cut with {expected_rule}, not {d.rule}")
        a = d.cut_type
        self.require(a is not None, path, "cut type missing")
        if self.simple:
            self.require(is_simple(a), path, f"cut type {show_type(a)} is not simple")
        left, right = d.premises
        self.require(left.net == n.left and right.net == n.right, path, "premise nets do not match")
        self.require(n.bind_plug in left.delta and equiv(left.delta[n.bind_plug], a), path,
                     f"left premise must give {n.bind_plug} the cut type")
        self.require(n.bind_socket in right.gamma and equiv(right.gamma[n.bind_socket], a), path,
                     f"right premise must give {n.bind_socket} the cut type")
        self.require(_same(left.gamma, d.gamma), path, "left premise sockets disagree")
        self.require(_same(_without(left.delta, n.bind_plug), d.delta), path, "left premise plugs disagree")
        self.require(_same(_without(right.gamma, n.bind_socket), d.gamma), path, "right premise sockets disagree")
        self.require(_same(right.delta, d.delta), path, "right premise plugs disagree")
        if d.rule == CUT_L:
            self.require(not is_intersection(a), path, "cutL type must not be an intersection")
            self.require(introduces_socket(n.right, n.bind_socket), path,
                         f"cutL needs {n.bind_socket} introduced on the right")
        if d.rule == CUT_R:
            self.require(not is_union(a), path, "cutR type must not be a union")
            self.require(introduces_plug(n.left, n.bind_plug), path,
                         f"cutR needs {n.bind_plug} introduced on the left")

    # Structural rules

    def _subject(self, d: Derivation, path: Tuple[int, ...]) -> str:
        subject = d.subject
        self.require(subject is not None, path, f"{d.rule} needs a subject")
        for p in d.premises:
            self.require(p.net == d.net, path, f"{d.rule} premises must type the same net")
        return subject

    def check_inter_r(self, d: Derivation, path: Tuple[int, ...]) -> None:
        a = self._subject(d, path)
        self.require(a in d.delta, path, f"plug {a} missing from context")
        if self.system is System.CBV:
            self.require(introduces_plug(d.net, a), path, f"interR on {a} needs it introduced")
        parts = []
        for p in d.premises:
            self.require(a in p.delta, path, f"premise lacks {a}")
            self.require(_same(p.gamma, d.gamma), path, "premise sockets disagree")
            self.require(_same(_without(p.delta, a), _without(d.delta, a)), path, "premise plugs disagree")
            parts.append(p.delta[a])
        self.require(equiv(d.delta[a], mk_inter(parts)), path, f"{a} should be the meet of the premises")

    def check_union_l(self, d: Derivation, path: Tuple[int, ...]) -> None:
        x = self._subject(d, path)
        self.require(x in d.gamma, path, f"socket {x} missing from context")
        if self.system is System.CBN:
            self.require(introduces_socket(d.net, x), path, f"unionL on {x} needs it introduced")
        parts = []
        for p in d.premises:
            self.require(x in p.gamma, path, f"premise lacks {x}")
            self.require(_same(p.delta, d.delta), path, "premise plugs disagree")
            self.require(_same(_without(p.gamma, x), _without(d.gamma, x)), path, "premise sockets disagree")
            parts.append(p.gamma[x])
        self.require(equiv(d.gamma[x], mk_union(parts)), path, f"{x} should be the join of the premises")

    def check_inter_e(self, d: Derivation, path: Tuple[int, ...]) -> None:
        a = self._subject(d, path)
        self.arity(d, 1, path)
        p = d.premises[0]
        self.require(a in p.delta and a in d.delta, path, f"{a} missing from context")
        parts = meetands(normalize(p.delta[a]))
        index = d.rule_data.get('index', -1)
        self.require(0 <= index < len(parts), path, f"no component {index} in {show_type(p.delta[a])}")
        self.require(equiv(d.delta[a], parts[index]), path, f"{a} should have type {show_type(parts[index])}")
        self.require(_same(p.gamma, d.gamma), path, "socket contexts disagree")
        self.require(_same(_without(p.delta, a), _without(d.delta, a)), path, "plug contexts disagree")

    def check_union_e(self, d: Derivation, path: Tuple[int, ...]) -> None:
        x = self._subject(d, path)
        self.arity(d, 1, path)
        p = d.premises[0]
        self.require(x in p.gamma and x in d.gamma, path, f"{x} missing from context")
        parts = joinands(normalize(p.gamma[x]))
        index = d.rule_data.get('index', -1)
        self.require(0 <= index < len(parts), path, f"no component {index} in {show_type(p.gamma[x])}")
        self.require(equiv(d.gamma[x], parts[index]), path, f"{x} should have type {show_type(parts[index])}")
        self.require(_same(p.delta, d.delta), path, "plug contexts disagree")
        self.require(_same(_without(p.gamma, x), _without(d.gamma, x)), path, "socket contexts disagree")

    def check_weak(self, d: Derivation, path: Tuple[int, ...]) -> None:
        self.arity(d, 1, path)
        p = d.premises[0]
        self.require(p.net == d.net, path, "W premise must type the same net")
        for s, t in p.gamma.items():
            self.require(s in d.gamma and leq(d.gamma[s], t), path, f"W cannot widen socket {s}")
        for a, t in p.delta.items():
            self.require(a in d.delta and leq(t, d.delta[a]), path, f"W cannot narrow plug {a}")


def check_derivation(d: Derivation) -> bool:
    """
    Validate every node of a derivation.

    Args:
        d (Derivation): The tree to check; its root fixes the system.

    Returns:
        bool: True when every node is a valid rule instance.

    Raises:
        RuleError: Naming the path of the first failing node and the reason.
    """
    _Checker(d.system).check(d, ())
    logging.debug(f"Derivation of size {d.size()} checked in {d.system.value}")
    return True


def is_valid(d: Derivation) -> bool:
    try:
        return check_derivation(d)
    except RuleError:
        return False


def check_all(derivations: Iterable[Derivation]) -> bool:
    return all(check_derivation(d) for d in derivations)
