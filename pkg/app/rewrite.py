########################
# Reduction Rules       #
########################

"""
Redex enumeration and contraction for the full, CBN and CBV regimes.

``contract`` produces the raw right-hand side of a rule (bound names may be
duplicated when a subnet is copied); ``step`` plugs it back into the net and
re-establishes Barendregt form.
"""

from dataclasses import dataclass
from enum import Enum
import logging
from typing import List, Optional, Tuple

from app.exceptions import StaleRedexError
from app.syntax import (
    Activation, Capsule, Cut, Export, Import, NameSupply, Net, Path,
    barendregtize, free_plugs, free_sockets, introduces_plug, introduces_socket,
    positions, replace_at, show_net, subnet_at, substitute,
)


class Regime(Enum):
    FULL = "full"
    CBN = "cbn"
    CBV = "cbv"


class RuleId(Enum):
    """Reduction rules in deterministic-first priority order."""
    Ax = 0
    ExpR = 1
    ImpL = 2
    ExpImpLeftAssoc = 3
    ExpImpRightAssoc = 4
    ActL = 5
    ActR = 6
    DL_d = 7
    DL_cap = 8
    DL_expOuts = 9
    DL_expIns = 10
    DL_imp = 11
    DL_cut = 12
    DR_d = 13
    DR_cap = 14
    DR_exp = 15
    DR_impOuts = 16
    DR_impIns = 17
    DR_cut = 18
    GC_L = 19
    GC_R = 20
    Ren_L = 21
    Ren_R = 22

    @property
    def admissible(self) -> bool:
        return self in ADMISSIBLE_RULES

    @property
    def logical(self) -> bool:
        return self in LOGICAL_RULES


ADMISSIBLE_RULES = frozenset({RuleId.GC_L, RuleId.GC_R, RuleId.Ren_L, RuleId.Ren_R})
LOGICAL_RULES = frozenset({RuleId.Ax, RuleId.ExpR, RuleId.ImpL,
                           RuleId.ExpImpLeftAssoc, RuleId.ExpImpRightAssoc})


@dataclass(frozen=True)
class Redex:
    """A rule instance at a position (child indices from the root)."""
    position: Path
    rule: RuleId

    def path_text(self) -> str:
        return format_path(self.position)


def format_path(path: Path) -> str:
    return ".".join(str(i) for i in path) if path else "root"


def parse_path(text: str) -> Path:
    if text in ("", "root"):
        return ()
    return tuple(int(part) for part in text.split("."))


########################
# Rule matching        #
########################

def _logical_rules(n: Cut, regime: Regime) -> List[RuleId]:
    left, right = n.left, n.right
    if not is_logical_cut(n):
        return []
    if isinstance(left, Capsule) and isinstance(right, Capsule):
        return [RuleId.Ax]
    if isinstance(left, Export) and isinstance(right, Capsule):
        return [RuleId.ExpR]
    if isinstance(left, Capsule) and isinstance(right, Import):
        return [RuleId.ImpL]
    if isinstance(left, Export) and isinstance(right, Import):
        if regime is Regime.CBN:
            return [RuleId.ExpImpLeftAssoc]
        if regime is Regime.CBV:
            return [RuleId.ExpImpRightAssoc]
        return [RuleId.ExpImpLeftAssoc, RuleId.ExpImpRightAssoc]
    return []


def is_logical_cut(n: Cut) -> bool:
    """Both connectors introduced: the cut is a logical redex."""
    return introduces_plug(n.left, n.bind_plug) and introduces_socket(n.right, n.bind_socket)


def _activation_rules(n: Cut, regime: Regime) -> List[RuleId]:
    left_intro = introduces_plug(n.left, n.bind_plug)
    right_intro = introduces_socket(n.right, n.bind_socket)
    found = []
    if not left_intro:
        if regime is not Regime.CBN or right_intro:
            found.append(RuleId.ActL)
    if not right_intro:
        if regime is not Regime.CBV or left_intro:
            found.append(RuleId.ActR)
    return found


def _left_propagation(n: Cut) -> List[RuleId]:
    left, a = n.left, n.bind_plug
    if isinstance(left, Capsule):
        return [RuleId.DL_d] if left.plug == a else [RuleId.DL_cap]
    if isinstance(left, Export):
        return [RuleId.DL_expOuts] if left.out == a else [RuleId.DL_expIns]
    if isinstance(left, Import):
        return [RuleId.DL_imp]
    # a logical inner cut fires first
    if left.activation is Activation.INACTIVE and not is_logical_cut(left):
        return [RuleId.DL_cut]
    return []


def _right_propagation(n: Cut) -> List[RuleId]:
    right, x = n.right, n.bind_socket
    if isinstance(right, Capsule):
        return [RuleId.DR_d] if right.socket == x else [RuleId.DR_cap]
    if isinstance(right, Export):
        return [RuleId.DR_exp]
    if isinstance(right, Import):
        return [RuleId.DR_impOuts] if right.mid == x else [RuleId.DR_impIns]
    if right.activation is Activation.INACTIVE and not is_logical_cut(right):
        return [RuleId.DR_cut]
    return []


def rules_at(n: Net, regime: Regime, include_admissible: bool = False) -> List[RuleId]:
    """Rules whose left-hand side and side conditions match the subnet's root."""
    if not isinstance(n, Cut):
        return []
    found: List[RuleId] = []
    if n.activation is Activation.INACTIVE:
        found = _logical_rules(n, regime) or _activation_rules(n, regime)
        if include_admissible:
            if isinstance(n.right, Capsule) and n.right.socket == n.bind_socket:
                found.append(RuleId.Ren_L)
            if isinstance(n.left, Capsule) and n.left.plug == n.bind_plug:
                found.append(RuleId.Ren_R)
    elif n.activation is Activation.LEFT:
        found = _left_propagation(n)
        if include_admissible and n.bind_plug not in free_plugs(n.left):
            found.append(RuleId.GC_L)
    else:
        found = _right_propagation(n)
        if include_admissible and n.bind_socket not in free_sockets(n.right):
            found.append(RuleId.GC_R)
    return sorted(set(found), key=lambda r: r.value)


def find_redexes(n: Net, regime: Regime = Regime.FULL, include_admissible: bool = False) -> List[Redex]:
    """
    Enumerate every rule instance of the net under a regime.

    Redexes come leftmost-outermost first, rules at one position by ordinal.
    """
    return [Redex(path, rule)
            for path, sub in positions(n)
            for rule in rules_at(sub, regime, include_admissible)]


########################
# Contraction          #
########################

def contract(n: Cut, rule: RuleId, supply: NameSupply) -> Net:
    """
    Raw right-hand side of a rule fired at the root of ``n``.

    Raises:
        StaleRedexError: If the rule does not match the subnet.
    """
    if rule not in rules_at(n, Regime.FULL, include_admissible=True):
        raise StaleRedexError(f"{rule.name} does not match {show_net(n)}")
    P, a, x, Q = n.left, n.bind_plug, n.bind_socket, n.right
    inactive, left_act, right_act = Activation.INACTIVE, Activation.LEFT, Activation.RIGHT

    if rule is RuleId.Ax:
        return Capsule(P.socket, Q.plug)
    if rule is RuleId.ExpR:
        return Export(P.bind_socket, P.body, P.bind_plug, Q.plug)
    if rule is RuleId.ImpL:
        return Import(Q.left, Q.bind_plug, P.socket, Q.bind_socket, Q.right)
    if rule is RuleId.ExpImpRightAssoc:
        inner = Cut(P.body, P.bind_plug, inactive, Q.bind_socket, Q.right)
        return Cut(Q.left, Q.bind_plug, inactive, P.bind_socket, inner)
    if rule is RuleId.ExpImpLeftAssoc:
        inner = Cut(Q.left, Q.bind_plug, inactive, P.bind_socket, P.body)
        return Cut(inner, P.bind_plug, inactive, Q.bind_socket, Q.right)
    if rule is RuleId.ActL:
        return Cut(P, a, left_act, x, Q)
    if rule is RuleId.ActR:
        return Cut(P, a, right_act, x, Q)

    if rule is RuleId.DL_d:
        return Cut(P, a, inactive, x, Q)
    if rule is RuleId.DL_cap:
        return P
    if rule is RuleId.DL_expOuts:
        fresh = supply.fresh_plug()
        inner = Cut(P.body, a, left_act, x, Q)
        return Cut(Export(P.bind_socket, inner, P.bind_plug, fresh), fresh, inactive, x, Q)
    if rule is RuleId.DL_expIns:
        return Export(P.bind_socket, Cut(P.body, a, left_act, x, Q), P.bind_plug, P.out)
    if rule is RuleId.DL_imp:
        return Import(Cut(P.left, a, left_act, x, Q), P.bind_plug, P.mid, P.bind_socket,
                      Cut(P.right, a, left_act, x, Q))
    if rule is RuleId.DL_cut:
        return Cut(Cut(P.left, a, left_act, x, Q), P.bind_plug, inactive, P.bind_socket,
                   Cut(P.right, a, left_act, x, Q))

    if rule is RuleId.DR_d:
        return Cut(P, a, inactive, x, Q)
    if rule is RuleId.DR_cap:
        return Q
    if rule is RuleId.DR_exp:
        return Export(Q.bind_socket, Cut(P, a, right_act, x, Q.body), Q.bind_plug, Q.out)
    if rule is RuleId.DR_impOuts:
        fresh = supply.fresh_socket()
        imp = Import(Cut(P, a, right_act, x, Q.left), Q.bind_plug, fresh, Q.bind_socket,
                     Cut(P, a, right_act, x, Q.right))
        return Cut(P, a, inactive, fresh, imp)
    if rule is RuleId.DR_impIns:
        return Import(Cut(P, a, right_act, x, Q.left), Q.bind_plug, Q.mid, Q.bind_socket,
                      Cut(P, a, right_act, x, Q.right))
    if rule is RuleId.DR_cut:
        return Cut(Cut(P, a, right_act, x, Q.left), Q.bind_plug, inactive, Q.bind_socket,
                   Cut(P, a, right_act, x, Q.right))

    if rule is RuleId.GC_L:
        return P
    if rule is RuleId.GC_R:
        return Q
    if rule is RuleId.Ren_L:
        return substitute(P, {}, {a: Q.plug})
    return substitute(Q, {x: P.socket}, {})


def step_raw(n: Net, redex: Redex, supply: Optional[NameSupply] = None) -> Tuple[Net, Net]:
    """
    Fire a redex without restoring Barendregt form.

    Returns:
        Tuple[Net, Net]: The raw right-hand side and the whole raw result.
    """
    if supply is None:
        supply = NameSupply()
    supply.reserve_net(n)
    try:
        sub = subnet_at(n, redex.position)
    except Exception as e:
        raise StaleRedexError(f"no subnet at {redex.path_text()}") from e
    if not isinstance(sub, Cut):
        raise StaleRedexError(f"{redex.rule.name} does not match {show_net(sub)}")
    rhs = contract(sub, redex.rule, supply)
    return rhs, replace_at(n, redex.position, rhs)


def step(n: Net, redex: Redex, supply: Optional[NameSupply] = None) -> Net:
    """
    Fire a redex and re-establish Barendregt form.

    Raises:
        StaleRedexError: If the redex does not match the net.
    """
    if supply is None:
        supply = NameSupply()
    _, raw = step_raw(n, redex, supply)
    result = barendregtize(raw, supply)
    logging.debug(f"{redex.rule.name} @ {redex.path_text()}: {show_net(result)}")
    return result
