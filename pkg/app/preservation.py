########################
# Witness Reduction     #
########################

"""
Carry a typing derivation across one reduction step.

``preserve`` fires a redex and builds a derivation of the reduct under the
same contexts. The derivation above the redex is rebuilt node by node; at
the redex every cut core reached through the structural rules is replaced
by a derivation of the right-hand side. A split on an outer connector that
sits inside an operand is hoisted above the new core; a split on the
connector the cut consumes must be resolvable to a single branch.
"""

from dataclasses import replace
import logging
from typing import Callable, Dict, Optional, Sequence, Tuple

from app.checker import allowed_cut_rule, check_derivation
from app.derivation import (
    CUT, CUT_L, CUT_R, CUT_RULES, IMP_L, IMP_R, INTER_E, INTER_R, STRUCTURAL_RULES, UNION_E, UNION_L, WEAK,
    Derivation, Judgement, System, node,
)
from app.exceptions import PreservationError, RuleError, ShapeError, StaleRedexError, ThinningError
from app.iu_types import Arrow, IUType, joinands, leq, meetands, mk_inter, mk_union, normalize
from app.rewrite import Redex, Regime, RuleId, find_redexes, step_raw
from app.syntax import (
    Capsule, Cut, NameSupply, Net, Path, barendregtize, free_plugs, free_sockets, replace_at,
    show_net,
)
from app.transformers import (
    SplitFound, build_ax, build_cut, build_export, build_import, build_split,
    check_cut_side_conditions, extend, fit, leaves, lift, liftable, map_cores, narrow, pure,
    rename_derivation, thin, transport, trivial_derivation, with_binders, without,
)

CoreCase = Callable[[Derivation, Net], Derivation]

SYSTEM_REGIMES = {
    System.SIMPLE: Regime.FULL,
    System.IU: Regime.FULL,
    System.CBN: Regime.CBN,
    System.CBV: Regime.CBV,
}


def preserve(d: Derivation, redex: Redex, supply: Optional[NameSupply] = None,
             regime: Optional[Regime] = None) -> Tuple[Net, Derivation]:
    """
    Fire ``redex`` on the net of ``d`` and derive the reduct.

    Args:
        d (Derivation): A checked derivation of the start net.
        redex (Redex): The step to take.
        supply (Optional[NameSupply]): Session counter for fresh names.
        regime (Optional[Regime]): When given, the step must be legal in it.

    Returns:
        Tuple[Net, Derivation]: The reduct and its derivation under the
        contexts of ``d``.

    Raises:
        StaleRedexError: If the redex does not match, or is not legal in
            the requested regime.
        PreservationError: If no derivation of the reduct could be built.
    """
    if regime is not None and redex not in find_redexes(d.net, regime, include_admissible=True):
        raise StaleRedexError(f"{redex.rule.name} @ {redex.path_text()} is not a {regime.value} step")
    supply = supply or NameSupply()
    supply.reserve_net(d.net)
    rhs, raw = step_raw(d.net, redex, supply)
    rule = redex.rule

    def at_redex(core: Derivation) -> Derivation:
        return preserve_core(core, rule, rhs)

    try:
        raw_derivation = rebuild_along(d, redex.position, at_redex, rhs)
        target = barendregtize(raw, supply)
        result = transport(raw_derivation, target)
    except (ShapeError, ThinningError) as e:
        raise PreservationError(rule.name, str(e), redex.position) from e
    try:
        check_derivation(result)
    except RuleError as e:
        raise PreservationError(rule.name, f"built an invalid derivation: {e}", redex.position) from e
    logging.debug(f"Preserved {rule.name} @ {redex.path_text()}: {show_net(target)}")
    return target, result


def rebuild_along(d: Derivation, path: Path, at_root: Callable[[Derivation], Derivation],
                  replacement: Net) -> Derivation:
    """
    Rebuild ``d`` with the subnet at ``path`` replaced.

    Nodes on the way keep their rule and contexts; the cores at the end of
    the path are handed to ``at_root``.
    """
    if not path:
        return map_cores(d, at_root, replacement)
    new_net = replace_at(d.net, path, replacement)
    if d.rule in STRUCTURAL_RULES:
        premises = tuple(rebuild_along(p, path, at_root, replacement) for p in d.premises)
    else:
        # Export, import and cut premises follow the child order of the net.
        premises = list(d.premises)
        premises[path[0]] = rebuild_along(premises[path[0]], path[1:], at_root, replacement)
        premises = tuple(premises)
    return replace(d, conclusion=Judgement(new_net, dict(d.gamma), dict(d.delta)), premises=premises)


def preserve_core(core: Derivation, rule: RuleId, rhs: Net) -> Derivation:
    """
    Derivation of ``rhs`` at the contexts of a cut core.

    Raises:
        PreservationError: If neither the rule's case nor a zero rule applies.
    """
    if core.rule not in CUT_RULES:
        raise PreservationError(rule.name, f"expected a cut at the redex, found {core.rule}")
    try:
        try:
            return CASES[rule](core, rhs)
        except SplitFound as split:
            if split.internal:
                raise PreservationError(
                    rule.name, f"{split.split.rule} on the cut connector {split.split.subject} has no single branch")
            return _hoist(core, split.split, rule, rhs)
    except (ShapeError, ThinningError, PreservationError, KeyError) as e:
        trivial = trivial_derivation(rhs, core.gamma, core.delta, core.system)
        if trivial is not None:
            return trivial
        if isinstance(e, PreservationError):
            raise
        raise PreservationError(rule.name, str(e)) from e


def _hoist(core: Derivation, split: Derivation, rule: RuleId, rhs: Net) -> Derivation:
    """Lift an outer split out of an operand and redo the case per branch."""
    system, gamma, delta = core.system, core.gamma, core.delta
    n: Cut = core.net
    a, x, cut_type = n.bind_plug, n.bind_socket, core.cut_type
    left, right = core.premises
    on_left = any(found is split for _, found in left.nodes())
    other, other_net = (right, n.right) if on_left else (left, n.left)
    s = split.subject
    socket = split.rule == UNION_L
    shared = s in (free_sockets(other_net) if socket else free_plugs(other_net))
    if not shared and (s in other.gamma or s in other.delta):
        other = thin(other, [s])
    branches = []
    for branch in split.premises:
        if socket:
            t = branch.gamma[s]
            if shared:
                t = mk_inter([t, gamma[s]])
            branch_gamma, branch_delta = extend(gamma, s, t), dict(delta)
        else:
            t = branch.delta[s]
            if shared:
                t = mk_union([t, delta[s]])
            branch_gamma, branch_delta = dict(gamma), extend(delta, s, t)
        if on_left:
            new_left = fit(branch, branch_gamma, extend(branch_delta, a, cut_type))
            new_right = fit(other, extend(branch_gamma, x, cut_type), branch_delta)
        else:
            new_left = fit(other, branch_gamma, extend(branch_delta, a, cut_type))
            new_right = fit(branch, extend(branch_gamma, x, cut_type), branch_delta)
        branch_core = node(system, core.rule, n, branch_gamma, branch_delta,
                           (new_left, new_right), cut_type=cut_type)
        branches.append(preserve_core(branch_core, rule, rhs))
    return build_split(system, split.rule, rhs, s, gamma, delta, branches)


########################
# Logical cases        #
########################

def _ax(core: Derivation, rhs: Capsule) -> Derivation:
    return build_ax(core.system, rhs, core.gamma, core.delta)


def _rename_left(core: Derivation, rhs: Net) -> Derivation:
    """``P a^ + x^ <x.b>`` becomes P with a renamed to b."""
    n: Cut = core.net
    b = n.right.plug
    left = core.premises[0]
    if b in core.delta:
        left = narrow(left, n.bind_plug, core.delta[b], socket=False)
    if b not in free_plugs(n.left) and b in left.delta:
        left = thin(left, [b])
    return fit(rename_derivation(left, {}, {n.bind_plug: b}), core.gamma, core.delta)


def _rename_right(core: Derivation, rhs: Net) -> Derivation:
    """``<y.a> a^ + x^ Q`` becomes Q with x renamed to y."""
    n: Cut = core.net
    y = n.left.socket
    right = core.premises[1]
    if y in core.gamma:
        right = narrow(right, n.bind_socket, core.gamma[y], socket=True)
    if y not in free_sockets(n.right) and y in right.gamma:
        right = thin(right, [y])
    return fit(rename_derivation(right, {n.bind_socket: y}, {}), core.gamma, core.delta)


def _matching_arrows(core: Derivation) -> Tuple[Derivation, Derivation, Arrow]:
    n: Cut = core.net
    left, right = core.premises
    for lf in leaves(left, n.bind_plug):
        if lf.rule != IMP_R:
            continue
        body = _export_body(lf)
        given = Arrow(body.gamma[n.left.bind_socket], body.delta[n.left.bind_plug])
        for rf in leaves(right, n.bind_socket):
            if rf.rule != IMP_L:
                continue
            wanted = Arrow(rf.premises[0].delta[n.right.bind_plug], rf.premises[1].gamma[n.right.bind_socket])
            if leq(given, wanted):
                return lf, rf, given
    raise ShapeError("no export arrow is below an import arrow")


def _exp_imp_left(core: Derivation, rhs: Cut) -> Derivation:
    system, gamma, delta = core.system, core.gamma, core.delta
    exp_node, imp_node, arrow = _matching_arrows(core)
    body = _export_body(exp_node)
    q_left, q_right = imp_node.premises
    inner = build_cut(system, rhs.left, gamma, extend(delta, rhs.bind_plug, arrow.right),
                      arrow.left, q_left, body)
    return build_cut(system, rhs, gamma, delta, arrow.right, inner, q_right)


def _exp_imp_right(core: Derivation, rhs: Cut) -> Derivation:
    system, gamma, delta = core.system, core.gamma, core.delta
    exp_node, imp_node, arrow = _matching_arrows(core)
    body = _export_body(exp_node)
    q_left, q_right = imp_node.premises
    inner = build_cut(system, rhs.right, extend(gamma, rhs.bind_socket, arrow.left), delta,
                      arrow.right, body, q_right)
    return build_cut(system, rhs, gamma, delta, arrow.left, q_left, inner)


########################
# Activation cases     #
########################

def _activate(core: Derivation, rhs: Cut) -> Derivation:
    """Same premises under the cut rule the system assigns to the new flag."""
    system = core.system
    rule = allowed_cut_rule(system, rhs.activation)
    try:
        check_cut_side_conditions(rule, rhs, core.cut_type)
        return node(system, rule, rhs, core.gamma, core.delta, core.premises, cut_type=core.cut_type)
    except ShapeError:
        if rule == CUT_L:
            return _cover_left(core, rhs)
        if rule == CUT_R:
            return _cover_right(core, rhs)
        raise


def _peel(d: Derivation, rules: Sequence[str]) -> Derivation:
    while d.rule in rules:
        d = d.premises[0]
    return d


def _cover_left(core: Derivation, rhs: Cut) -> Derivation:
    """
    A cutL whose type is an intersection: keep one meetand when the right
    operand accepts it, otherwise split the plug of a capsule operand.
    """
    system, gamma, delta = core.system, core.gamma, core.delta
    a, x = rhs.bind_plug, rhs.bind_socket
    left, right = core.premises
    parts = meetands(normalize(core.cut_type))
    base = _peel(right, (WEAK, UNION_E, INTER_E))
    for part in parts:
        if x in base.gamma and leq(part, base.gamma[x]) and liftable(base, extend(gamma, x, part), delta):
            new_left = lift(left, gamma, extend(delta, a, part))
            new_right = lift(base, extend(gamma, x, part), delta)
            return build_cut(system, rhs, gamma, delta, part, new_left, new_right)
    if isinstance(rhs.right, Capsule) and rhs.right.plug in delta:
        b = rhs.right.plug
        branches = []
        for bound in meetands(normalize(delta[b])):
            part = next((p for p in parts if leq(p, bound)), None)
            if part is None:
                raise ShapeError("no meetand of the cut type reaches the capsule's plug")
            branch_delta = extend(delta, b, bound)
            new_left = lift(left, gamma, extend(branch_delta, a, part))
            new_right = build_ax(system, rhs.right, extend(gamma, x, part), branch_delta)
            branches.append(build_cut(system, rhs, gamma, branch_delta, part, new_left, new_right))
        return build_split(system, INTER_R, rhs, b, gamma, delta, branches)
    raise ShapeError("no meetand of the cut type fits the introduced socket")


def _cover_right(core: Derivation, rhs: Cut) -> Derivation:
    """Dual of ``_cover_left`` for a cutR whose type is a union."""
    system, gamma, delta = core.system, core.gamma, core.delta
    a, x = rhs.bind_plug, rhs.bind_socket
    left, right = core.premises
    parts = joinands(normalize(core.cut_type))
    base = _peel(left, (WEAK, INTER_E, UNION_E))
    for part in parts:
        if a in base.delta and leq(base.delta[a], part) and liftable(base, gamma, extend(delta, a, part)):
            new_left = lift(base, gamma, extend(delta, a, part))
            new_right = lift(right, extend(gamma, x, part), delta)
            return build_cut(system, rhs, gamma, delta, part, new_left, new_right)
    if isinstance(rhs.left, Capsule) and rhs.left.socket in gamma:
        y = rhs.left.socket
        branches = []
        for bound in joinands(normalize(gamma[y])):
            part = next((p for p in parts if leq(bound, p)), None)
            if part is None:
                raise ShapeError("no joinand of the cut type reaches the capsule's socket")
            branch_gamma = extend(gamma, y, bound)
            new_right = lift(right, extend(branch_gamma, x, part), delta)
            new_left = build_ax(system, rhs.left, branch_gamma, extend(delta, a, part))
            branches.append(build_cut(system, rhs, branch_gamma, delta, part, new_left, new_right))
        return build_split(system, UNION_L, rhs, y, gamma, delta, branches)
    raise ShapeError("no joinand of the cut type fits the introduced plug")


def _drop_left(core: Derivation, rhs: Net) -> Derivation:
    return fit(core.premises[0], core.gamma, core.delta)


def _drop_right(core: Derivation, rhs: Net) -> Derivation:
    return fit(core.premises[1], core.gamma, core.delta)


########################
# Propagation cases    #
########################

def _expect(d: Derivation, rule: str) -> Derivation:
    if d.rule != rule and not (rule in CUT_RULES and d.rule in CUT_RULES):
        raise ShapeError(f"expected {rule}, found {d.rule} for {show_net(d.net)}")
    return d


def _left_core(core: Derivation, rule: str) -> Derivation:
    return _expect(pure(core.premises[0], (core.net.bind_plug,)), rule)


def _right_core(core: Derivation, rule: str) -> Derivation:
    return _expect(pure(core.premises[1], (core.net.bind_socket,)), rule)


def _export_body(exp_node: Derivation) -> Derivation:
    return with_binders(exp_node.premises[0], exp_node.net)


def _arrow_of_export(exp_node: Derivation) -> Arrow:
    n = exp_node.net
    body = _export_body(exp_node)
    return Arrow(body.gamma[n.bind_socket], body.delta[n.bind_plug])


def _arrow_of_import(imp_node: Derivation) -> Arrow:
    n = imp_node.net
    return Arrow(imp_node.premises[0].delta[n.bind_plug], imp_node.premises[1].gamma[n.bind_socket])


def _body_delta(delta: Dict[str, IUType], out: str, body: Net) -> Dict[str, IUType]:
    return dict(delta) if out in free_plugs(body) else without(delta, out)


def _body_gamma(gamma: Dict[str, IUType], mid: str, *subnets: Net) -> Dict[str, IUType]:
    used = any(mid in free_sockets(s) for s in subnets)
    return dict(gamma) if used else without(gamma, mid)


def _dl_exp_outs(core: Derivation, rhs: Cut) -> Derivation:
    system, gamma, delta, cut_type = core.system, core.gamma, core.delta, core.cut_type
    exp_node = _left_core(core, IMP_R)
    arrow = _arrow_of_export(exp_node)
    export = rhs.left
    inner_net = export.body
    inner = build_cut(system, inner_net, extend(gamma, export.bind_socket, arrow.left),
                      extend(delta, export.bind_plug, arrow.right), cut_type,
                      _export_body(exp_node), core.premises[1])
    new_export = build_export(system, export, gamma, extend(delta, export.out, arrow), inner)
    return build_cut(system, rhs, gamma, delta, arrow, new_export, core.premises[1])


def _dl_exp_ins(core: Derivation, rhs: Net) -> Derivation:
    system, gamma, delta, cut_type = core.system, core.gamma, core.delta, core.cut_type
    exp_node = _left_core(core, IMP_R)
    arrow = _arrow_of_export(exp_node)
    body_delta = _body_delta(delta, rhs.out, rhs.body)
    inner = build_cut(system, rhs.body, extend(gamma, rhs.bind_socket, arrow.left),
                      extend(body_delta, rhs.bind_plug, arrow.right), cut_type,
                      _export_body(exp_node), core.premises[1])
    return build_export(system, rhs, gamma, delta, inner)


def _dl_imp(core: Derivation, rhs: Net) -> Derivation:
    system, gamma, delta, cut_type = core.system, core.gamma, core.delta, core.cut_type
    imp_node = _left_core(core, IMP_L)
    arrow = _arrow_of_import(imp_node)
    q_left, q_right = imp_node.premises
    right = core.premises[1]
    body_gamma = _body_gamma(gamma, rhs.mid, rhs.left, rhs.right)
    new_left = build_cut(system, rhs.left, body_gamma, extend(delta, rhs.bind_plug, arrow.left),
                         cut_type, q_left, right)
    new_right = build_cut(system, rhs.right, extend(body_gamma, rhs.bind_socket, arrow.right), delta,
                          cut_type, q_right, right)
    return build_import(system, rhs, gamma, delta, new_left, new_right)


def _dl_cut(core: Derivation, rhs: Cut) -> Derivation:
    system, gamma, delta, cut_type = core.system, core.gamma, core.delta, core.cut_type
    inner = _left_core(core, CUT)
    inner_type = inner.cut_type
    p_left, p_right = inner.premises
    right = core.premises[1]
    new_left = build_cut(system, rhs.left, gamma, extend(delta, rhs.bind_plug, inner_type),
                         cut_type, p_left, right)
    new_right = build_cut(system, rhs.right, extend(gamma, rhs.bind_socket, inner_type), delta,
                          cut_type, p_right, right)
    return build_cut(system, rhs, gamma, delta, inner_type, new_left, new_right)


def _dr_exp(core: Derivation, rhs: Net) -> Derivation:
    system, gamma, delta, cut_type = core.system, core.gamma, core.delta, core.cut_type
    exp_node = _right_core(core, IMP_R)
    arrow = _arrow_of_export(exp_node)
    body_delta = _body_delta(delta, rhs.out, rhs.body)
    inner = build_cut(system, rhs.body, extend(gamma, rhs.bind_socket, arrow.left),
                      extend(body_delta, rhs.bind_plug, arrow.right), cut_type,
                      core.premises[0], _export_body(exp_node))
    return build_export(system, rhs, gamma, delta, inner)


def _dr_imp_ins(core: Derivation, rhs: Net) -> Derivation:
    system, gamma, delta, cut_type = core.system, core.gamma, core.delta, core.cut_type
    imp_node = _right_core(core, IMP_L)
    arrow = _arrow_of_import(imp_node)
    q_left, q_right = imp_node.premises
    left = core.premises[0]
    body_gamma = _body_gamma(gamma, rhs.mid, rhs.left, rhs.right)
    new_left = build_cut(system, rhs.left, body_gamma, extend(delta, rhs.bind_plug, arrow.left),
                         cut_type, left, q_left)
    new_right = build_cut(system, rhs.right, extend(body_gamma, rhs.bind_socket, arrow.right), delta,
                          cut_type, left, q_right)
    return build_import(system, rhs, gamma, delta, new_left, new_right)


def _dr_imp_outs(core: Derivation, rhs: Cut) -> Derivation:
    system, gamma, delta, cut_type = core.system, core.gamma, core.delta, core.cut_type
    imp_node = _right_core(core, IMP_L)
    arrow = _arrow_of_import(imp_node)
    q_left, q_right = imp_node.premises
    left = core.premises[0]
    imp_net = rhs.right
    new_left = build_cut(system, imp_net.left, gamma, extend(delta, imp_net.bind_plug, arrow.left),
                         cut_type, left, q_left)
    new_right = build_cut(system, imp_net.right, extend(gamma, imp_net.bind_socket, arrow.right), delta,
                          cut_type, left, q_right)
    new_import = build_import(system, imp_net, extend(gamma, imp_net.mid, arrow), delta, new_left, new_right)
    return build_cut(system, rhs, gamma, delta, cut_type, left, new_import)


def _dr_cut(core: Derivation, rhs: Cut) -> Derivation:
    system, gamma, delta, cut_type = core.system, core.gamma, core.delta, core.cut_type
    inner = _right_core(core, CUT)
    inner_type = inner.cut_type
    q_left, q_right = inner.premises
    left = core.premises[0]
    new_left = build_cut(system, rhs.left, gamma, extend(delta, rhs.bind_plug, inner_type),
                         cut_type, left, q_left)
    new_right = build_cut(system, rhs.right, extend(gamma, rhs.bind_socket, inner_type), delta,
                          cut_type, left, q_right)
    return build_cut(system, rhs, gamma, delta, inner_type, new_left, new_right)


CASES: Dict[RuleId, CoreCase] = {
    RuleId.Ax: _ax,
    RuleId.ExpR: _rename_left,
    RuleId.ImpL: _rename_right,
    RuleId.ExpImpLeftAssoc: _exp_imp_left,
    RuleId.ExpImpRightAssoc: _exp_imp_right,
    RuleId.ActL: _activate,
    RuleId.ActR: _activate,
    RuleId.DL_d: _activate,
    RuleId.DR_d: _activate,
    RuleId.DL_cap: _drop_left,
    RuleId.DR_cap: _drop_right,
    RuleId.DL_expOuts: _dl_exp_outs,
    RuleId.DL_expIns: _dl_exp_ins,
    RuleId.DL_imp: _dl_imp,
    RuleId.DL_cut: _dl_cut,
    RuleId.DR_exp: _dr_exp,
    RuleId.DR_impOuts: _dr_imp_outs,
    RuleId.DR_impIns: _dr_imp_ins,
    RuleId.DR_cut: _dr_cut,
    RuleId.GC_L: _drop_left,
    RuleId.GC_R: _drop_right,
    RuleId.Ren_L: _rename_left,
    RuleId.Ren_R: _rename_right,
}
