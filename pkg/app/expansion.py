########################
# Witness Expansion     #
########################

"""
Rebuild a derivation of a net from a derivation of its reduct.

Only the intersection/union system is covered. Where a step copies an
operand, the copies may have been typed differently; the rebuilt cut then
takes the union of the copies' types on a unionL over the shared socket, or
the intersection on an interR over the shared plug.
"""

import logging
from typing import Callable, Dict, Optional

from app.checker import check_derivation
from app.derivation import CUT, IMP_L, IMP_R, INTER_R, UNION_L, Derivation, System, node
from app.exceptions import ExpansionShapeError, RuleError, ShapeError, ThinningError
from app.iu_types import BOT, TOP, Arrow, mk_inter, mk_union, normalize
from app.preservation import rebuild_along
from app.rewrite import Redex, RuleId, step_raw
from app.syntax import Cut, NameSupply, Net, alpha_eq, show_net, subnet_at
from app.transformers import (
    SplitFound, build_ax, build_cut, build_export, build_import, build_split, extend, fit, pure,
    transport, trivial_derivation, with_binders,
)

ExpansionCase = Callable[[Derivation, Cut], Derivation]


def expand(reduct: Derivation, n: Net, redex: Redex, supply: Optional[NameSupply] = None) -> Derivation:
    """
    Derive ``n`` at the contexts of ``reduct``, which types the result of
    firing ``redex`` on ``n``.

    Args:
        reduct (Derivation): An intersection/union derivation of the reduct.
        n (Net): The net before the step.
        redex (Redex): The step that was fired.

    Raises:
        ExpansionShapeError: For other systems, the renaming rules, a
            derivation that does not type the reduct, or a shape with no
            expansion.
    """
    if reduct.system is System.SIMPLE:
        reduct = reduct.with_system(System.IU)
    if reduct.system is not System.IU:
        raise ExpansionShapeError(f"expansion is only defined for the {System.IU.value} system")
    if redex.rule not in CASES:
        raise ExpansionShapeError(f"{redex.rule.name} has no expansion")
    supply = supply or NameSupply()
    supply.reserve_net(n)
    supply.reserve_net(reduct.net)
    _, raw = step_raw(n, redex, supply)
    if not alpha_eq(raw, reduct.net):
        raise ExpansionShapeError(f"{show_net(reduct.net)} is not the reduct of {show_net(n)}")
    lhs = subnet_at(n, redex.position)
    rule = redex.rule

    def at_redex(core: Derivation) -> Derivation:
        return expand_core(core, rule, lhs)

    try:
        result = rebuild_along(transport(reduct, raw), redex.position, at_redex, lhs)
        check_derivation(result)
    except (ShapeError, ThinningError, RuleError) as e:
        if isinstance(e, ExpansionShapeError):
            raise
        raise ExpansionShapeError(f"{rule.name}: {e}") from e
    logging.debug(f"Expanded {rule.name} @ {redex.path_text()} back to {show_net(n)}")
    return result


def expand_core(core: Derivation, rule: RuleId, lhs: Cut) -> Derivation:
    try:
        return CASES[rule](core, lhs)
    except (ShapeError, ThinningError, KeyError) as e:
        trivial = trivial_derivation(lhs, core.gamma, core.delta, System.IU)
        if trivial is not None:
            return trivial
        raise ExpansionShapeError(f"{rule.name}: {e}") from e


def _core(d: Derivation, rule: str) -> Derivation:
    try:
        found = pure(d)
    except SplitFound as split:
        raise ExpansionShapeError(f"{split.split.rule} on {split.split.subject} has no single branch")
    if found.rule != rule and not (rule == CUT and found.rule.startswith(CUT)):
        raise ExpansionShapeError(f"expected {rule}, found {found.rule} for {show_net(found.net)}")
    return found


def _union_socket(lhs: Cut, gamma, delta, parts) -> Derivation:
    """unionL on the cut's socket over copies typed by ``parts``."""
    x = lhs.bind_socket
    branches = [fit(d, extend(gamma, x, t), delta) for d, t in parts]
    joined = mk_union([t for _, t in parts])
    return build_split(System.IU, UNION_L, lhs.right, x, extend(gamma, x, joined), delta, branches)


def _inter_plug(lhs: Cut, gamma, delta, parts) -> Derivation:
    """interR on the cut's plug over copies typed by ``parts``."""
    a = lhs.bind_plug
    branches = [fit(d, gamma, extend(delta, a, t)) for d, t in parts]
    met = mk_inter([t for _, t in parts])
    return build_split(System.IU, INTER_R, lhs.left, a, gamma, extend(delta, a, met), branches)


########################
# Logical cases        #
########################

def _ax(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    t = gamma[lhs.left.socket]
    left = build_ax(System.IU, lhs.left, gamma, extend(delta, lhs.bind_plug, t))
    right = build_ax(System.IU, lhs.right, extend(gamma, lhs.bind_socket, t), delta)
    return build_cut(System.IU, lhs, gamma, delta, t, left, right)


def _exp_r(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    exp_node = _core(core, IMP_R)
    body = exp_node.premises[0]
    arrow = Arrow(body.gamma[lhs.left.bind_socket], body.delta[lhs.left.bind_plug])
    left = build_export(System.IU, lhs.left, gamma, extend(delta, lhs.bind_plug, arrow), body)
    right = build_ax(System.IU, lhs.right, extend(gamma, lhs.bind_socket, arrow), delta)
    return build_cut(System.IU, lhs, gamma, delta, arrow, left, right)


def _imp_l(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    imp_node = _core(core, IMP_L)
    q_left, q_right = imp_node.premises
    imp = lhs.right
    arrow = Arrow(q_left.delta[imp.bind_plug], q_right.gamma[imp.bind_socket])
    left = build_ax(System.IU, lhs.left, gamma, extend(delta, lhs.bind_plug, arrow))
    right = build_import(System.IU, imp, extend(gamma, lhs.bind_socket, arrow), delta, q_left, q_right)
    return build_cut(System.IU, lhs, gamma, delta, arrow, left, right)


def _reassemble(core: Derivation, lhs: Cut, body: Derivation, q_left: Derivation,
                q_right: Derivation, arrow: Arrow) -> Derivation:
    gamma, delta = core.gamma, core.delta
    left = build_export(System.IU, lhs.left, gamma, extend(delta, lhs.bind_plug, arrow), body)
    right = build_import(System.IU, lhs.right, extend(gamma, lhs.bind_socket, arrow), delta, q_left, q_right)
    return build_cut(System.IU, lhs, gamma, delta, arrow, left, right)


def _exp_imp_left(core: Derivation, lhs: Cut) -> Derivation:
    outer = _core(core, CUT)
    inner_d, q_right = outer.premises
    inner = _core(inner_d, CUT)
    q_left, body = inner.premises
    return _reassemble(core, lhs, body, q_left, q_right, Arrow(inner.cut_type, outer.cut_type))


def _exp_imp_right(core: Derivation, lhs: Cut) -> Derivation:
    outer = _core(core, CUT)
    q_left, inner_d = outer.premises
    inner = _core(inner_d, CUT)
    body, q_right = inner.premises
    return _reassemble(core, lhs, body, q_left, q_right, Arrow(outer.cut_type, inner.cut_type))


def _deactivate(core: Derivation, lhs: Cut) -> Derivation:
    found = _core(core, CUT)
    return node(System.IU, CUT, lhs, core.gamma, core.delta, found.premises, cut_type=found.cut_type)


def _garbage_left(core: Derivation, lhs: Cut) -> Derivation:
    """The cut returned its left operand; the right one is typed from x:BOT."""
    gamma, delta = core.gamma, core.delta
    left = fit(core, gamma, extend(delta, lhs.bind_plug, BOT))
    right = node(System.IU, UNION_L, lhs.right, extend(gamma, lhs.bind_socket, BOT), delta, (),
                 subject=lhs.bind_socket)
    return build_cut(System.IU, lhs, gamma, delta, BOT, left, right)


def _garbage_right(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    left = node(System.IU, INTER_R, lhs.left, gamma, extend(delta, lhs.bind_plug, TOP), (),
                subject=lhs.bind_plug)
    right = fit(core, extend(gamma, lhs.bind_socket, TOP), delta)
    return build_cut(System.IU, lhs, gamma, delta, TOP, left, right)


########################
# Propagation cases    #
########################

def _dl_exp_outs(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    outer = _core(core, CUT)
    exp_d, q_outer = outer.premises
    body = _core(exp_d, IMP_R).premises[0]
    inner = _core(body, CUT)
    p_body, q_inner = inner.premises
    p_body = with_binders(p_body, lhs.left, body)
    joined = normalize(mk_union([inner.cut_type, outer.cut_type]))
    left = build_export(System.IU, lhs.left, gamma, extend(delta, lhs.bind_plug, joined), p_body)
    right = _union_socket(lhs, gamma, delta, [(q_inner, inner.cut_type), (q_outer, outer.cut_type)])
    return build_cut(System.IU, lhs, gamma, delta, joined, left, right)


def _dl_exp_ins(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    body = _core(core, IMP_R).premises[0]
    inner = _core(body, CUT)
    p_body, q = inner.premises
    p_body = with_binders(p_body, lhs.left, body)
    t = inner.cut_type
    left = build_export(System.IU, lhs.left, gamma, extend(delta, lhs.bind_plug, t), p_body)
    right = fit(q, extend(gamma, lhs.bind_socket, t), delta)
    return build_cut(System.IU, lhs, gamma, delta, t, left, right)


def _dl_imp(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    imp_node = _core(core, IMP_L)
    first = _core(imp_node.premises[0], CUT)
    second = _core(imp_node.premises[1], CUT)
    joined = normalize(mk_union([first.cut_type, second.cut_type]))
    left = build_import(System.IU, lhs.left, gamma, extend(delta, lhs.bind_plug, joined),
                        first.premises[0], second.premises[0])
    right = _union_socket(lhs, gamma, delta, [(first.premises[1], first.cut_type),
                                              (second.premises[1], second.cut_type)])
    return build_cut(System.IU, lhs, gamma, delta, joined, left, right)


def _dl_cut(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    outer = _core(core, CUT)
    first = _core(outer.premises[0], CUT)
    second = _core(outer.premises[1], CUT)
    joined = normalize(mk_union([first.cut_type, second.cut_type]))
    left = build_cut(System.IU, lhs.left, gamma, extend(delta, lhs.bind_plug, joined), outer.cut_type,
                     first.premises[0], second.premises[0])
    right = _union_socket(lhs, gamma, delta, [(first.premises[1], first.cut_type),
                                              (second.premises[1], second.cut_type)])
    return build_cut(System.IU, lhs, gamma, delta, joined, left, right)


def _dr_exp(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    body = _core(core, IMP_R).premises[0]
    inner = _core(body, CUT)
    p, q_body = inner.premises
    q_body = with_binders(q_body, lhs.right, body)
    t = inner.cut_type
    left = fit(p, gamma, extend(delta, lhs.bind_plug, t))
    right = build_export(System.IU, lhs.right, extend(gamma, lhs.bind_socket, t), delta, q_body)
    return build_cut(System.IU, lhs, gamma, delta, t, left, right)


def _dr_imp_ins(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    imp_node = _core(core, IMP_L)
    first = _core(imp_node.premises[0], CUT)
    second = _core(imp_node.premises[1], CUT)
    met = normalize(mk_inter([first.cut_type, second.cut_type]))
    left = _inter_plug(lhs, gamma, delta, [(first.premises[0], first.cut_type),
                                           (second.premises[0], second.cut_type)])
    right = build_import(System.IU, lhs.right, extend(gamma, lhs.bind_socket, met), delta,
                         first.premises[1], second.premises[1])
    return build_cut(System.IU, lhs, gamma, delta, met, left, right)


def _dr_imp_outs(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    outer = _core(core, CUT)
    p_outer, imp_d = outer.premises
    imp_node = _core(imp_d, IMP_L)
    first = _core(imp_node.premises[0], CUT)
    second = _core(imp_node.premises[1], CUT)
    met = normalize(mk_inter([first.cut_type, second.cut_type, outer.cut_type]))
    left = _inter_plug(lhs, gamma, delta, [(first.premises[0], first.cut_type),
                                           (second.premises[0], second.cut_type),
                                           (p_outer, outer.cut_type)])
    right = build_import(System.IU, lhs.right, extend(gamma, lhs.bind_socket, met), delta,
                         first.premises[1], second.premises[1])
    return build_cut(System.IU, lhs, gamma, delta, met, left, right)


def _dr_cut(core: Derivation, lhs: Cut) -> Derivation:
    gamma, delta = core.gamma, core.delta
    outer = _core(core, CUT)
    first = _core(outer.premises[0], CUT)
    second = _core(outer.premises[1], CUT)
    met = normalize(mk_inter([first.cut_type, second.cut_type]))
    left = _inter_plug(lhs, gamma, delta, [(first.premises[0], first.cut_type),
                                           (second.premises[0], second.cut_type)])
    right = build_cut(System.IU, lhs.right, extend(gamma, lhs.bind_socket, met), delta, outer.cut_type,
                      first.premises[1], second.premises[1])
    return build_cut(System.IU, lhs, gamma, delta, met, left, right)


CASES: Dict[RuleId, ExpansionCase] = {
    RuleId.Ax: _ax,
    RuleId.ExpR: _exp_r,
    RuleId.ImpL: _imp_l,
    RuleId.ExpImpLeftAssoc: _exp_imp_left,
    RuleId.ExpImpRightAssoc: _exp_imp_right,
    RuleId.ActL: _deactivate,
    RuleId.ActR: _deactivate,
    RuleId.DL_d: _deactivate,
    RuleId.DR_d: _deactivate,
    RuleId.DL_cap: _garbage_left,
    RuleId.DR_cap: _garbage_right,
    RuleId.DL_expOuts: _dl_exp_outs,
    RuleId.DL_expIns: _dl_exp_ins,
    RuleId.DL_imp: _dl_imp,
    RuleId.DL_cut: _dl_cut,
    RuleId.DR_exp: _dr_exp,
    RuleId.DR_impOuts: _dr_imp_outs,
    RuleId.DR_impIns: _dr_imp_ins,
    RuleId.DR_cut: _dr_cut,
    RuleId.GC_L: _garbage_left,
    RuleId.GC_R: _garbage_right,
}
