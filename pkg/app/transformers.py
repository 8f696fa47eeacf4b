########################
# Derivation Transformers #
########################

"""
Admissible-rule transformers and the node builders shared by witness
reduction and witness expansion.

Builders named ``build_*`` take the target contexts of the node they create
and fit their premises to the contexts the rule schema asks for. In the
simple system fitting only adds statements (pushed down to every node); in
the other systems it may also narrow sockets and widen plugs through a
single W node.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from app.checker import allowed_cut_rule
from app.derivation import (
    AX, CUT_L, CUT_R, IMP_L, IMP_R, INTER_E, INTER_R, STRUCTURAL_RULES, UNION_E, UNION_L, WEAK,
    CUT_RULES, Derivation, Judgement, System, node,
)
from app.exceptions import IncompatibleContextError, ShapeError, ThinningError
from app.iu_types import (
    BOT, TOP, Arrow, IUType, equiv, is_intersection, is_union, joinands, leq, meetands, mk_inter,
    mk_union, normalize, show_type,
)
from app.syntax import (
    Capsule, Cut, Export, Import, Net, bound_names, free_plugs, free_sockets, introduces_plug,
    introduces_socket, show_net, substitute,
)

Ctx = Mapping[str, IUType]


def extend(ctx: Ctx, subject: str, t: IUType) -> Dict[str, IUType]:
    merged = dict(ctx)
    merged[subject] = normalize(t)
    return merged


def without(ctx: Ctx, *names: str) -> Dict[str, IUType]:
    return {s: t for s, t in ctx.items() if s not in names}


def _free(n: Net) -> set:
    return set(free_sockets(n)) | set(free_plugs(n))


########################
# Trivial judgements   #
########################

def trivial_derivation(n: Net, gamma: Ctx, delta: Ctx, system: System) -> Optional[Derivation]:
    """
    A zero-rule derivation when the contexts hold a plug of type TOP or a
    socket of type BOT that the system lets the net discharge.
    """
    if system is System.SIMPLE:
        return None
    bound = bound_names(n)
    if any(s in bound for s in list(gamma) + list(delta)):
        return None
    for a in sorted(delta):
        if equiv(delta[a], TOP) and (system is not System.CBV or introduces_plug(n, a)):
            return node(system, INTER_R, n, gamma, delta, (), subject=a)
    for x in sorted(gamma):
        if equiv(gamma[x], BOT) and (system is not System.CBN or introduces_socket(n, x)):
            return node(system, UNION_L, n, gamma, delta, (), subject=x)
    return None


########################
# Weakening and lifting #
########################

def liftable(d: Derivation, gamma: Ctx, delta: Ctx) -> bool:
    """True when a W node can take ``d`` to the target contexts."""
    bound = bound_names(d.net)
    if any(s in bound for s in list(gamma) + list(delta)):
        return False
    for s, t in d.gamma.items():
        if s not in gamma or not leq(gamma[s], t):
            return False
    for a, t in d.delta.items():
        if a not in delta or not leq(t, delta[a]):
            return False
    return True


def _same(first: Ctx, second: Ctx) -> bool:
    return set(first) == set(second) and all(equiv(first[s], second[s]) for s in first)


def _push_down(d: Derivation, extra_gamma: Ctx, extra_delta: Ctx) -> Derivation:
    for s, t in extra_gamma.items():
        if s in d.gamma and not equiv(d.gamma[s], t):
            raise ShapeError(f"cannot add {s}:{show_type(t)}, already typed {show_type(d.gamma[s])}")
    for a, t in extra_delta.items():
        if a in d.delta and not equiv(d.delta[a], t):
            raise ShapeError(f"cannot add {a}:{show_type(t)}, already typed {show_type(d.delta[a])}")
    gamma = dict(d.gamma)
    gamma.update(extra_gamma)
    delta = dict(d.delta)
    delta.update(extra_delta)
    premises = tuple(_push_down(p, extra_gamma, extra_delta) for p in d.premises)
    return replace(d, conclusion=Judgement(d.net, gamma, delta), premises=premises)


def lift(d: Derivation, gamma: Ctx, delta: Ctx) -> Derivation:
    """
    Move a derivation to wider-or-equal contexts.

    In the simple system only new statements can be added; elsewhere sockets
    may be narrowed and plugs widened too.

    Raises:
        ShapeError: If the target contexts are not reachable.
    """
    if _same(d.gamma, gamma) and _same(d.delta, delta):
        return d
    if not liftable(d, gamma, delta):
        raise ShapeError(f"cannot lift {d.conclusion} to {dict_text(gamma)} |- {dict_text(delta)}")
    gamma = {s: normalize(t) for s, t in gamma.items()}
    delta = {a: normalize(t) for a, t in delta.items()}
    if d.system is System.SIMPLE:
        if any(not equiv(gamma[s], t) for s, t in d.gamma.items()) or \
                any(not equiv(delta[a], t) for a, t in d.delta.items()):
            raise ShapeError("the simple system only adds statements")
        extra_gamma = {s: t for s, t in gamma.items() if s not in d.gamma}
        extra_delta = {a: t for a, t in delta.items() if a not in d.delta}
        return _push_down(d, extra_gamma, extra_delta)
    base = d.premises[0] if d.rule == WEAK else d
    if _same(base.gamma, gamma) and _same(base.delta, delta):
        return base
    return node(d.system, WEAK, d.net, gamma, delta, (base,))


def fit(d: Derivation, gamma: Ctx, delta: Ctx) -> Derivation:
    """Thin statements the target lacks (they must not be free), then lift."""
    spurious = [s for s in d.gamma if s not in gamma] + [a for a in d.delta if a not in delta]
    if spurious:
        d = thin(d, spurious)
    return lift(d, gamma, delta)


def dict_text(ctx: Ctx) -> str:
    return ", ".join(f"{s}:{show_type(ctx[s])}" for s in sorted(ctx))


def weaken(d: Derivation, subject: str, t: IUType, socket: bool = True) -> Derivation:
    """
    Add the statement ``subject:t`` on the chosen side.

    A statement already present with an equivalent type leaves ``d`` as is;
    otherwise outside the simple system the types are merged (intersection
    for sockets, union for plugs).

    Raises:
        ShapeError: If the subject is bound in the net.
        IncompatibleContextError: In the simple system, on a type clash.
    """
    if subject in bound_names(d.net):
        raise ShapeError(f"{subject} is bound in {show_net(d.net)}")
    ctx = d.gamma if socket else d.delta
    if subject in ctx:
        if equiv(ctx[subject], t):
            return d
        if d.system is System.SIMPLE:
            raise IncompatibleContextError(subject, show_type(ctx[subject]), show_type(t))
        merged = _merge_type(ctx[subject], t, socket)
    else:
        merged = normalize(t)
    if socket:
        return lift(d, extend(d.gamma, subject, merged), d.delta)
    return lift(d, d.gamma, extend(d.delta, subject, merged))


def _merge_type(first: IUType, second: IUType, socket: bool) -> IUType:
    return normalize(mk_inter([first, second]) if socket else mk_union([first, second]))


########################
# Thinning             #
########################

def thin(d: Derivation, subjects: Sequence[str]) -> Derivation:
    """
    Remove statements whose subjects are not free in the net.

    Raises:
        ThinningError: If a subject is free, or the derivation only holds
            because of a trivial TOP/BOT statement for it.
    """
    names = set(subjects)
    clash = names & _free(d.net)
    if clash:
        raise ThinningError(f"cannot thin free connector(s) {', '.join(sorted(clash))}")
    return _thin(d, names)


def _thin(d: Derivation, names: set) -> Derivation:
    if not any(names & (set(n.gamma) | set(n.delta)) for _, n in d.nodes()):
        return d
    if d.rule in (INTER_R, UNION_L) and d.subject in names:
        for premise in d.premises:
            try:
                return _thin(premise, names)
            except ThinningError:
                continue
        raise ThinningError(f"statement for {d.subject} is needed by a zero rule")
    if d.rule in (INTER_E, UNION_E) and d.subject in names:
        return _thin(d.premises[0], names)
    gamma = without(d.gamma, *names)
    delta = without(d.delta, *names)
    premises = tuple(_thin(p, names) for p in d.premises)
    if d.rule == WEAK:
        return lift(premises[0], gamma, delta)
    return replace(d, conclusion=Judgement(d.net, gamma, delta), premises=premises)


########################
# Transport            #
########################

def transport(d: Derivation, target: Net) -> Derivation:
    """
    Carry a derivation over to an alpha-equivalent net, renaming binders
    in the contexts of the nodes below them.

    Raises:
        ShapeError: If the nets differ in shape.
    """
    return _transport(d, target, {})


def _transport(d: Derivation, target: Net, renaming: Dict[str, str]) -> Derivation:
    def rn(ctx: Ctx) -> Dict[str, IUType]:
        return {renaming.get(s, s): t for s, t in ctx.items()}

    data = dict(d.rule_data)
    if 'subject' in data:
        data['subject'] = renaming.get(data['subject'], data['subject'])
    conclusion = Judgement(target, rn(d.gamma), rn(d.delta))
    if d.rule in STRUCTURAL_RULES:
        premises = tuple(_transport(p, target, renaming) for p in d.premises)
        return Derivation(d.system, d.rule, conclusion, premises, data)
    source = d.net
    if type(source) is not type(target):
        raise ShapeError(f"cannot transport {show_net(source)} to {show_net(target)}")
    if isinstance(source, Capsule):
        premises = ()
    elif isinstance(source, Export):
        inner = dict(renaming)
        inner[source.bind_socket] = target.bind_socket
        inner[source.bind_plug] = target.bind_plug
        premises = (_transport(d.premises[0], target.body, inner),)
    else:
        left_map = dict(renaming)
        left_map[source.bind_plug] = target.bind_plug
        right_map = dict(renaming)
        right_map[source.bind_socket] = target.bind_socket
        premises = (_transport(d.premises[0], target.left, left_map),
                    _transport(d.premises[1], target.right, right_map))
    return Derivation(d.system, d.rule, conclusion, premises, data)


########################
# Node builders        #
########################

def build_ax(system: System, n: Capsule, gamma: Ctx, delta: Ctx) -> Derivation:
    """
    Ax when the socket type is below the plug type, else a zero rule.

    Raises:
        ShapeError: If neither applies.
    """
    y, a = n.socket, n.plug
    if y in gamma and a in delta:
        ok = equiv(gamma[y], delta[a]) if system is System.SIMPLE else leq(gamma[y], delta[a])
        if ok:
            return node(system, AX, n, gamma, delta)
    trivial = trivial_derivation(n, gamma, delta, system)
    if trivial is not None:
        return trivial
    raise ShapeError(f"{show_net(n)} cannot be typed at {dict_text(gamma)} |- {dict_text(delta)}")


def check_cut_side_conditions(rule: str, n: Cut, cut_type: IUType) -> None:
    if rule == CUT_L:
        if is_intersection(cut_type):
            raise ShapeError(f"cutL type {show_type(cut_type)} is an intersection")
        if not introduces_socket(n.right, n.bind_socket):
            raise ShapeError(f"{n.bind_socket} is not introduced on the right")
    if rule == CUT_R:
        if is_union(cut_type):
            raise ShapeError(f"cutR type {show_type(cut_type)} is a union")
        if not introduces_plug(n.left, n.bind_plug):
            raise ShapeError(f"{n.bind_plug} is not introduced on the left")


def build_cut(system: System, n: Cut, gamma: Ctx, delta: Ctx, cut_type: IUType,
              left: Derivation, right: Derivation) -> Derivation:
    cut_type = normalize(cut_type)
    rule = allowed_cut_rule(system, n.activation)
    check_cut_side_conditions(rule, n, cut_type)
    left = fit(left, gamma, extend(delta, n.bind_plug, cut_type))
    right = fit(right, extend(gamma, n.bind_socket, cut_type), delta)
    return node(system, rule, n, gamma, delta, (left, right), cut_type=cut_type)


def with_binders(body: Derivation, n: Export, like: Optional[Derivation] = None) -> Derivation:
    """
    Weaken the export's bound socket and plug back into a body derivation
    that thinned them away.

    The types come from ``like`` when it holds the binders; otherwise an
    unused socket gets TOP and an unused plug BOT.

    Raises:
        ShapeError: In the simple system when no type is at hand.
    """
    y, b = n.bind_socket, n.bind_plug
    source = like if like is not None else body
    if y not in body.gamma:
        if y not in source.gamma and body.system is System.SIMPLE:
            raise ShapeError(f"no type for the unused socket {y}")
        body = weaken(body, y, source.gamma.get(y, TOP))
    if b not in body.delta:
        if b not in source.delta and body.system is System.SIMPLE:
            raise ShapeError(f"no type for the unused plug {b}")
        body = weaken(body, b, source.delta.get(b, BOT), socket=False)
    return body


def build_export(system: System, n: Export, gamma: Ctx, delta: Ctx, body: Derivation) -> Derivation:
    """impR over ``body``, fitted to the target contexts."""
    y, b, a = n.bind_socket, n.bind_plug, n.out
    if y not in body.gamma or b not in body.delta:
        raise ShapeError(f"body derivation lacks {y} or {b}")
    c, d_type = body.gamma[y], body.delta[b]
    body_delta = dict(delta) if a in free_plugs(n.body) else without(delta, a)
    body = fit(body, extend(gamma, y, c), extend(body_delta, b, d_type))
    arrow = Arrow(normalize(c), normalize(d_type))
    out_type = normalize(mk_union([body_delta[a], arrow])) if a in body_delta else arrow
    result = node(system, IMP_R, n, gamma, extend(body_delta, a, out_type), (body,))
    return lift(result, gamma, delta)


def build_import(system: System, n: Import, gamma: Ctx, delta: Ctx,
                 left: Derivation, right: Derivation) -> Derivation:
    """impL over both premises, fitted to the target contexts."""
    a, y, x = n.bind_plug, n.mid, n.bind_socket
    if a not in left.delta or x not in right.gamma:
        raise ShapeError(f"premises lack {a} or {x}")
    c, d_type = left.delta[a], right.gamma[x]
    mid_free = y in free_sockets(n.left) or y in free_sockets(n.right)
    body_gamma = dict(gamma) if mid_free else without(gamma, y)
    left = fit(left, body_gamma, extend(delta, a, c))
    right = fit(right, extend(body_gamma, x, d_type), delta)
    arrow = Arrow(normalize(c), normalize(d_type))
    mid_type = normalize(mk_inter([body_gamma[y], arrow])) if y in body_gamma else arrow
    result = node(system, IMP_L, n, extend(body_gamma, y, mid_type), delta, (left, right))
    return lift(result, gamma, delta)


def build_split(system: System, rule: str, n: Net, subject: str, gamma: Ctx, delta: Ctx,
                branches: Sequence[Derivation]) -> Derivation:
    """
    interR or unionL over branches that agree outside ``subject``, fitted
    to the target contexts.
    """
    if rule == INTER_R:
        if system is System.CBV and not introduces_plug(n, subject):
            raise ShapeError(f"interR on {subject} needs it introduced")
        parts = [b.delta[subject] for b in branches]
        result = node(system, INTER_R, n, gamma, extend(delta, subject, mk_inter(parts)),
                      tuple(branches), subject=subject)
    else:
        if system is System.CBN and not introduces_socket(n, subject):
            raise ShapeError(f"unionL on {subject} needs it introduced")
        parts = [b.gamma[subject] for b in branches]
        result = node(system, UNION_L, n, extend(gamma, subject, mk_union(parts)), delta,
                      tuple(branches), subject=subject)
    return lift(result, gamma, delta)


########################
# Renaming             #
########################

def _rename_ctx(ctx: Ctx, mapping: Mapping[str, str], socket: bool) -> Dict[str, IUType]:
    merged: Dict[str, List[IUType]] = {}
    for s, t in ctx.items():
        merged.setdefault(mapping.get(s, s), []).append(t)
    combine = mk_inter if socket else mk_union
    return {s: normalize(combine(ts)) for s, ts in merged.items()}


def _common(items: Sequence[Tuple[Derivation, Tuple[str, ...], Tuple[str, ...]]],
            system: System) -> Tuple[Dict[str, IUType], Dict[str, IUType]]:
    gamma: Dict[str, IUType] = {}
    delta: Dict[str, IUType] = {}
    for d, own_sockets, own_plugs in items:
        for s, t in without(d.gamma, *own_sockets).items():
            if s in gamma:
                if system is System.SIMPLE and not equiv(gamma[s], t):
                    raise ShapeError(f"incompatible types for {s}")
                gamma[s] = normalize(mk_inter([gamma[s], t]))
            else:
                gamma[s] = t
        for a, t in without(d.delta, *own_plugs).items():
            if a in delta:
                if system is System.SIMPLE and not equiv(delta[a], t):
                    raise ShapeError(f"incompatible types for {a}")
                delta[a] = normalize(mk_union([delta[a], t]))
            else:
                delta[a] = t
    return gamma, delta


def _pick_cut_type(rule: str, n: Cut, hint: Optional[IUType], low: IUType, high: IUType) -> IUType:
    for candidate in (hint, low, high):
        if candidate is None or not (leq(low, candidate) and leq(candidate, high)):
            continue
        if rule == CUT_L and is_intersection(candidate):
            continue
        if rule == CUT_R and is_union(candidate):
            continue
        return normalize(candidate)
    raise ShapeError(f"no cut type between {show_type(low)} and {show_type(high)}")


def rename_derivation(d: Derivation, sockets: Mapping[str, str], plugs: Mapping[str, str]) -> Derivation:
    """
    Rename free connectors throughout a derivation, merging statements that
    collide (sockets by intersection, plugs by union) and recomputing every
    conclusion bottom-up.

    Raises:
        ShapeError: If a recomputed node no longer fits its rule.
    """
    system = d.system
    n = substitute(d.net, sockets, plugs)
    gamma = _rename_ctx(d.gamma, sockets, True)
    delta = _rename_ctx(d.delta, plugs, False)

    if d.rule == AX:
        return build_ax(system, n, gamma, delta)
    if d.rule in (INTER_E, UNION_E, WEAK):
        premise = rename_derivation(d.premises[0], sockets, plugs)
        return lift(premise, gamma, delta)
    if d.rule in (INTER_R, UNION_L):
        renamed = plugs if d.rule == INTER_R else sockets
        subject = renamed.get(d.subject, d.subject)
        if not d.premises:
            if d.rule == INTER_R and system is System.CBV and not introduces_plug(n, subject):
                raise ShapeError(f"interR on {subject} needs it introduced")
            if d.rule == UNION_L and system is System.CBN and not introduces_socket(n, subject):
                raise ShapeError(f"unionL on {subject} needs it introduced")
            return node(system, d.rule, n, gamma, delta, (), subject=subject)
        premises = [rename_derivation(p, sockets, plugs) for p in d.premises]
        own = ((), (subject,)) if d.rule == INTER_R else ((subject,), ())
        common_gamma, common_delta = _common([(p, own[0], own[1]) for p in premises], system)
        branches = []
        for p in premises:
            if d.rule == INTER_R:
                branches.append(lift(p, common_gamma, extend(common_delta, subject, p.delta[subject])))
            else:
                branches.append(lift(p, extend(common_gamma, subject, p.gamma[subject]), common_delta))
        return build_split(system, d.rule, n, subject, gamma, delta, branches)
    if d.rule == IMP_R:
        body = rename_derivation(d.premises[0], sockets, plugs)
        body_gamma = without(body.gamma, n.bind_socket)
        body_delta = without(body.delta, n.bind_plug)
        arrow = Arrow(body.gamma[n.bind_socket], body.delta[n.bind_plug])
        out_type = normalize(mk_union([body_delta[n.out], arrow])) if n.out in body_delta else arrow
        result = node(system, IMP_R, n, body_gamma, extend(body_delta, n.out, out_type), (body,))
        return lift(result, gamma, delta)
    if d.rule == IMP_L:
        left = rename_derivation(d.premises[0], sockets, plugs)
        right = rename_derivation(d.premises[1], sockets, plugs)
        common_gamma, common_delta = _common([(left, (), (n.bind_plug,)),
                                              (right, (n.bind_socket,), ())], system)
        c, d_type = left.delta[n.bind_plug], right.gamma[n.bind_socket]
        left = lift(left, common_gamma, extend(common_delta, n.bind_plug, c))
        right = lift(right, extend(common_gamma, n.bind_socket, d_type), common_delta)
        arrow = Arrow(c, d_type)
        y = n.mid
        mid_type = normalize(mk_inter([common_gamma[y], arrow])) if y in common_gamma else arrow
        result = node(system, IMP_L, n, extend(common_gamma, y, mid_type), common_delta, (left, right))
        return lift(result, gamma, delta)
    if d.rule in CUT_RULES:
        left = rename_derivation(d.premises[0], sockets, plugs)
        right = rename_derivation(d.premises[1], sockets, plugs)
        common_gamma, common_delta = _common([(left, (), (n.bind_plug,)),
                                              (right, (n.bind_socket,), ())], system)
        rule = allowed_cut_rule(system, n.activation)
        cut_type = _pick_cut_type(rule, n, d.cut_type, left.delta[n.bind_plug], right.gamma[n.bind_socket])
        check_cut_side_conditions(rule, n, cut_type)
        left = lift(left, common_gamma, extend(common_delta, n.bind_plug, cut_type))
        right = lift(right, extend(common_gamma, n.bind_socket, cut_type), common_delta)
        result = node(system, rule, n, common_gamma, common_delta, (left, right), cut_type=cut_type)
        return lift(result, gamma, delta)
    raise ShapeError(f"unknown rule {d.rule}")


def map_cores(d: Derivation, transform: Callable[[Derivation], Derivation], new_net: Net) -> Derivation:
    """
    Apply ``transform`` to every non-structural node reached from the root
    through structural rules, and re-wrap the results for ``new_net``.
    """
    if d.rule in STRUCTURAL_RULES:
        premises = tuple(map_cores(p, transform, new_net) for p in d.premises)
        if d.rule == INTER_R and d.system is System.CBV and not introduces_plug(new_net, d.subject):
            raise ShapeError(f"interR on {d.subject} does not survive the step")
        if d.rule == UNION_L and d.system is System.CBN and not introduces_socket(new_net, d.subject):
            raise ShapeError(f"unionL on {d.subject} does not survive the step")
        return replace(d, conclusion=Judgement(new_net, dict(d.gamma), dict(d.delta)), premises=premises)
    return transform(d)


def rename_cut_derivation(d: Derivation) -> Derivation:
    """
    Derivation of the renamed net for a renaming cut.

    ``P a^ + x^ <x.b>`` yields ``P[b/a]`` and ``<y.a> a^ + x^ Q`` yields
    ``Q[y/x]``, both under the contexts of ``d``.

    Raises:
        ShapeError: If the net is not a renaming cut.
    """
    n = d.net
    if not isinstance(n, Cut):
        raise ShapeError(f"{show_net(n)} is not a cut")
    if isinstance(n.right, Capsule) and n.right.socket == n.bind_socket:
        target = substitute(n.left, {}, {n.bind_plug: n.right.plug})

        def right_version(core: Derivation) -> Derivation:
            left = core.premises[0]
            b = n.right.plug
            if b not in free_plugs(n.left) and b in left.delta:
                left = thin(left, [b])
            return fit(rename_derivation(left, {}, {n.bind_plug: b}), core.gamma, core.delta)

        return map_cores(d, right_version, target)
    if isinstance(n.left, Capsule) and n.left.plug == n.bind_plug:
        target = substitute(n.right, {n.bind_socket: n.left.socket}, {})

        def left_version(core: Derivation) -> Derivation:
            right = core.premises[1]
            y = n.left.socket
            if y not in free_sockets(n.right) and y in right.gamma:
                right = thin(right, [y])
            return fit(rename_derivation(right, {n.bind_socket: y}, {}), core.gamma, core.delta)

        return map_cores(d, left_version, target)
    raise ShapeError(f"{show_net(n)} is not a renaming cut")


########################
# Eliminations         #
########################

def elim_inter(d: Derivation, subject: str) -> Tuple[Derivation, ...]:
    """
    One interE projection per component of the intersection at a plug.

    Raises:
        ShapeError: If the plug's type is not an intersection.
    """
    if subject not in d.delta:
        raise ShapeError(f"{subject} is not typed")
    parts = meetands(normalize(d.delta[subject]))
    if len(parts) < 2:
        raise ShapeError(f"{subject}:{show_type(d.delta[subject])} is not an intersection")
    return tuple(node(d.system, INTER_E, d.net, d.gamma, extend(d.delta, subject, part), (d,),
                      subject=subject, index=i)
                 for i, part in enumerate(parts))


def elim_union(d: Derivation, subject: str) -> Tuple[Derivation, ...]:
    """
    One unionE projection per component of the union at a socket.

    Raises:
        ShapeError: If the socket's type is not a union.
    """
    if subject not in d.gamma:
        raise ShapeError(f"{subject} is not typed")
    parts = joinands(normalize(d.gamma[subject]))
    if len(parts) < 2:
        raise ShapeError(f"{subject}:{show_type(d.gamma[subject])} is not a union")
    return tuple(node(d.system, UNION_E, d.net, extend(d.gamma, subject, part), d.delta, (d,),
                      subject=subject, index=i)
                 for i, part in enumerate(parts))


########################
# Generation facts     #
########################

@dataclass
class GenerationFacts:
    """
    What a proper derivation reveals about its net.

    ``details`` holds the witnesses: for a capsule the socket and plug types
    and whether the first is below the second; for an export and an import
    the arrow; for a cut the cut type and its shape.
    """
    shape: str
    rule: str
    core: Derivation
    premises: Tuple[Derivation, ...] = ()
    details: Dict[str, Any] = field(default_factory=dict)


def cut_shape(cut_type: IUType) -> str:
    t = normalize(cut_type)
    if is_intersection(t):
        return "intersection"
    if is_union(t):
        return "union"
    return "proper"


def invert(d: Derivation) -> GenerationFacts:
    """
    Generation analysis of a proper derivation.

    W, interE and unionE nodes are looked through; the facts are stated
    relative to the root's contexts.

    Raises:
        ShapeError: If the root, or the first node below the look-through
            chain, is an interR or unionL.
    """
    if d.rule in (INTER_R, UNION_L):
        raise ShapeError(f"derivation ends with {d.rule}; not proper")
    core = d
    while core.rule in (WEAK, INTER_E, UNION_E):
        core = core.premises[0]
    if core.rule in (INTER_R, UNION_L):
        raise ShapeError(f"{core.rule} below the root; not proper")
    n = d.net
    if isinstance(n, Capsule):
        a_type, b_type = d.gamma[n.socket], d.delta[n.plug]
        return GenerationFacts("capsule", core.rule, core, (),
                               {'socket_type': a_type, 'plug_type': b_type, 'below': leq(a_type, b_type)})
    if isinstance(n, Export):
        body = core.premises[0]
        arrow = Arrow(body.gamma[n.bind_socket], body.delta[n.bind_plug])
        return GenerationFacts("export", core.rule, core, core.premises,
                               {'arrow': arrow, 'plug_type': d.delta[n.out],
                                'below': leq(arrow, d.delta[n.out])})
    if isinstance(n, Import):
        left, right = core.premises
        arrow = Arrow(left.delta[n.bind_plug], right.gamma[n.bind_socket])
        return GenerationFacts("import", core.rule, core, core.premises,
                               {'arrow': arrow, 'socket_type': d.gamma[n.mid],
                                'below': leq(d.gamma[n.mid], arrow)})
    cut_type = core.cut_type
    return GenerationFacts("cut", core.rule, core, core.premises,
                           {'cut_type': cut_type, 'cut_shape': cut_shape(cut_type)})


########################
# Pure views           #
########################

class SplitFound(Exception):
    """An interR/unionL that no single branch can replace."""

    def __init__(self, split: Derivation, internal: bool):
        self.split = split
        self.internal = internal
        super().__init__(f"{split.rule} on {split.subject}")


def _fits_outside(c: Derivation, top: Derivation, skip: Sequence[str]) -> bool:
    gamma = {s: t for s, t in top.gamma.items() if s not in skip}
    delta = {a: t for a, t in top.delta.items() if a not in skip}
    own_gamma = {s: t for s, t in c.gamma.items() if s not in skip}
    own_delta = {a: t for a, t in c.delta.items() if a not in skip}
    narrowed = replace(c, conclusion=Judgement(c.net, own_gamma, own_delta))
    return liftable(narrowed, gamma, delta)


def pure(d: Derivation, internal: Sequence[str] = ()) -> Derivation:
    """
    The logical or cut node a derivation rests on.

    W and elimination nodes are looked through; at an interR/unionL a
    branch is followed when it alone justifies the root's conclusion. Zero
    rules are returned as they are.

    Raises:
        SplitFound: At a split no single branch can stand in for.
    """
    current = d
    while current.rule in STRUCTURAL_RULES:
        if current.rule in (WEAK, INTER_E, UNION_E):
            current = current.premises[0]
            continue
        if not current.premises:
            return current
        for branch in current.premises:
            if liftable(branch, d.gamma, d.delta):
                current = branch
                break
        else:
            raise SplitFound(current, current.subject in internal)
    return current


def leaves(d: Derivation, subject: str) -> List[Derivation]:
    """
    Logical nodes under the splits on ``subject``; other splits are
    resolved as in ``pure``.

    Raises:
        SplitFound: At a split on another subject with no single stand-in.
    """
    found: List[Derivation] = []
    stack = [d]
    while stack:
        current = stack.pop()
        if current.rule in (WEAK, INTER_E, UNION_E):
            stack.append(current.premises[0])
        elif current.rule in (INTER_R, UNION_L):
            if current.subject == subject:
                stack.extend(reversed(current.premises))
                continue
            for branch in current.premises:
                if _fits_outside(branch, d, (subject,)):
                    stack.append(branch)
                    break
            else:
                raise SplitFound(current, False)
        else:
            found.append(current)
    return found


def narrow(d: Derivation, subject: str, bound: IUType, socket: bool) -> Derivation:
    """
    Follow splits on ``subject`` into a branch whose type still respects
    ``bound`` (above it for a socket, below it for a plug).
    """
    current = d
    while True:
        if current.rule in (WEAK, INTER_E, UNION_E):
            current = current.premises[0]
            continue
        expected = UNION_L if socket else INTER_R
        if current.rule != expected or current.subject != subject:
            return current
        for branch in current.premises:
            t = branch.gamma[subject] if socket else branch.delta[subject]
            ok = leq(bound, t) if socket else leq(t, bound)
            if ok and _fits_outside(branch, d, (subject,)):
                current = branch
                break
        else:
            return current
