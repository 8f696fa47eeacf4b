########################
# Lambda Bridge         #
########################

"""
Curry and intersection typing for lambda terms, their interpretation as
nets, and the checks relating the two calculi.

A lambda variable becomes a socket of the same name; every subterm is
interpreted through exactly one free plug, its continuation.
"""

from dataclasses import dataclass, field
import logging
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from app.checker import check_derivation
from app.derivation import AX, INTER_E, INTER_R, Derivation, System, node
from app.exceptions import RuleError, ShapeError, UnificationError
from app.iu_types import (
    TOP, Arrow, IUType, equiv, is_simple, leq, meetands, mk_inter, normalize, show_type,
)
from app.lambda_terms import (
    Abs, App, LambdaTerm, LVar, all_vars, beta_step, free_vars, is_barendregt_term,
    rename_bound, show_lambda,
)
from app.reduction import ReductionGraph, reduction_graph
from app.rewrite import Regime
from app.simple_inference import Unifier, prettify, rename_vars
from app.syntax import Activation, Capsule, Cut, Export, Import, NameSupply, Net
from app.transformers import build_cut, build_export, build_import, build_split, extend, lift

LC_AX = "Ax"
LC_ABS = "impI"
LC_APP = "impE"
LC_INTER_I = "interI"
LC_INTER_E = "interE"


########################
# Translation          #
########################

def translate(m: LambdaTerm, plug: str = "a", supply: Optional[NameSupply] = None,
              explicit_substitution: bool = False) -> Net:
    """
    Interpret a lambda term as a net through ``plug``.

    Variables become capsules, abstractions exports and applications a cut
    against an import that feeds the result into ``plug``. Bound variables
    keep their names unless they clash, so the result is in Barendregt form.

    Args:
        m (LambdaTerm): The term.
        plug (str): The continuation plug.
        supply (Optional[NameSupply]): Source of fresh connector names.
        explicit_substitution (bool): Accept ``M<x:=N>`` and interpret it
            as a right-activated cut.

    Raises:
        ShapeError: If ``plug`` is also a variable, or an explicit
            substitution occurs while the flag is off.
    """
    if plug in all_vars(m):
        raise ShapeError(f"plug {plug} is also a variable of {show_lambda(m)}")
    supply = supply or NameSupply()
    m = rename_bound(m, taken={plug})
    supply.reserve(all_vars(m) | {plug})
    return _translate(m, plug, supply, explicit_substitution)


def _translate(m: LambdaTerm, plug: str, supply: NameSupply, explicit: bool) -> Net:
    if isinstance(m, LVar):
        return Capsule(m.name, plug)
    if isinstance(m, Abs):
        body_plug = supply.fresh_plug()
        return Export(m.var, _translate(m.body, body_plug, supply, explicit), body_plug, plug)
    if isinstance(m, App):
        fun_plug, mid = supply.fresh_plug(), supply.fresh_socket()
        fun = _translate(m.fun, fun_plug, supply, explicit)
        arg_plug, result = supply.fresh_plug(), supply.fresh_socket()
        arg = _translate(m.arg, arg_plug, supply, explicit)
        return Cut(fun, fun_plug, Activation.INACTIVE, mid,
                   Import(arg, arg_plug, mid, result, Capsule(result, plug)))
    if not explicit:
        raise ShapeError("explicit substitution needs explicit_substitution=True")
    arg_plug = supply.fresh_plug()
    arg = _translate(m.arg, arg_plug, supply, explicit)
    return Cut(arg, arg_plug, Activation.RIGHT, m.var, _translate(m.body, plug, supply, explicit))


########################
# Simulation           #
########################

@dataclass
class SimulationReport:
    """Outcome of checking that every beta step is matched by net reduction."""
    term: LambdaTerm
    regime: Regime
    checked: int = 0
    failures: List[LambdaTerm] = field(default_factory=list)
    truncated: bool = False

    @property
    def verified(self) -> bool:
        return not self.failures and not self.truncated

    def verdict(self) -> str:
        if self.failures:
            return "failed"
        return "truncated" if self.truncated else "verified"


def check_simulation(m: LambdaTerm, regime: Regime = Regime.FULL, node_budget: int = 5_000,
                     plug: str = "a") -> SimulationReport:
    """
    Confirm that the net of every one-step reduct is reachable from the net
    of ``m``.

    Call-by-value only simulates steps whose argument is a value; the other
    regimes simulate every beta step.

    Returns:
        SimulationReport: ``truncated`` is set when the reduction graph hit
        ``node_budget`` before a reduct was found.
    """
    report = SimulationReport(m, regime)
    reducts = beta_step(m, values_only=regime is Regime.CBV)
    if not reducts:
        return report
    graph: ReductionGraph = reduction_graph(translate(m, plug), regime, node_budget)
    for reduct in reducts:
        report.checked += 1
        if graph.contains(translate(reduct, plug)):
            continue
        if graph.truncated:
            report.truncated = True
        else:
            report.failures.append(reduct)
    logging.info(f"Simulation of {show_lambda(m)} under {regime.value}: {report.verdict()} "
                 f"({report.checked} steps, {len(graph.nodes)} nets)")
    return report


########################
# Lambda derivations   #
########################

@dataclass
class LCDerivation:
    """A derivation of Γ ⊢ M : A in the Curry or intersection system."""
    rule: str
    gamma: Dict[str, IUType]
    term: LambdaTerm
    type: IUType
    premises: Tuple["LCDerivation", ...] = ()
    index: Optional[int] = None

    def pretty(self, indent: int = 0) -> str:
        context = ", ".join(f"{x}:{show_type(t)}" for x, t in sorted(self.gamma.items()))
        line = " " * indent + f"({self.rule}) {context} |- {show_lambda(self.term)} : {show_type(self.type)}"
        return "\n".join([line] + [p.pretty(indent + 2) for p in self.premises])


def _same(first: Mapping[str, IUType], second: Mapping[str, IUType]) -> bool:
    return set(first) == set(second) and all(equiv(first[x], second[x]) for x in first)


class _LCChecker:
    def __init__(self, intersections: bool):
        self.intersections = intersections

    def require(self, condition: bool, path: Tuple[int, ...], reason: str) -> None:
        if not condition:
            raise RuleError(path, reason)

    def check(self, d: LCDerivation, path: Tuple[int, ...]) -> None:
        if not self.intersections:
            self.require(d.rule in (LC_AX, LC_ABS, LC_APP), path, f"{d.rule} is not a Curry rule")
            self.require(is_simple(d.type), path, f"{show_type(d.type)} is not a Curry type")
        handler = {
            LC_AX: self.check_ax,
            LC_ABS: self.check_abs,
            LC_APP: self.check_app,
            LC_INTER_I: self.check_inter_i,
            LC_INTER_E: self.check_inter_e,
        }.get(d.rule)
        self.require(handler is not None, path, f"unknown rule {d.rule}")
        handler(d, path)
        for index, premise in enumerate(d.premises):
            self.check(premise, path + (index,))

    def check_ax(self, d: LCDerivation, path: Tuple[int, ...]) -> None:
        self.require(isinstance(d.term, LVar) and not d.premises, path, "Ax types a variable")
        x = d.term.name
        self.require(x in d.gamma, path, f"{x} is not in the context")
        self.require(equiv(d.gamma[x], d.type), path, f"{x} has type {show_type(d.gamma[x])}")

    def check_abs(self, d: LCDerivation, path: Tuple[int, ...]) -> None:
        self.require(isinstance(d.term, Abs) and len(d.premises) == 1, path, "impI types an abstraction")
        p = d.premises[0]
        x = d.term.var
        self.require(p.term == d.term.body, path, "premise is not the abstraction body")
        self.require(x in p.gamma, path, f"premise lacks {x}")
        self.require(_same({y: t for y, t in p.gamma.items() if y != x},
                           {y: t for y, t in d.gamma.items() if y != x}), path, "contexts disagree")
        self.require(equiv(d.type, Arrow(p.gamma[x], p.type)), path,
                     f"type should be {show_type(Arrow(p.gamma[x], p.type))}")

    def check_app(self, d: LCDerivation, path: Tuple[int, ...]) -> None:
        self.require(isinstance(d.term, App) and len(d.premises) == 2, path, "impE types an application")
        fun, arg = d.premises
        self.require(fun.term == d.term.fun and arg.term == d.term.arg, path, "premise terms do not match")
        self.require(_same(fun.gamma, d.gamma) and _same(arg.gamma, d.gamma), path, "contexts disagree")
        self.require(isinstance(fun.type, Arrow), path, f"{show_type(fun.type)} is not an arrow")
        self.require(equiv(fun.type.left, arg.type), path, "argument type does not match")
        self.require(equiv(fun.type.right, d.type), path, "result type does not match")

    def check_inter_i(self, d: LCDerivation, path: Tuple[int, ...]) -> None:
        for p in d.premises:
            self.require(p.term == d.term, path, "interI premises type the same term")
            self.require(_same(p.gamma, d.gamma), path, "contexts disagree")
        self.require(equiv(d.type, mk_inter(p.type for p in d.premises)), path,
                     "type should be the meet of the premises")

    def check_inter_e(self, d: LCDerivation, path: Tuple[int, ...]) -> None:
        self.require(len(d.premises) == 1, path, "interE has one premise")
        p = d.premises[0]
        self.require(p.term == d.term and _same(p.gamma, d.gamma), path, "premise does not match")
        parts = meetands(p.type)
        self.require(d.index is not None and 0 <= d.index < len(parts), path,
                     f"no component {d.index} in {show_type(p.type)}")
        self.require(equiv(parts[d.index], d.type), path, f"type should be {show_type(parts[d.index])}")


def check_lc_inter(d: LCDerivation) -> bool:
    """
    Validate an intersection derivation for lambda terms; TOP is the empty
    intersection.

    Raises:
        RuleError: Naming the path of the first failing node.
    """
    _LCChecker(intersections=True).check(d, ())
    return True


def check_curry(d: LCDerivation) -> bool:
    """Validate a derivation that uses the Curry rules only."""
    _LCChecker(intersections=False).check(d, ())
    return True


########################
# Curry inference      #
########################

class _CurrySolver:
    def __init__(self):
        self.unifier = Unifier()
        self.vars: Dict[str, IUType] = {}
        self.results: List[IUType] = []

    def var(self, name: str) -> IUType:
        if name not in self.vars:
            self.vars[name] = self.unifier.fresh()
        return self.vars[name]

    def walk(self, m: LambdaTerm) -> IUType:
        if isinstance(m, LVar):
            return self.var(m.name)
        if isinstance(m, Abs):
            return Arrow(self.var(m.var), self.walk(m.body))
        if isinstance(m, App):
            fun, arg = self.walk(m.fun), self.walk(m.arg)
            result = self.unifier.fresh()
            self.results.append(result)
            self.unifier.unify(fun, Arrow(arg, result))
            return result
        body = self.walk(m.body)
        self.unifier.unify(self.var(m.var), self.walk(m.arg))
        return body


def _solve_curry(m: LambdaTerm):
    m = rename_bound(m)
    solver = _CurrySolver()
    try:
        main = solver.walk(m)
    except UnificationError:
        return None
    apply = solver.unifier.apply
    free = sorted(free_vars(m))
    ordered = [apply(main)] + [apply(solver.vars[x]) for x in free]
    ordered += [apply(t) for t in solver.vars.values()] + [apply(t) for t in solver.results]
    names = prettify(ordered)
    return m, solver, names


def curry_infer(m: LambdaTerm) -> Optional[Tuple[Dict[str, IUType], IUType]]:
    """
    Principal Curry typing by first-order unification.

    Returns:
        The context over the free variables and the type, with type
        variables named A, B, ... in order of appearance, or None when the
        term is untypable.
    """
    solved = _solve_curry(m)
    if solved is None:
        return None
    m, solver, names = solved
    final = lambda t: rename_vars(solver.unifier.apply(t), names)
    gamma = {x: final(solver.vars[x]) for x in sorted(free_vars(m))}
    return gamma, final(_main_type(m, solver))


def _main_type(m: LambdaTerm, solver: _CurrySolver) -> IUType:
    results = iter(solver.results)

    def walk(t: LambdaTerm) -> IUType:
        if isinstance(t, LVar):
            return solver.vars[t.name]
        if isinstance(t, Abs):
            return Arrow(solver.vars[t.var], walk(t.body))
        if isinstance(t, App):
            walk(t.fun)
            walk(t.arg)
            return next(results)
        body = walk(t.body)
        walk(t.arg)
        return body

    return walk(m)


def derive_curry(m: LambdaTerm) -> Optional[LCDerivation]:
    """
    The Curry derivation of the principal typing, or None when untypable.

    Raises:
        ShapeError: If the term contains an explicit substitution.
    """
    solved = _solve_curry(m)
    if solved is None:
        return None
    m, solver, names = solved
    final = lambda t: rename_vars(solver.unifier.apply(t), names)
    results: Iterator[IUType] = iter(solver.results)

    def build(t: LambdaTerm, gamma: Dict[str, IUType]) -> LCDerivation:
        if isinstance(t, LVar):
            return LCDerivation(LC_AX, gamma, t, gamma[t.name])
        if isinstance(t, Abs):
            bound = final(solver.vars[t.var])
            body = build(t.body, {**gamma, t.var: bound})
            return LCDerivation(LC_ABS, gamma, t, Arrow(bound, body.type), (body,))
        if isinstance(t, App):
            fun, arg = build(t.fun, gamma), build(t.arg, gamma)
            return LCDerivation(LC_APP, gamma, t, final(next(results)), (fun, arg))
        raise ShapeError("Curry derivations do not cover explicit substitution")

    return build(m, {x: final(solver.vars[x]) for x in sorted(free_vars(m))})


########################
# Typing preservation  #
########################

def _out_plug(n: Net) -> str:
    if isinstance(n, Capsule):
        return n.plug
    if isinstance(n, Export):
        return n.out
    return n.right.right.plug


def _to_x(d: LCDerivation, n: Net, system: System) -> Derivation:
    plug = _out_plug(n)
    gamma = {x: normalize(t) for x, t in d.gamma.items()}
    target = normalize(d.type)
    if d.rule == LC_AX:
        parts = meetands(target)
        if system is System.SIMPLE or len(parts) == 1:
            return node(system, AX, n, gamma, {plug: target})
        premises = tuple(node(system, AX, n, gamma, {plug: part}) for part in parts)
        return node(system, INTER_R, n, gamma, {plug: target}, premises, subject=plug)
    if d.rule == LC_ABS:
        body = _to_x(d.premises[0], n.body, system)
        return build_export(system, n, gamma, {plug: target}, body)
    if d.rule == LC_APP:
        fun_d, arg_d = d.premises
        imp: Import = n.right
        fun = _to_x(fun_d, n.left, system)
        arg = _to_x(arg_d, imp.left, system)
        result = node(system, AX, imp.right, {imp.bind_socket: target}, {plug: target})
        arrow = normalize(fun_d.type)
        imported = build_import(system, imp, extend(gamma, imp.mid, arrow), {plug: target}, arg, result)
        return build_cut(system, n, gamma, {plug: target}, arrow, fun, imported)
    if d.rule == LC_INTER_I:
        if not d.premises:
            return node(system, INTER_R, n, gamma, {plug: TOP}, (), subject=plug)
        branches = [_to_x(p, n, system) for p in d.premises]
        return build_split(system, INTER_R, n, plug, gamma, {plug: target}, branches)
    base = _to_x(d.premises[0], n, system)
    parts = meetands(normalize(d.premises[0].type))
    for index, part in enumerate(parts):
        if len(parts) >= 2 and equiv(part, target):
            projected = node(system, INTER_E, n, gamma, {plug: part}, (base,), subject=plug, index=index)
            return lift(projected, gamma, {plug: target})
    if leq(base.delta[plug], target):
        return lift(base, gamma, {plug: target})
    raise ShapeError(f"cannot project {show_type(d.premises[0].type)} to {show_type(target)}")


def _prepare(d: LCDerivation, plug: str) -> Tuple[Net, NameSupply]:
    if not is_barendregt_term(d.term) or set(d.gamma) & (all_vars(d.term) - free_vars(d.term)):
        raise ShapeError("the typed term must have distinct binders not named in the context")
    if plug in d.gamma or plug in all_vars(d.term):
        raise ShapeError(f"plug {plug} is also a variable")
    supply = NameSupply(set(d.gamma))
    return translate(d.term, plug, supply), supply


def check_typing_preservation(d: LCDerivation, plug: str = "a") -> Derivation:
    """
    Build an IU derivation of the net of the typed term at the same context,
    with ``plug`` carrying the term's type.

    Raises:
        RuleError: If ``d`` does not check.
        ShapeError: If the term's binders clash with the context.
    """
    check_lc_inter(d)
    n, _ = _prepare(d, plug)
    result = _to_x(d, n, System.IU)
    check_derivation(result)
    logging.debug(f"Intersection typing of {show_lambda(d.term)} carried to a derivation of size {result.size()}")
    return result


def curry_to_simple(d: LCDerivation, plug: str = "a") -> Derivation:
    """The Simple derivation of the net of a Curry-typed term."""
    check_curry(d)
    n, _ = _prepare(d, plug)
    result = _to_x(d, n, System.SIMPLE)
    check_derivation(result)
    return result


def simple_typing_of(m: LambdaTerm, plug: str = "a") -> Optional[Derivation]:
    """Curry-infer ``m`` and carry the principal typing to a Simple derivation."""
    d = derive_curry(m)
    return curry_to_simple(d, plug) if d is not None else None
