########################
# Property Runs         #
########################

"""
Seeded random property runs over the calculus and its type systems.

Each run feeds up to ``cases`` examples drawn from the strategies in
``app.arbitrary`` to one property check and reports the number of checks,
failures and skipped instances. Runs are deterministic for a fixed seed.
"""

from dataclasses import dataclass, field
import logging
import random
from typing import Any, Callable, Dict, List, Tuple

import hypothesis
from hypothesis.errors import Unsatisfiable
import hypothesis.strategies as s

from app.arbitrary import derivations, lambda_terms, nets, s_randoms, types
from app.derivation import INTER_R, UNION_L, Derivation, System
from app.exceptions import PreservationError, StaleRedexError, WorkbenchError
from app.expansion import CASES as EXPANSION_CASES
from app.expansion import expand
from app.generators import add_wrappers
from app.iu_types import BOT, TOP, IUType, Var, ctx_equiv, equiv, normalize, show_type
from app.lambda_bridge import check_simulation, curry_infer
from app.lambda_terms import LambdaTerm, show_lambda
from app.preservation import SYSTEM_REGIMES, preserve
from app.reduction import reduction_graph
from app.rewrite import Regime, find_redexes, is_logical_cut, step
from app.simple_inference import derive_simple
from app.syntax import (
    Activation, Cut, NameSupply, Net, Path, free_plugs, free_sockets, positions, show_net, subnet_at,
)
from app.transformers import lift
from app.type_oracle import ClosureOracle


@dataclass
class PropertyRun:
    """Outcome of one property run."""
    name: str
    seed: int
    cases: int
    checked: int = 0
    skipped: int = 0
    truncated: int = 0
    with_splits: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)
        logging.warning(f"Property {self.name} failed: {message}")

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        text = (f"{self.name}: {verdict} ({self.checked} checks, {len(self.failures)} failures, "
                f"{self.skipped} skipped")
        if self.truncated:
            text += f", {self.truncated} truncated"
        if self.with_splits:
            text += f", {self.with_splits} with interR/unionL"
        return text + ")"

    def to_row(self) -> Dict[str, Any]:
        return {
            'property': self.name,
            'seed': self.seed,
            'cases': self.cases,
            'checked': self.checked,
            'failures': len(self.failures),
            'skipped': self.skipped,
            'truncated': self.truncated,
            'with_splits': self.with_splits,
            'verdict': "PASS" if self.passed else "FAIL",
        }


def drive(run: PropertyRun, strategy: s.SearchStrategy, check: Callable[[Any], None]) -> PropertyRun:
    """
    Feed up to ``run.cases`` examples of ``strategy`` to ``check``.

    The draws replay from ``run.seed``. Only the generate phase runs: a
    failing example is recorded by ``check`` on the run, not shrunk.
    """
    if run.cases <= 0:
        return run

    @hypothesis.seed(run.seed)
    @hypothesis.settings(max_examples=run.cases, database=None, deadline=None,
                         phases=[hypothesis.Phase.generate],
                         suppress_health_check=list(hypothesis.HealthCheck))
    @hypothesis.given(strategy)
    def each(example):
        check(example)

    try:
        each()
    except Unsatisfiable:
        logging.warning(f"Property {run.name} drew no usable example")
    return run


def _has_split(d: Derivation) -> bool:
    return any(sub.rule in (INTER_R, UNION_L) and sub.premises for _, sub in d.nodes())


########################
# Witness reduction     #
########################

def _preservation(name: str, system: System, seed: int, cases: int, depth: int = 5,
                  wrappers: bool = False) -> PropertyRun:
    run = PropertyRun(name, seed, cases)
    regime = SYSTEM_REGIMES[system]

    def check(d: Derivation) -> None:
        supply = NameSupply()
        redexes = find_redexes(d.net, regime)
        if not redexes:
            run.skipped += 1
            return
        if _has_split(d):
            run.with_splits += 1
        for redex in redexes:
            run.checked += 1
            try:
                _, result = preserve(d, redex, supply, regime)
            except (PreservationError, StaleRedexError) as e:
                run.fail(f"{show_net(d.net)} {redex.rule.name} @ {redex.path_text()}: {e}")
                continue
            if not (ctx_equiv(result.gamma, d.gamma) and ctx_equiv(result.delta, d.delta)):
                run.fail(f"{show_net(d.net)} {redex.rule.name} @ {redex.path_text()}: contexts changed")

    return drive(run, derivations(system, depth, wrappers), check)


def run_simple_preservation(seed: int = 0, cases: int = 500) -> PropertyRun:
    """Every Full step of a Simple-typed net keeps a derivation at the same contexts."""
    return _preservation("simple-preservation", System.SIMPLE, seed, cases)


def run_cbn_preservation(seed: int = 0, cases: int = 300) -> PropertyRun:
    return _preservation("cbn-preservation", System.CBN, seed, cases, wrappers=True)


def run_cbv_preservation(seed: int = 0, cases: int = 300) -> PropertyRun:
    return _preservation("cbv-preservation", System.CBV, seed, cases, wrappers=True)


########################
# Witness expansion     #
########################

def run_expansion(seed: int = 0, cases: int = 500) -> PropertyRun:
    """
    For a typable net P and a core step P -> Q, ``expand`` derives P at the
    contexts of an intersection/union derivation of Q.

    P is drawn with a Simple derivation, so Q has one too. That derivation
    is wrapped in interR/unionL absorption splits before expanding.
    Connectors that only P mentions are added to the contexts of Q with a
    fresh type variable first.
    """
    run = PropertyRun("expansion", seed, cases)
    filler = Var("Z")

    def check(drawn: Tuple[Derivation, random.Random]) -> None:
        typed, rng = drawn
        n = typed.net
        redexes = [r for r in find_redexes(n, Regime.FULL) if r.rule in EXPANSION_CASES]
        if not redexes:
            run.skipped += 1
            return
        redex = rng.choice(redexes)
        supply = NameSupply()
        reduct = step(n, redex, supply)
        d = derive_simple(reduct)
        if d is None:
            run.skipped += 1
            return
        d = add_wrappers(d.with_system(System.IU), rng, rate=0.5)
        if _has_split(d):
            run.with_splits += 1
        gamma = {**{x: filler for x in free_sockets(n)}, **d.gamma}
        delta = {**{a: filler for a in free_plugs(n)}, **d.delta}
        run.checked += 1
        try:
            result = expand(lift(d, gamma, delta), n, redex, supply)
        except WorkbenchError as e:
            run.fail(f"{show_net(n)} {redex.rule.name} @ {redex.path_text()}: {e}")
            return
        if not (ctx_equiv(result.gamma, gamma) and ctx_equiv(result.delta, delta)):
            run.fail(f"{show_net(n)} {redex.rule.name} @ {redex.path_text()}: contexts changed")

    return drive(run, s.tuples(derivations(System.SIMPLE, depth=4), s_randoms), check)


########################
# Types                 #
########################

def run_leq_oracle(seed: int = 0, cases: int = 200) -> PropertyRun:
    """``leq`` agrees with the closure oracle on random types and their subformulas."""
    run = PropertyRun("leq-oracle", seed, cases)
    drawn: List[IUType] = []
    drive(run, types(("A", "B"), max_leaves=6), drawn.append)
    oracle = ClosureOracle(drawn)
    run.checked = len(oracle.universe) ** 2
    for a, b, expected in oracle.disagreements():
        run.fail(f"leq({show_type(a)}, {show_type(b)}) should be {expected}")
    return run


def run_normalize(seed: int = 0, cases: int = 5_000) -> PropertyRun:
    """``normalize`` is idempotent and stays in the equivalence class."""
    run = PropertyRun("normalize", seed, cases)

    def check(t: IUType) -> None:
        canonical = normalize(t)
        run.checked += 1
        if normalize(canonical) != canonical:
            run.fail(f"normalize not idempotent on {show_type(t)}")
        elif not equiv(t, canonical):
            run.fail(f"normalize({show_type(t)}) = {show_type(canonical)} is not equivalent")

    drive(run, types(max_leaves=10), check)
    for unit in (TOP, BOT):
        run.checked += 1
        if normalize(unit) != unit:
            run.fail(f"normalize moved {show_type(unit)}")
    return run


########################
# Lambda simulation     #
########################

def run_simulation(seed: int = 0, cases: int = 100, node_budget: int = 20_000,
                   size: int = 12) -> PropertyRun:
    """Beta steps of random Curry-typable terms are matched by net reduction in every regime."""
    run = PropertyRun("simulation", seed, cases)

    def check(m: LambdaTerm) -> None:
        if curry_infer(m) is None:
            run.skipped += 1
            return
        for regime in Regime:
            report = check_simulation(m, regime, node_budget)
            run.checked += report.checked
            if report.failures:
                run.fail(f"{show_lambda(m)} under {regime.value}: "
                         f"{', '.join(show_lambda(f) for f in report.failures)}")
            elif report.truncated:
                run.truncated += 1

    return drive(run, lambda_terms(size), check)


########################
# Admissible rules      #
########################

def settled(n: Net) -> bool:
    """Every cut in ``n`` is inactive and not yet a logical redex."""
    return all(sub.activation is Activation.INACTIVE and not is_logical_cut(sub)
               for _, sub in positions(n) if isinstance(sub, Cut))


def run_admissible(seed: int = 0, cases: int = 500, node_budget: int = 2_000) -> PropertyRun:
    """
    The result of a garbage-collection or renaming shortcut is reachable by
    core rules.

    A shortcut is only checked when every cut in both operands of its cut
    is settled.
    """
    run = PropertyRun("admissible", seed, cases)

    def check(drawn: Tuple[Net, random.Random]) -> None:
        n, rng = drawn
        shortcuts = [r for r in find_redexes(n, Regime.FULL, include_admissible=True)
                     if r.rule.admissible and _operands_settled(n, r.position)]
        if not shortcuts:
            run.skipped += 1
            return
        redex = rng.choice(shortcuts)
        target = step(n, redex)
        graph = reduction_graph(n, Regime.FULL, node_budget)
        run.checked += 1
        if graph.contains(target):
            return
        if graph.truncated:
            run.truncated += 1
        else:
            run.fail(f"{show_net(n)} {redex.rule.name} @ {redex.path_text()} gives {show_net(target)}")

    return drive(run, s.tuples(nets(depth=3), s_randoms), check)


def _operands_settled(n: Net, position: Path) -> bool:
    sub = subnet_at(n, position)
    return settled(sub.left) and settled(sub.right)


PROPERTIES: Dict[str, Callable[..., PropertyRun]] = {
    'simple-preservation': run_simple_preservation,
    'cbn-preservation': run_cbn_preservation,
    'cbv-preservation': run_cbv_preservation,
    'expansion': run_expansion,
    'leq-oracle': run_leq_oracle,
    'normalize': run_normalize,
    'simulation': run_simulation,
    'admissible': run_admissible,
}


def run_property(name: str, seed: int = 0, cases: int = 500, **options: Any) -> PropertyRun:
    """
    Run a property by name.

    Raises:
        KeyError: If the property is unknown.
    """
    run = PROPERTIES[name](seed=seed, cases=cases, **options)
    logging.info(run.summary())
    return run
