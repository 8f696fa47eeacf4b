########################
# Demonstrations        #
########################

"""
Scripted reproductions of the published results on witness reduction and
witness expansion. Every demo returns a report whose verdict is PASS when
the result reproduces.
"""

from dataclasses import dataclass, field
import logging
from typing import Callable, Dict, List, Optional, Tuple

from app.checker import check_derivation
from app.derivation import INTER_R, UNION_L, Derivation, Judgement, System
from app.exceptions import RuleError
from app.iu_types import parse_contexts
from app.net_parser import parse_net
from app.proptest import PropertyRun, run_cbn_preservation, run_cbv_preservation, run_expansion
from app.reduction import reduce
from app.rewrite import Regime, find_redexes, step
from app.search import Exhausted, refuted, search
from app.syntax import Net, alpha_eq, show_net

FIRST_COUNTEREXAMPLE = "(<x.g> g^ [x] v^ <v.a>) a^ + y^ (<y.d> d^ [y] w^ <w.b>)"
FIRST_CONTEXTS = "x:A&(A->C)&(A->C->D) |- b:D"
FIRST_CBV_REDUCT = "<x.g> g^ [x] v^ (<v.d> d^ [v] w^ <w.b>)"

SECOND_COUNTEREXAMPLE = "(x^ <x.d> b^ . d) d^ + z^ (v^ <z.a> a^ . g)"
SECOND_CONTEXTS = "|- g:(C->A)|(C->A->B)"
SECOND_CBN_REDUCT = "v^ (x^ <x.a> b^ . a) a^ . g"

EXPANSION_FAILURE = "<w.a> a^ +> x^ (<u.b> b^ [x] y^ <x.e>)"
EXPANSION_FAILURE_CONTEXTS = "w:(A->B)|(C->D), u:A&C |- e:(A->B)|(C->D)"

REFUTATION_BUDGETS = ((6, 12), (8, 20))


@dataclass
class DemoReport:
    name: str
    lines: List[str] = field(default_factory=list)
    passed: bool = False

    def add(self, line: str) -> None:
        self.lines.append(line)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_text(self) -> str:
        return "\n".join(self.lines + [f"VERDICT: {self.verdict}"])


@dataclass
class DemoSettings:
    seed: int = 0
    cases: int = 500
    search_depth: int = 6
    universe_size: int = 48
    fuel: int = 50


def _judgement(net_text: str, contexts: str, n: Optional[Net] = None) -> Judgement:
    gamma, delta = parse_contexts(contexts)
    return Judgement(n if n is not None else parse_net(net_text), gamma, delta)


def _typable(report: DemoReport, label: str, judgement: Judgement, system: System,
             settings: DemoSettings) -> Optional[Derivation]:
    found = search(judgement, system, settings.search_depth, settings.universe_size)
    if isinstance(found, Exhausted):
        report.add(f"{label}: NOT typable in {system.value} ({found})")
        return None
    report.add(f"{label}: typable in {system.value}, derivation of size {found.size()}")
    return found


def _refuted(report: DemoReport, label: str, judgement: Judgement, system: System) -> bool:
    budgets = ", ".join(f"depth {d}/universe {u}" for d, u in REFUTATION_BUDGETS)
    if refuted(judgement, system, REFUTATION_BUDGETS):
        report.add(f"{label}: refuted in {system.value} (search exhausted at {budgets})")
        return True
    report.add(f"{label}: unexpectedly typable in {system.value}")
    return False


def _counterexample(name: str, net_text: str, contexts: str, broken: Regime, reduct_text: str,
                    settings: DemoSettings) -> DemoReport:
    report = DemoReport(name)
    start = parse_net(net_text)
    report.add(f"start net: {show_net(start)}")
    report.add(f"contexts: {contexts}")
    typed = _typable(report, "start", _judgement(net_text, contexts, start), System.IU, settings)

    trace = reduce(start, broken, settings.fuel)
    report.add(f"{broken.value} reduction:")
    report.lines.extend("  " + line for line in trace.to_text().splitlines())
    reaches = alpha_eq(trace.final, parse_net(reduct_text))
    report.add(f"{broken.value} normal form is {reduct_text}: {'yes' if reaches else 'no'}")
    broken_ok = _refuted(report, f"{broken.value} reduct", _judgement(net_text, contexts, trace.final), System.IU)

    other = Regime.CBN if broken is Regime.CBV else Regime.CBV
    other_trace = reduce(start, other, settings.fuel)
    report.add(f"{other.value} normal form: {show_net(other_trace.final)}")
    other_ok = _typable(report, f"{other.value} normal form",
                        _judgement(net_text, contexts, other_trace.final), System.IU, settings)

    report.passed = typed is not None and reaches and broken_ok and other_ok is not None
    return report


def demo_first_counterexample(settings: DemoSettings) -> DemoReport:
    """Call-by-value reduction loses the type of a typed net; call-by-name keeps it."""
    return _counterexample("counterexample-1", FIRST_COUNTEREXAMPLE, FIRST_CONTEXTS, Regime.CBV,
                           FIRST_CBV_REDUCT, settings)


def demo_second_counterexample(settings: DemoSettings) -> DemoReport:
    """The dual: call-by-name loses the type, call-by-value keeps it."""
    return _counterexample("counterexample-2", SECOND_COUNTEREXAMPLE, SECOND_CONTEXTS, Regime.CBN,
                           SECOND_CBN_REDUCT, settings)


def _run_lines(report: DemoReport, run: PropertyRun) -> None:
    report.add(run.summary())
    report.lines.extend(f"  {failure}" for failure in run.failures[:5])


def demo_expansion(settings: DemoSettings) -> DemoReport:
    report = DemoReport("expansion")
    run = run_expansion(settings.seed, settings.cases)
    _run_lines(report, run)
    report.passed = run.passed and run.checked > 0
    return report


def _restricted_rejects(report: DemoReport, system: System, net_text: str, contexts: str,
                        settings: DemoSettings) -> bool:
    """
    The unrestricted derivation of a counterexample fails the restricted
    checker on the split over the root cut's connector: unionL on the
    socket under call-by-name, interR on the plug under call-by-value,
    at the operand that does not introduce it.
    """
    start = parse_net(net_text)
    if system is System.CBN:
        rule, subject, operand = UNION_L, start.bind_socket, start.right
    else:
        rule, subject, operand = INTER_R, start.bind_plug, start.left
    expected = f"{rule} on {subject} needs it introduced"
    found = search(_judgement(net_text, contexts, start), System.IU, settings.search_depth,
                   settings.universe_size)
    if isinstance(found, Exhausted):
        report.add(f"no {System.IU.value} derivation of {net_text} to relabel")
        return False
    try:
        check_derivation(found.with_system(system))
    except RuleError as e:
        at = found.at(e.path)
        report.add(f"{system.value} checker rejects the {System.IU.value} derivation of {net_text}: {e}")
        if e.reason == expected and alpha_eq(at.net, operand):
            return True
        report.add(f"expected {expected} at {show_net(operand)}, rejected at {show_net(at.net)}")
        return False
    report.add(f"{system.value} checker accepted the {System.IU.value} derivation of {net_text}")
    return False


def demo_cbn_preservation(settings: DemoSettings) -> DemoReport:
    report = DemoReport("cbn-preservation")
    run = run_cbn_preservation(settings.seed, settings.cases)
    _run_lines(report, run)
    rejected = _restricted_rejects(report, System.CBN, SECOND_COUNTEREXAMPLE, SECOND_CONTEXTS, settings)
    report.passed = run.passed and run.checked > 0 and rejected
    return report


def demo_cbv_preservation(settings: DemoSettings) -> DemoReport:
    report = DemoReport("cbv-preservation")
    run = run_cbv_preservation(settings.seed, settings.cases)
    _run_lines(report, run)
    rejected = _restricted_rejects(report, System.CBV, FIRST_COUNTEREXAMPLE, FIRST_CONTEXTS, settings)
    report.passed = run.passed and run.checked > 0 and rejected
    return report


def demo_expansion_failure(settings: DemoSettings) -> DemoReport:
    """A call-by-name step whose reduct is typable in the call-by-name system while the start is not."""
    report = DemoReport("expansion-failure")
    start = parse_net(EXPANSION_FAILURE)
    redexes = find_redexes(start, Regime.CBN)
    if not redexes:
        report.add(f"{show_net(start)} has no call-by-name step")
        return report
    reduct = step(start, redexes[0])
    report.add(f"step {redexes[0].rule.name} @ {redexes[0].path_text()}: {show_net(start)}  ==>  {show_net(reduct)}")
    typed = _typable(report, "reduct", _judgement(EXPANSION_FAILURE, EXPANSION_FAILURE_CONTEXTS, reduct),
                     System.CBN, settings)
    start_refuted = _refuted(report, "start", _judgement(EXPANSION_FAILURE, EXPANSION_FAILURE_CONTEXTS, start),
                             System.CBN)
    report.passed = typed is not None and start_refuted
    return report


DEMOS: Dict[str, Tuple[Callable[[DemoSettings], DemoReport], str]] = {
    'counterexample-1': (demo_first_counterexample,
                         "call-by-value reduct of a typed net is not typable"),
    'counterexample-2': (demo_second_counterexample,
                         "call-by-name reduct of a typed net is not typable"),
    'expansion': (demo_expansion, "witness expansion over random one-step pairs"),
    'cbn-preservation': (demo_cbn_preservation, "witness reduction for the call-by-name system"),
    'cbv-preservation': (demo_cbv_preservation, "witness reduction for the call-by-value system"),
    'expansion-failure': (demo_expansion_failure, "the call-by-name system is not closed under expansion"),
}


def run_demo(name: str, settings: Optional[DemoSettings] = None) -> DemoReport:
    """
    Run a demo by name.

    Raises:
        KeyError: If the demo is unknown.
    """
    demo, _ = DEMOS[name]
    report = demo(settings or DemoSettings())
    logging.info(f"Demo {name}: {report.verdict}")
    return report
