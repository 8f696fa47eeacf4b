########################
# Example Corpus        #
########################

"""
Loading and golden recomputation of the example corpus.

Each entry is a directory under ``corpus/`` holding an ``entry.txt`` of
``key: value`` lines and a README. Expected artifacts are written as

    expect <artifact>: <value>  [CLAIM|DERIVED|TRIVIAL: note]

and every one of them must carry a provenance tag.
"""

from dataclasses import dataclass, field
import logging
from pathlib import Path
import re
from typing import Callable, Dict, List, Optional, Union

from app.checker import is_valid
from app.derivation import Derivation, Judgement, System
from app.exceptions import ParseError, ValidationError
from app.iu_types import parse_contexts, show_context, show_judgement_contexts, show_type
from app.lambda_bridge import curry_infer, translate
from app.lambda_terms import parse_lambda
from app.net_parser import parse_net
from app.reduction import reduce, reduction_graph
from app.rewrite import Regime, find_redexes, step
from app.search import Exhausted, search
from app.simple_inference import infer_simple
from app.syntax import NameSupply, Net, alpha_eq, show_net

PROVENANCE_TAGS = ("CLAIM", "DERIVED", "TRIVIAL")

_EXPECT = re.compile(r"^expect\s+(?P<artifact>[a-z.-]+)\s*:\s*(?P<value>.*?)\s*"
                     r"\[(?P<tag>[A-Z]+)(?::\s*(?P<note>[^\]]*))?\]\s*$")
_KEYS = ("kind", "source", "plug", "contexts", "derivation")


@dataclass(frozen=True)
class Expectation:
    artifact: str
    value: str
    provenance: str
    note: str = ""


@dataclass
class CorpusEntry:
    """
    One corpus example: a net or a lambda term with its expected artifacts.
    """

    name: str
    kind: str
    source: str
    directory: Path
    plug: str = "a"
    contexts: Optional[str] = None
    derivation: Optional[str] = None
    expectations: List[Expectation] = field(default_factory=list)

    def net(self, supply: Optional[NameSupply] = None) -> Net:
        if self.kind == "lambda":
            return translate(parse_lambda(self.source), self.plug, supply)
        return parse_net(self.source, supply)

    def judgement(self, n: Optional[Net] = None) -> Judgement:
        """
        The entry's contexts around ``n`` (the entry's own net by default).

        Raises:
            ValidationError: If the entry has no contexts.
        """
        if self.contexts is None:
            raise ValidationError(f"corpus entry {self.name} has no contexts")
        gamma, delta = parse_contexts(self.contexts)
        return Judgement(n if n is not None else self.net(), gamma, delta)

    def load_derivation(self) -> Derivation:
        if self.derivation is None:
            raise ValidationError(f"corpus entry {self.name} has no derivation file")
        return Derivation.from_json((self.directory / self.derivation).read_text(encoding="utf-8"))


def parse_entry(text: str, directory: Path) -> CorpusEntry:
    """
    Parse the text of an ``entry.txt``.

    Raises:
        ParseError: On a malformed line, an unknown key, a missing source or
            an expectation without provenance.
    """
    fields: Dict[str, str] = {}
    expectations: List[Expectation] = []
    offset = 0
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            if stripped.startswith("expect "):
                match = _EXPECT.match(stripped)
                if not match or match.group("tag") not in PROVENANCE_TAGS:
                    raise ParseError(f"expectation without provenance: {stripped}", offset)
                expectations.append(Expectation(match.group("artifact"), match.group("value"),
                                                match.group("tag"), (match.group("note") or "").strip()))
            else:
                key, sep, value = stripped.partition(":")
                if not sep or key.strip() not in _KEYS:
                    raise ParseError(f"unknown corpus line: {stripped}", offset)
                fields[key.strip()] = value.strip()
        offset += len(line) + 1
    if fields.get("kind") not in ("net", "lambda") or not fields.get("source"):
        raise ParseError("corpus entry needs kind net|lambda and a source", 0)
    return CorpusEntry(
        name=directory.name,
        kind=fields["kind"],
        source=fields["source"],
        directory=directory,
        plug=fields.get("plug", "a"),
        contexts=fields.get("contexts"),
        derivation=fields.get("derivation"),
        expectations=expectations,
    )


def load_entry(directory: Path) -> CorpusEntry:
    return parse_entry((directory / "entry.txt").read_text(encoding="utf-8"), directory)


def load_corpus(root: Path) -> List[CorpusEntry]:
    """All entries below ``root``, sorted by name."""
    entries = [load_entry(d) for d in sorted(root.iterdir()) if (d / "entry.txt").is_file()]
    logging.info(f"Loaded {len(entries)} corpus entries from {root}")
    return entries


########################
# Recomputation         #
########################

@dataclass(frozen=True)
class CheckResult:
    entry: str
    expectation: Expectation
    actual: str
    passed: bool

    def to_text(self) -> str:
        mark = "ok" if self.passed else "MISMATCH"
        line = f"{self.entry}: {self.expectation.artifact} [{self.expectation.provenance}] {mark}"
        if not self.passed:
            line += f" (expected {self.expectation.value!r}, got {self.actual!r})"
        return line


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


class CorpusVerifier:
    """
    Recomputes the artifacts named by corpus expectations.

    An artifact name is a head optionally followed by a regime and a system,
    e.g. ``normal-form.cbv`` or ``normal-form-typable.cbn.iu``.
    """

    def __init__(self, fuel: int = 10_000, node_budget: int = 5_000,
                 search_depth: int = 6, universe_size: int = 48):
        self.fuel = fuel
        self.node_budget = node_budget
        self.search_depth = search_depth
        self.universe_size = universe_size
        self._artifacts: Dict[str, Callable[..., Union[str, Net]]] = {
            'translation': self.translation,
            'print': self.printed,
            'normal-form': self.normal_form,
            'reaches': self.reaches,
            'sinks': self.sinks,
            'typable': self.typable,
            'normal-form-typable': self.normal_form_typable,
            'reduct-typable': self.reduct_typable,
            'derivation-checks': self.derivation_checks,
            'curry-type': self.curry_type,
            'simple-typing': self.simple_typing,
        }

    @property
    def artifacts(self) -> List[str]:
        return sorted(self._artifacts)

    def check(self, entry: CorpusEntry, expectation: Expectation) -> CheckResult:
        """
        Recompute one artifact and compare it with its expected value.

        Nets compare up to alpha-equivalence, everything else as text.

        Raises:
            ValidationError: If the artifact name is unknown.
        """
        head, *args = expectation.artifact.split(".")
        compute = self._artifacts.get(head)
        if compute is None:
            raise ValidationError(f"unknown corpus artifact: {expectation.artifact}")
        if head == 'reaches':
            args.append(expectation.value)
        actual = compute(entry, *args)
        if isinstance(actual, str):
            passed = actual == expectation.value
            shown = actual
        else:
            shown = show_net(actual)
            passed = expectation.value != "exhausted" and alpha_eq(actual, parse_net(expectation.value))
        return CheckResult(entry.name, expectation, shown, passed)

    def verify(self, entry: CorpusEntry) -> List[CheckResult]:
        results = [self.check(entry, e) for e in entry.expectations]
        failed = [r for r in results if not r.passed]
        if failed:
            logging.error(f"Corpus entry {entry.name}: {len(failed)} of {len(results)} expectations failed")
        else:
            logging.info(f"Corpus entry {entry.name}: {len(results)} expectations reproduced")
        return results

    def verify_all(self, entries: List[CorpusEntry]) -> List[CheckResult]:
        return [r for entry in entries for r in self.verify(entry)]

    # artifacts

    def translation(self, entry: CorpusEntry) -> Net:
        if entry.kind != "lambda":
            raise ValidationError(f"corpus entry {entry.name} is not a lambda term")
        return entry.net()

    def printed(self, entry: CorpusEntry) -> str:
        return show_net(entry.net())

    def normal_form(self, entry: CorpusEntry, regime: str) -> Union[str, Net]:
        trace = reduce(entry.net(), Regime(regime), self.fuel)
        return "exhausted" if trace.exhausted else trace.final

    def reaches(self, entry: CorpusEntry, regime: str, target: str) -> str:
        graph = reduction_graph(entry.net(), Regime(regime), self.node_budget)
        if graph.contains(parse_net(target)):
            return target
        return f"not reached ({len(graph.nodes)} nets)"

    def sinks(self, entry: CorpusEntry, regime: str) -> str:
        graph = reduction_graph(entry.net(), Regime(regime), self.node_budget)
        return str(len(graph.sinks()))

    def _search(self, judgement: Judgement, system: str) -> str:
        found = search(judgement, System(system), self.search_depth, self.universe_size)
        return _yes_no(not isinstance(found, Exhausted))

    def typable(self, entry: CorpusEntry, system: str) -> str:
        return self._search(entry.judgement(), system)

    def normal_form_typable(self, entry: CorpusEntry, regime: str, system: str) -> str:
        trace = reduce(entry.net(), Regime(regime), self.fuel)
        if trace.exhausted:
            return "exhausted"
        return self._search(entry.judgement(trace.final), system)

    def reduct_typable(self, entry: CorpusEntry, regime: str, system: str) -> str:
        n = entry.net()
        redexes = find_redexes(n, Regime(regime))
        if not redexes:
            return "normal form"
        return self._search(entry.judgement(step(n, redexes[0])), system)

    def derivation_checks(self, entry: CorpusEntry) -> str:
        d = entry.load_derivation()
        return _yes_no(is_valid(d) and alpha_eq(d.net, entry.net()))

    def curry_type(self, entry: CorpusEntry) -> str:
        if entry.kind != "lambda":
            raise ValidationError(f"corpus entry {entry.name} is not a lambda term")
        found = curry_infer(parse_lambda(entry.source))
        if found is None:
            return "untypable"
        gamma, t = found
        return f"{show_context(gamma)} |- {show_type(t)}".strip()

    def simple_typing(self, entry: CorpusEntry) -> str:
        found = infer_simple(entry.net())
        return "untypable" if found is None else show_judgement_contexts(*found)
