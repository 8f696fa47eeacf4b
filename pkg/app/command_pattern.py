########################
# Command Design Pattern #
########################

from abc import ABC, abstractmethod
import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Type

from app.colors import ColorPrinter
from app.corpus import CorpusVerifier, load_corpus
from app.demos import DEMOS, DemoSettings, run_demo
from app.exceptions import RuleError, ValidationError
from app.input_validators import InputValidator
from app.lambda_bridge import check_simulation, curry_infer, simple_typing_of
from app.lambda_terms import parse_lambda
from app.iu_types import show_context, show_type
from app.net_parser import print_net
from app.proptest import PROPERTIES, run_property
from app.rewrite import Regime
from app.workbench import Workbench
from app.workbench_config import get_project_root

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class Command(ABC):
    """
    A workbench request encapsulated as an object.

    ``execute`` prints its output and returns the process exit code.
    """

    @abstractmethod
    def execute(self) -> int:  # pragma: no cover
        """Execute the command."""  # pragma: no cover
        pass  # pragma: no cover

    @abstractmethod
    def get_description(self) -> str:  # pragma: no cover
        """Get a description of this command."""  # pragma: no cover
        pass  # pragma: no cover


class WorkbenchReceiver:
    """
    Knows how to carry out requests against a workbench session.
    """

    def __init__(self, workbench: Workbench):
        self.workbench = workbench

    def read_input(self, text: Optional[str], file: Optional[str]) -> str:
        """
        The command's input: inline text, a file, or stdin for ``-``.

        Raises:
            ValidationError: If neither or both are given.
        """
        if (text is None) == (file is None):
            raise ValidationError("give exactly one of an inline argument or --file")
        if text is not None:
            return sys.stdin.read() if text == "-" else text
        return Path(file).read_text(encoding=self.workbench.config.default_encoding)


class WorkbenchCommand(Command):
    """Base class for commands built from parsed command-line options."""

    description = ""

    def __init__(self, receiver: WorkbenchReceiver, options: argparse.Namespace):
        self.receiver = receiver
        self.options = options

    @property
    def workbench(self) -> Workbench:
        return self.receiver.workbench

    def get_description(self) -> str:
        return self.description


class ParseCommand(WorkbenchCommand):
    description = "Parse a net and print it in canonical form"

    def execute(self) -> int:
        text = self.receiver.read_input(self.options.net, self.options.file)
        ColorPrinter.line(print_net(self.workbench.parse(text)))
        return EXIT_OK


class ReduceCommand(WorkbenchCommand):
    description = "Reduce a net under full, call-by-name or call-by-value reduction"

    def execute(self) -> int:
        n = self.workbench.parse(self.receiver.read_input(self.options.net, self.options.file))
        regime = InputValidator.validate_regime(self.options.regime)
        if self.options.graph:
            budget = None
            if self.options.node_budget is not None:
                budget = InputValidator.validate_count(self.options.node_budget, "node budget", 1)
            graph = self.workbench.explore(n, regime, budget)
            ColorPrinter.line(graph.to_text())
            if self.options.export:
                ColorPrinter.info(f"Graph exported to {self.workbench.export_graph()}")
            return EXIT_OK
        fuel = None
        if self.options.fuel is not None:
            fuel = InputValidator.validate_count(self.options.fuel, "fuel")
        trace = self.workbench.reduce(n, regime, fuel, self.options.chooser, self.options.seed)
        if self.options.trace:
            ColorPrinter.line(trace.to_text())
        else:
            ColorPrinter.line(print_net(trace.final))
            if trace.exhausted:
                ColorPrinter.warning(f"fuel exhausted after {len(trace.steps)} steps")
        if self.options.export:
            ColorPrinter.info(f"Trace exported to {self.workbench.export_trace()}")
        return EXIT_OK


class CheckCommand(WorkbenchCommand):
    description = "Check a derivation file rule by rule"

    def execute(self) -> int:
        d = self.workbench.load_derivation(Path(self.options.derivation))
        try:
            self.workbench.check(d)
        except RuleError as e:
            ColorPrinter.error(str(e))
            return EXIT_FAIL
        ColorPrinter.success(f"ok: {d.conclusion} ({d.system.value}, {d.size()} nodes)")
        return EXIT_OK


class TranslateCommand(WorkbenchCommand):
    description = "Interpret a lambda term as a net"

    def execute(self) -> int:
        text = self.receiver.read_input(self.options.term, self.options.file)
        plug = InputValidator.validate_plug(self.options.plug)
        n = self.workbench.translate(text, plug, self.options.explicit_substitution)
        ColorPrinter.line(print_net(n))
        status = EXIT_OK
        if self.options.typing:
            m = parse_lambda(text)
            found = curry_infer(m)
            if found is None:
                ColorPrinter.warning("no simple type")
            else:
                gamma, t = found
                ColorPrinter.info(f"{show_context(gamma)} |- {show_type(t)}".strip())
                ColorPrinter.line(simple_typing_of(m, plug).pretty())
        if self.options.simulate:
            m = parse_lambda(text)
            for regime in Regime:
                report = check_simulation(m, regime, self.workbench.config.node_budget, plug)
                ColorPrinter.info(f"simulation under {regime.value}: {report.verdict()} "
                                  f"({report.checked} beta steps)")
                if report.failures:
                    status = EXIT_FAIL
        return status


class DemoCommand(WorkbenchCommand):
    description = "Reproduce a published result and print a PASS/FAIL verdict"

    def execute(self) -> int:
        name = InputValidator.validate_choice(self.options.name, DEMOS, "demo")
        config = self.workbench.config
        settings = DemoSettings(
            seed=config.seed if self.options.seed is None else self.options.seed,
            cases=config.cases if self.options.cases is None else
            InputValidator.validate_count(self.options.cases, "cases", 1),
            search_depth=config.search_depth,
            universe_size=config.universe_size,
        )
        ColorPrinter.header(f"demo {name}")
        report = run_demo(name, settings)
        for line in report.lines:
            ColorPrinter.line(line)
        ColorPrinter.verdict(report.passed)
        return EXIT_OK if report.passed else EXIT_FAIL


class ProptestCommand(WorkbenchCommand):
    description = "Run seeded random property checks"

    def execute(self) -> int:
        config = self.workbench.config
        names = sorted(PROPERTIES) if self.options.name == "all" else \
            [InputValidator.validate_choice(self.options.name, PROPERTIES, "property")]
        seed = config.seed if self.options.seed is None else self.options.seed
        cases = config.cases if self.options.cases is None else \
            InputValidator.validate_count(self.options.cases, "cases", 1)
        runs = [run_property(name, seed, cases) for name in names]
        for run in runs:
            ColorPrinter.line(run.summary())
            for failure in run.failures[:5]:
                ColorPrinter.line(f"  {failure}")
        if self.options.export:
            path = self.workbench.export_summary([run.to_row() for run in runs], "proptest.csv")
            ColorPrinter.info(f"Summary exported to {path}")
        passed = all(run.passed for run in runs)
        ColorPrinter.verdict(passed)
        return EXIT_OK if passed else EXIT_FAIL


class CorpusCommand(WorkbenchCommand):
    description = "Recompute every expected artifact of the example corpus"

    def execute(self) -> int:
        root = Path(self.options.dir) if self.options.dir else get_project_root() / "corpus"
        config = self.workbench.config
        verifier = CorpusVerifier(config.fuel, config.node_budget, config.search_depth, config.universe_size)
        results = verifier.verify_all(load_corpus(root))
        for result in results:
            if result.passed:
                ColorPrinter.line(result.to_text())
            else:
                ColorPrinter.warning(result.to_text())
        if self.options.export:
            rows = [{'entry': r.entry, 'artifact': r.expectation.artifact,
                     'provenance': r.expectation.provenance, 'expected': r.expectation.value,
                     'actual': r.actual, 'passed': r.passed} for r in results]
            ColorPrinter.info(f"Summary exported to {self.workbench.export_summary(rows, 'corpus.csv')}")
        passed = all(r.passed for r in results)
        ColorPrinter.verdict(passed, f"{sum(r.passed for r in results)}/{len(results)} artifacts")
        return EXIT_OK if passed else EXIT_FAIL


class CommandInvoker:
    """
    Executes commands and remembers them.
    """

    def __init__(self):
        self.command_history: List[Command] = []

    def execute_command(self, command: Command) -> Any:
        self.command_history.append(command)
        return command.execute()

    def get_command_history(self) -> List[str]:
        return [cmd.get_description() for cmd in self.command_history]


class CommandFactory:
    """
    Factory for creating command objects by subcommand name.
    """

    _commands: Dict[str, Type[WorkbenchCommand]] = {
        'parse': ParseCommand,
        'reduce': ReduceCommand,
        'check': CheckCommand,
        'translate': TranslateCommand,
        'demo': DemoCommand,
        'proptest': ProptestCommand,
        'corpus': CorpusCommand,
    }

    @classmethod
    def register_command(cls, name: str, command_class: type) -> None:
        """
        Register a new subcommand.

        Raises:
            TypeError: If the class is not a WorkbenchCommand.
        """
        if not issubclass(command_class, WorkbenchCommand):
            raise TypeError("Command class must inherit from WorkbenchCommand")
        cls._commands[name.lower()] = command_class

    @classmethod
    def create_command(cls, name: str, receiver: WorkbenchReceiver, options: argparse.Namespace) -> WorkbenchCommand:
        command_class = cls._commands.get(name.lower())
        if not command_class:
            raise ValidationError(f"Unknown command: {name}")
        return command_class(receiver, options)

    @classmethod
    def get_command_class(cls, name: str) -> Type[WorkbenchCommand]:
        return cls._commands[name.lower()]

    @classmethod
    def get_available_commands(cls) -> List[str]:
        return list(cls._commands.keys())
