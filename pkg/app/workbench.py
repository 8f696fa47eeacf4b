########################
# Workbench Facade      #
########################

import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd

from app.checker import check_derivation
from app.derivation import Derivation, Judgement, System
from app.exceptions import ParseError, RuleError, WorkbenchError
from app.history import ReductionObserver, TraceCollector
from app.lambda_bridge import translate
from app.lambda_terms import parse_lambda
from app.net_parser import parse_net
from app.reduction import ReductionGraph, reduction_graph, reduce
from app.rewrite import Regime
from app.search import Exhausted, search
from app.strategies import ChooserFactory
from app.syntax import NameSupply, Net
from app.trace import Trace, TraceStep
from app.workbench_config import WorkbenchConfig

TRACE_COLUMNS = ['step', 'rule', 'path', 'net']


class Workbench:
    """
    Session object tying the calculus, the type systems and the exports
    together.

    One workbench owns the configuration, the logging setup, the observers
    notified of every reduction step and the session's fresh-name supply.
    """

    def __init__(self, config: Optional[WorkbenchConfig] = None):
        """
        Initialize the workbench with configuration.

        Args:
            config (Optional[WorkbenchConfig]): Settings; read from the
                environment when not given.
        """
        self.config = config or WorkbenchConfig()
        self.config.validate()

        os.makedirs(self.config.log_dir, exist_ok=True)
        self._setup_logging()

        self.supply = NameSupply()
        self.collector = TraceCollector()
        self.observers: List[ReductionObserver] = [self.collector]
        self.trace: Optional[Trace] = None
        self.graph: Optional[ReductionGraph] = None

        logging.info("Workbench initialized with configuration")

    def _setup_logging(self) -> None:
        try:
            log_file = self.config.log_file.resolve()
            log_file.parent.mkdir(parents=True, exist_ok=True)
            logging.basicConfig(
                filename=str(log_file),
                level=logging.INFO,
                format='%(asctime)s - %(levelname)s - %(message)s',
                force=True
            )
            logging.info(f"Logging initialized at: {log_file}")
        except Exception as e:
            print(f"Error setting up logging: {e}")
            raise

    def add_observer(self, observer: ReductionObserver) -> None:
        self.observers.append(observer)
        logging.info(f"Added observer: {observer.__class__.__name__}")

    def remove_observer(self, observer: ReductionObserver) -> None:
        self.observers.remove(observer)
        logging.info(f"Removed observer: {observer.__class__.__name__}")

    def notify_observers(self, step: TraceStep) -> None:
        for observer in self.observers:
            observer.update(step)

    ########################
    # Calculus              #
    ########################

    def parse(self, text: str) -> Net:
        """
        Parse net text, drawing refreshed binders from the session supply.

        Raises:
            ParseError: On malformed text.
        """
        try:
            return parse_net(text, self.supply)
        except ParseError as e:
            logging.error(f"Parse error at {e.position}: {e}")
            raise

    def translate(self, text: str, plug: str = "a", explicit_substitution: bool = False) -> Net:
        return translate(parse_lambda(text), plug, self.supply, explicit_substitution)

    def reduce(self, n: Net, regime: Regime = Regime.FULL, fuel: Optional[int] = None,
               chooser: str = "first", seed: Optional[int] = None) -> Trace:
        """
        Reduce a net, notifying every observer of each step.

        Args:
            n (Net): Start net.
            regime (Regime): Full, CBN or CBV.
            fuel (Optional[int]): Step limit; the configured fuel by default.
            chooser (str): Redex choice, ``first`` or ``random``.
            seed (Optional[int]): Seed for random choice; the configured seed by default.

        Returns:
            Trace: The recorded reduction.
        """
        self.collector.clear()
        fuel = self.config.fuel if fuel is None else fuel
        picker = ChooserFactory.create(chooser, self.config.seed if seed is None else seed)
        self.trace = reduce(n, regime, fuel, picker, self.supply, self.observers)
        logging.info(f"Reduced under {regime.value} in {len(self.trace.steps)} steps"
                     + (" (fuel exhausted)" if self.trace.exhausted else ""))
        return self.trace

    def explore(self, n: Net, regime: Regime = Regime.FULL, node_budget: Optional[int] = None) -> ReductionGraph:
        budget = self.config.node_budget if node_budget is None else node_budget
        self.graph = reduction_graph(n, regime, budget, self.supply)
        logging.info(f"Reduction graph under {regime.value}: {len(self.graph.nodes)} nets, "
                     f"{len(self.graph.sinks())} sinks" + (", truncated" if self.graph.truncated else ""))
        return self.graph

    ########################
    # Typing                #
    ########################

    def load_derivation(self, path: Path) -> Derivation:
        """
        Read a derivation JSON file.

        Raises:
            ParseError: If the file does not hold a derivation.
        """
        text = Path(path).read_text(encoding=self.config.default_encoding)
        return Derivation.from_json(text)

    def check(self, d: Derivation) -> bool:
        """
        Check a derivation, logging the failing node if there is one.

        Raises:
            RuleError: At the first invalid node.
        """
        try:
            check_derivation(d)
        except RuleError as e:
            logging.error(f"Derivation rejected: {e}")
            raise
        logging.info(f"Derivation of {d.net} checked in {d.system.value}")
        return True

    def search(self, judgement: Judgement, system: System, depth: Optional[int] = None,
               universe_size: Optional[int] = None) -> Union[Derivation, Exhausted]:
        return search(judgement, system,
                      self.config.search_depth if depth is None else depth,
                      self.config.universe_size if universe_size is None else universe_size)

    ########################
    # Export                #
    ########################

    def _export(self, df: pd.DataFrame, name: str, path: Optional[Path]) -> Path:
        try:
            target = Path(path) if path is not None else self.config.export_dir / name
            target.parent.mkdir(parents=True, exist_ok=True)
            df.to_csv(target, index=False, encoding=self.config.default_encoding)
            logging.info(f"Exported {len(df)} rows to {target}")
            return target
        except Exception as e:
            logging.error(f"Failed to export {name}: {e}")
            raise WorkbenchError(f"Failed to export {name}: {e}") from e

    def trace_dataframe(self) -> pd.DataFrame:
        """Steps seen so far in the current reduction."""
        rows = [s.to_dict() for s in self.collector.steps]
        return pd.DataFrame(rows, columns=TRACE_COLUMNS, dtype=str)

    def export_trace(self, path: Optional[Path] = None) -> Path:
        """
        Write the current trace as CSV with columns step, rule, path, net.

        Returns:
            Path: The file written.
        """
        return self._export(self.trace_dataframe(), "trace.csv", path)

    def export_graph(self, path: Optional[Path] = None) -> Path:
        if self.graph is None:
            raise WorkbenchError("No reduction graph to export")
        return self._export(self.graph.to_dataframe(), "graph.csv", path)

    def export_summary(self, rows: Sequence[Dict[str, Any]], name: str = "summary.csv",
                       path: Optional[Path] = None) -> Path:
        """Write property-run or corpus results, one row per record."""
        return self._export(pd.DataFrame(list(rows)), name, path)
