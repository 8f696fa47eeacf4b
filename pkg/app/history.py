########################
# Reduction Observers   #
########################

from abc import ABC, abstractmethod
import logging
from typing import Any, List

from app.trace import TraceStep


class ReductionObserver(ABC):
    """
    Interface for observers notified after every fired redex.
    """

    @abstractmethod
    def update(self, step: TraceStep) -> None:
        """
        Handle a new reduction step.

        Args:
            step (TraceStep): The step that was just taken.
        """
        pass  # pragma: no cover


class LoggingObserver(ReductionObserver):
    """Logs every step at INFO level."""

    def update(self, step: TraceStep) -> None:
        if step is None:
            raise AttributeError("Step cannot be None")
        logging.info(f"Reduction step {step.index}: {step.redex.rule.name} @ {step.redex.path_text()}")


class RuleCountObserver(ReductionObserver):
    """Counts how often each rule fired."""

    def __init__(self):
        self.counts = {}

    def update(self, step: TraceStep) -> None:
        name = step.redex.rule.name
        self.counts[name] = self.counts.get(name, 0) + 1


class TraceCollector(ReductionObserver):
    """Keeps every step it sees, for export."""

    def __init__(self):
        self.steps: List[TraceStep] = []

    def update(self, step: TraceStep) -> None:
        self.steps.append(step)

    def clear(self) -> None:
        self.steps.clear()


class AutoExportObserver(ReductionObserver):
    """
    Exports the workbench's current trace after every step when enabled.

    Args:
        workbench (Any): Object exposing ``config.auto_export`` and ``export_trace``.

    Raises:
        TypeError: If the workbench lacks the required attributes.
    """

    def __init__(self, workbench: Any):
        if not hasattr(workbench, 'config') or not hasattr(workbench, 'export_trace'):
            raise TypeError("Workbench must have 'config' and 'export_trace' attributes")
        self.workbench = workbench

    def update(self, step: TraceStep) -> None:
        if step is None:
            raise AttributeError("Step cannot be None")
        if self.workbench.config.auto_export:
            self.workbench.export_trace()
            logging.info("Trace auto-exported")


def notify_all(observers: List[ReductionObserver], step: TraceStep) -> None:
    for observer in observers:
        observer.update(step)
