########################
# Exception Hierarchy  #
########################

from typing import Optional, Sequence


class WorkbenchError(Exception):
    """
    Base exception class for workbench-specific errors.

    All custom exceptions raised by the calculus workbench inherit from this
    class, allowing for unified error handling at the command line.
    """
    pass


class ValidationError(WorkbenchError):
    """
    Raised when command-line input validation fails.

    Triggered for unknown regimes, systems or demo names and for negative
    budgets passed on the command line.
    """
    pass


class ParseError(WorkbenchError):
    """
    Raised when net, type, context or lambda text cannot be parsed.

    Args:
        message (str): Description of the problem.
        position (int): Character offset where parsing failed.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NamespaceClashError(ParseError):
    """Raised when one identifier is used both as a socket and as a plug."""
    pass


class RenameCaptureError(WorkbenchError):
    """Raised when a renaming target would be captured by a binder."""
    pass


class StaleRedexError(WorkbenchError):
    """
    Raised when a redex no longer matches the net it is fired on.

    Stale redexes are reported rather than silently recomputed.
    """
    pass


class RuleError(WorkbenchError):
    """
    Raised when a derivation node violates its rule schema.

    Args:
        path (Sequence[int]): Premise indices from the root to the bad node.
        reason (str): Human readable explanation.
    """

    def __init__(self, path: Sequence[int], reason: str):
        self.path = tuple(path)
        self.reason = reason
        where = "/".join(str(i) for i in self.path) or "root"
        super().__init__(f"{where}: {reason}")


class IncompatibleContextError(WorkbenchError):
    """Raised when two contexts give one subject different types."""

    def __init__(self, subject: str, first: object, second: object):
        self.subject = subject
        self.first = first
        self.second = second
        super().__init__(f"incompatible statements for {subject}: {first} vs {second}")


class ConfigurationError(WorkbenchError):
    """
    Raised when workbench configuration is invalid.

    Triggered when budgets are not positive or directories are unusable.
    """
    pass


class ShapeError(WorkbenchError):
    """Raised when a derivation or net does not have the shape an operation needs."""
    pass


class ExpansionShapeError(ShapeError):
    """Raised when witness expansion meets a derivation it cannot rebuild."""
    pass


class PreservationError(WorkbenchError):
    """
    Raised when a witness reduction case is not covered.

    Args:
        rule (str): Name of the fired rule.
        reason (str): Why no derivation of the reduct could be built.
    """

    def __init__(self, rule: str, reason: str, path: Optional[Sequence[int]] = None):
        self.rule = rule
        self.reason = reason
        self.path = tuple(path or ())
        super().__init__(f"{rule}: {reason}")


class ThinningError(WorkbenchError):
    """Raised when a statement cannot be removed from a derivation."""
    pass


class UnificationError(WorkbenchError):
    """Raised when two simple types cannot be made equal."""
    pass
