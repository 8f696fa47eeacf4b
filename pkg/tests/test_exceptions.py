# tests/test_exceptions.py
import pytest
from app.exceptions import (
    ConfigurationError, ExpansionShapeError, IncompatibleContextError, NamespaceClashError, ParseError,
    PreservationError, RenameCaptureError, RuleError, ShapeError, StaleRedexError, ValidationError,
    WorkbenchError,
)

# Test cases for the WorkbenchError hierarchy

def test_workbench_error_is_base_exception():
    with pytest.raises(WorkbenchError) as exc_info:
        raise WorkbenchError("Base workbench error occurred")
    assert str(exc_info.value) == "Base workbench error occurred"


@pytest.mark.parametrize("error_class", [
    ValidationError, ConfigurationError, RenameCaptureError, StaleRedexError, ShapeError,
])
def test_plain_errors_are_workbench_errors(error_class):
    with pytest.raises(WorkbenchError) as exc_info:
        raise error_class("failed")
    assert str(exc_info.value) == "failed"


def test_parse_error_carries_position():
    error = ParseError("expected '>'", 7)
    assert error.position == 7
    assert str(error) == "expected '>' at position 7"


def test_namespace_clash_is_parse_error():
    with pytest.raises(ParseError) as exc_info:
        raise NamespaceClashError("name x used as socket and plug", 3)
    assert exc_info.value.position == 3


def test_rule_error_names_the_path():
    error = RuleError((0, 1), "Ax needs a capsule")
    assert error.path == (0, 1)
    assert error.reason == "Ax needs a capsule"
    assert str(error) == "0/1: Ax needs a capsule"


def test_rule_error_at_root():
    assert str(RuleError((), "cut type missing")) == "root: cut type missing"


def test_incompatible_context_error():
    error = IncompatibleContextError("x", "A", "B")
    assert error.subject == "x"
    assert "x" in str(error) and "A vs B" in str(error)


def test_preservation_error():
    error = PreservationError("DL_imp", "no branch", [1, 0])
    assert error.rule == "DL_imp"
    assert error.path == (1, 0)
    assert str(error) == "DL_imp: no branch"


def test_expansion_shape_error_is_shape_error():
    assert issubclass(ExpansionShapeError, ShapeError)
