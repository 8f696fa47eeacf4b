"""
Tests for the color-coded workbench output.
"""
import pytest
from app.colors import ColorPrinter, COLORAMA_AVAILABLE


class TestColorPrinter:
    """Test suite for ColorPrinter class."""

    def test_success(self, capsys):
        ColorPrinter.success("derivation ok")
        captured = capsys.readouterr()
        assert "✓ derivation ok" in captured.out

    def test_error_goes_to_stderr(self, capsys):
        ColorPrinter.error("bad net")
        captured = capsys.readouterr()
        assert "ERROR: bad net" in captured.err
        assert captured.out == ""

    def test_warning(self, capsys):
        ColorPrinter.warning("fuel exhausted")
        assert "WARNING: fuel exhausted" in capsys.readouterr().out

    def test_info(self, capsys):
        ColorPrinter.info("exported")
        assert "exported" in capsys.readouterr().out

    def test_header(self, capsys):
        ColorPrinter.header("demo counterexample-1")
        assert "=== demo counterexample-1 ===" in capsys.readouterr().out

    def test_line_is_uncolored(self, capsys):
        ColorPrinter.line("<x.a>")
        assert capsys.readouterr().out == "<x.a>\n"

    @pytest.mark.parametrize("passed, word", [(True, "PASS"), (False, "FAIL")])
    def test_verdict(self, capsys, passed, word):
        ColorPrinter.verdict(passed, "3/3 artifacts")
        out = capsys.readouterr().out
        assert f"VERDICT: {word} 3/3 artifacts" in out

    def test_verdict_without_message(self, capsys):
        ColorPrinter.verdict(True)
        out = capsys.readouterr().out
        assert "VERDICT: PASS" in out
        assert "PASS " not in out


def test_colorama_available():
    assert COLORAMA_AVAILABLE is True
