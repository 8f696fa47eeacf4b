# Filename: app/colors.py

"""
Color-coded terminal output using the colorama library.

Falls back to plain text if colorama is not installed. Errors go to stderr,
everything else to stdout.
"""

import sys

try:
    from colorama import Fore, Style, init
    # autoreset keeps colors from bleeding into the next print
    init(autoreset=True)
    COLORAMA_AVAILABLE = True
except ImportError:  # pragma: no cover
    COLORAMA_AVAILABLE = False  # pragma: no cover


def _paint(color: str, text: str) -> str:
    if COLORAMA_AVAILABLE:
        return f"{color}{text}{Style.RESET_ALL}"
    return text  # pragma: no cover


class ColorPrinter:
    """
    Printer for workbench output.

    - Success messages: Green
    - Error messages: Red, on stderr
    - Warning messages: Yellow
    - Info messages: Cyan
    - Headers: Bright Blue with bold style
    - Plain lines (nets, traces, derivations): uncolored
    - Verdicts: Bright Green PASS or Bright Red FAIL
    """

    @staticmethod
    def success(message: str) -> None:
        print(_paint(Fore.GREEN if COLORAMA_AVAILABLE else "", f"✓ {message}"))

    @staticmethod
    def error(message: str) -> None:
        """
        Print an error message in red to stderr.

        Args:
            message (str): The error message to display
        """
        print(_paint(Fore.RED if COLORAMA_AVAILABLE else "", f"✗ ERROR: {message}"), file=sys.stderr)

    @staticmethod
    def warning(message: str) -> None:
        print(_paint(Fore.YELLOW if COLORAMA_AVAILABLE else "", f"⚠ WARNING: {message}"))

    @staticmethod
    def info(message: str) -> None:
        print(_paint(Fore.CYAN if COLORAMA_AVAILABLE else "", f"ℹ {message}"))

    @staticmethod
    def header(message: str) -> None:
        style = f"{Fore.LIGHTBLUE_EX}{Style.BRIGHT}" if COLORAMA_AVAILABLE else ""
        print(_paint(style, f"=== {message} ==="))

    @staticmethod
    def line(message: str) -> None:
        print(message)

    @staticmethod
    def verdict(passed: bool, message: str = "") -> None:
        """
        Print a PASS or FAIL verdict line.

        Args:
            passed (bool): Whether the reproduced claim held.
            message (str): Optional text after the verdict.
        """
        word = "PASS" if passed else "FAIL"
        color = ""
        if COLORAMA_AVAILABLE:
            color = f"{Fore.LIGHTGREEN_EX if passed else Fore.LIGHTRED_EX}{Style.BRIGHT}"
        print(_paint(color, f"VERDICT: {word}" + (f" {message}" if message else "")))
