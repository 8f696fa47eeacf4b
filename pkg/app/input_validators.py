########################
# Input Validation     #
########################

from dataclasses import dataclass
import re
from typing import Any, Iterable

from app.derivation import System
from app.exceptions import ValidationError
from app.rewrite import Regime

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass
class InputValidator:
    """
    Validates command-line inputs before they reach the workbench.
    """

    @staticmethod
    def validate_regime(value: Any) -> Regime:
        """
        Convert a regime name (full, cbn, cbv) to a Regime.

        Raises:
            ValidationError: If the name is unknown.
        """
        try:
            return Regime(str(value).strip().lower())
        except ValueError as e:
            choices = ", ".join(r.value for r in Regime)
            raise ValidationError(f"Unknown regime: {value} (choose from {choices})") from e

    @staticmethod
    def validate_system(value: Any) -> System:
        try:
            return System(str(value).strip().lower())
        except ValueError as e:
            choices = ", ".join(s.value for s in System)
            raise ValidationError(f"Unknown type system: {value} (choose from {choices})") from e

    @staticmethod
    def validate_count(value: Any, name: str, minimum: int = 0) -> int:
        """
        Validate a fuel, budget or case count.

        Args:
            value: The raw value.
            name (str): Setting name for the error message.
            minimum (int): Smallest allowed value.

        Raises:
            ValidationError: If the value is not an integer or is too small.
        """
        try:
            number = int(str(value).strip())
        except ValueError as e:
            raise ValidationError(f"Invalid {name}: {value}") from e
        if number < minimum:
            raise ValidationError(f"{name} must be at least {minimum}, got {number}")
        return number

    @staticmethod
    def validate_plug(value: Any) -> str:
        name = str(value).strip()
        if not _NAME.fullmatch(name):
            raise ValidationError(f"Invalid plug name: {value}")
        return name

    @staticmethod
    def validate_choice(value: Any, choices: Iterable[str], what: str) -> str:
        options = sorted(choices)
        name = str(value).strip().lower()
        if name not in options:
            raise ValidationError(f"Unknown {what}: {value} (choose from {', '.join(options)})")
        return name
