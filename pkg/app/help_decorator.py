########################
# Dynamic Help Decorator #
########################

from abc import ABC, abstractmethod
from typing import Dict, List, Tuple

from app.command_pattern import CommandFactory
from app.demos import DEMOS
from app.proptest import PROPERTIES


class HelpComponent(ABC):
    """
    Abstract base component for the Decorator pattern.
    """

    @abstractmethod
    def get_help_info(self) -> Tuple[str, str]:  # pragma: no cover
        """Get help information for this component."""  # pragma: no cover
        pass  # pragma: no cover


class CommandHelpWrapper(HelpComponent):
    """Concrete component reading the description off a command class."""

    def __init__(self, command_name: str):
        self._command_name = command_name

    def get_help_info(self) -> Tuple[str, str]:
        command_class = CommandFactory.get_command_class(self._command_name)
        return (self._command_name, command_class.description or f"Run {self._command_name}")


class HelpDecorator(HelpComponent):
    """Base decorator class for the Decorator pattern."""

    def __init__(self, component: HelpComponent):
        self._component = component

    def get_help_info(self) -> Tuple[str, str]:
        return self._component.get_help_info()


class ChoicesHelpDecorator(HelpDecorator):
    """Appends the names a command accepts."""

    _CHOICES = {
        'reduce': ['full', 'cbn', 'cbv'],
        'demo': sorted(DEMOS),
        'proptest': ['all'] + sorted(PROPERTIES),
    }

    def get_help_info(self) -> Tuple[str, str]:
        name, description = self._component.get_help_info()
        choices = self._CHOICES.get(name)
        if choices:
            description = f"{description} ({', '.join(choices)})"
        return (name, description)


class CategoryHelpDecorator(HelpDecorator):
    """Prefixes the command's category."""

    _COMMAND_CATEGORIES = {
        'parse': 'Calculus',
        'reduce': 'Calculus',
        'translate': 'Calculus',
        'check': 'Typing',
        'demo': 'Reproduction',
        'proptest': 'Reproduction',
        'corpus': 'Reproduction',
    }

    def get_help_info(self) -> Tuple[str, str]:
        name, description = self._component.get_help_info()
        category = self._COMMAND_CATEGORIES.get(name, 'Other')
        return (name, f"[{category}] {description}")


class DynamicHelpGenerator:
    """Builds the command overview from the command registry."""

    @staticmethod
    def generate_command_help() -> Dict[str, List[Tuple[str, str]]]:
        categorized: Dict[str, List[Tuple[str, str]]] = {}
        for name in CommandFactory.get_available_commands():
            component = CategoryHelpDecorator(ChoicesHelpDecorator(CommandHelpWrapper(name)))
            _, help_text = component.get_help_info()
            category_end = help_text.index(']')
            category = help_text[1:category_end]
            categorized.setdefault(category, []).append((name, help_text[category_end + 2:]))
        for entries in categorized.values():
            entries.sort(key=lambda x: x[0])
        return categorized

    @staticmethod
    def get_formatted_help() -> str:
        lines = ["Available commands:", ""]
        for category, entries in sorted(DynamicHelpGenerator.generate_command_help().items()):
            lines.append(f"{category} Commands:")
            for name, description in entries:
                lines.append(f"  {name} - {description}")
            lines.append("")
        lines.append("Exit codes: 0 ok, 1 verdict FAIL or rejected derivation, 2 usage or parse error")
        return "\n".join(lines)
