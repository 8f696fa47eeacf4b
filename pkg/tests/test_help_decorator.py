"""
Tests for the Help Decorator module.
"""
import pytest

from app.help_decorator import (
    CategoryHelpDecorator, ChoicesHelpDecorator, CommandHelpWrapper, DynamicHelpGenerator,
    HelpComponent, HelpDecorator,
)


class TestHelpComponent:

    def test_help_component_abstract(self):
        with pytest.raises(TypeError):
            HelpComponent()


class TestCommandHelpWrapper:

    def test_reads_description(self):
        assert CommandHelpWrapper("parse").get_help_info() == (
            "parse", "Parse a net and print it in canonical form")

    def test_unknown_command(self):
        with pytest.raises(KeyError):
            CommandHelpWrapper("prove").get_help_info()


class TestDecorators:

    def test_base_decorator_passes_through(self):
        wrapper = CommandHelpWrapper("check")
        assert HelpDecorator(wrapper).get_help_info() == wrapper.get_help_info()

    def test_choices(self):
        _, description = ChoicesHelpDecorator(CommandHelpWrapper("reduce")).get_help_info()
        assert description.endswith("(full, cbn, cbv)")

    def test_no_choices_for_check(self):
        _, description = ChoicesHelpDecorator(CommandHelpWrapper("check")).get_help_info()
        assert "(" not in description

    def test_demo_choices(self):
        _, description = ChoicesHelpDecorator(CommandHelpWrapper("demo")).get_help_info()
        assert "counterexample-1, counterexample-2" in description

    def test_category(self):
        name, description = CategoryHelpDecorator(CommandHelpWrapper("check")).get_help_info()
        assert name == "check"
        assert description == "[Typing] Check a derivation file rule by rule"


class TestDynamicHelpGenerator:

    def test_categories(self):
        help_map = DynamicHelpGenerator.generate_command_help()
        assert set(help_map) >= {"Calculus", "Typing", "Reproduction"}
        assert [name for name, _ in help_map["Calculus"]] == ["parse", "reduce", "translate"]

    def test_formatted_help(self):
        text = DynamicHelpGenerator.get_formatted_help()
        assert text.startswith("Available commands:")
        assert "Typing Commands:" in text
        assert "  proptest - Run seeded random property checks (all, admissible," in text
        assert text.endswith("2 usage or parse error")
