########################
# Command-line Entry    #
########################

import argparse
import logging
from typing import List, Optional

from app.colors import ColorPrinter
from app.command_pattern import (
    EXIT_FAIL, EXIT_USAGE, CommandFactory, CommandInvoker, WorkbenchReceiver,
)
from app.exceptions import ConfigurationError, ParseError, ValidationError, WorkbenchError
from app.help_decorator import DynamicHelpGenerator
from app.strategies import ChooserFactory
from app.workbench import Workbench
from app.workbench_config import WorkbenchConfig


def _source(parser: argparse.ArgumentParser, name: str, what: str) -> None:
    parser.add_argument(name, nargs='?', help=f"{what} text, or - for stdin")
    parser.add_argument('--file', help=f"read the {what} from a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xcalc",
        description="Workbench for the X sequent-calculus nets and their type systems.",
        epilog=DynamicHelpGenerator.get_formatted_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    parse = commands.add_parser('parse', help="print a net in canonical form")
    _source(parse, 'net', "net")

    reduce = commands.add_parser('reduce', help="reduce a net")
    _source(reduce, 'net', "net")
    reduce.add_argument('--regime', default='full', help="full, cbn or cbv")
    reduce.add_argument('--fuel', help="maximum number of steps")
    reduce.add_argument('--chooser', default='first', choices=ChooserFactory.names())
    reduce.add_argument('--seed', type=int, help="seed for the random chooser")
    reduce.add_argument('--trace', action='store_true', help="print every step")
    reduce.add_argument('--graph', action='store_true', help="print the reduction graph instead")
    reduce.add_argument('--node-budget', help="maximum number of nets in the graph")
    reduce.add_argument('--export', action='store_true', help="write the trace or graph as CSV")

    check = commands.add_parser('check', help="check a derivation JSON file")
    check.add_argument('derivation')

    translate = commands.add_parser('translate', help="interpret a lambda term as a net")
    _source(translate, 'term', "lambda term")
    translate.add_argument('--plug', default='a')
    translate.add_argument('--explicit-substitution', action='store_true',
                           help="accept M<x:=N> and interpret it as a cut")
    translate.add_argument('--typing', action='store_true', help="print the simple typing and its derivation")
    translate.add_argument('--simulate', action='store_true', help="check the beta simulation in every regime")

    demo = commands.add_parser('demo', help="reproduce a published result")
    demo.add_argument('name')
    demo.add_argument('--seed', type=int)
    demo.add_argument('--cases')

    proptest = commands.add_parser('proptest', help="run random property checks")
    proptest.add_argument('name', nargs='?', default='all')
    proptest.add_argument('--seed', type=int)
    proptest.add_argument('--cases')
    proptest.add_argument('--export', action='store_true')

    corpus = commands.add_parser('corpus', help="verify the example corpus")
    corpus.add_argument('--dir', help="corpus directory")
    corpus.add_argument('--export', action='store_true')
    return parser


def main(argv: Optional[List[str]] = None, config: Optional[WorkbenchConfig] = None) -> int:
    """
    Run one subcommand.

    Args:
        argv (Optional[List[str]]): Arguments without the program name.
        config (Optional[WorkbenchConfig]): Settings; read from the environment by default.

    Returns:
        int: 0 on success, 1 when a verdict fails or a derivation is
        rejected, 2 on a usage or parse error.
    """
    parser = build_parser()
    try:
        options = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        workbench = Workbench(config)
    except ConfigurationError as e:
        ColorPrinter.error(f"Configuration error: {e}")
        return EXIT_USAGE

    invoker = CommandInvoker()
    try:
        command = CommandFactory.create_command(options.command, WorkbenchReceiver(workbench), options)
        return invoker.execute_command(command)
    except ParseError as e:
        ColorPrinter.error(f"Parse error: {e}")
        return EXIT_USAGE
    except (ValidationError, FileNotFoundError) as e:
        ColorPrinter.error(str(e))
        return EXIT_USAGE
    except WorkbenchError as e:
        logging.error(f"{options.command} failed: {e}")
        ColorPrinter.error(str(e))
        return EXIT_FAIL
