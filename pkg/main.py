"""
X Calculus Workbench
====================

Command-line entry point: parse, reduce and type nets of the X sequent
calculus, interpret lambda terms as nets, and reproduce the witness
reduction and expansion results.

Usage:
    python main.py reduce "<y.b> a^ + x^ <z.c>" --graph
    python main.py check corpus/peirce/peirce.json
    python main.py demo counterexample-1
"""

import sys

from app.workbench_cli import main


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
