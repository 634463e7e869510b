"""
isosym - main entry point.

Runs the command-line interface; see ``src/cli/main.py`` for the
subcommands. Without arguments it classifies the 2x2 Jordan block as a
short demonstration.
"""

import sys

from src.algorithms import classify_operator
from src.cli import main as cli_main
from src.models import CMatrix


def demo() -> None:
    """Classify J = [[1,1],[0,1]] and print its minimal orders."""
    J = CMatrix.from_rows([[1, 1], [0, 1]])
    result = classify_operator(J)

    print("=" * 80)
    print("isosym - Jordan block demonstration")
    print("=" * 80)
    print(J)
    print(f"Minimal isometry order: {result.minimal_isometry_order}")
    print(f"Minimal symmetry order: {result.minimal_symmetry_order}")
    print(f"Isosymmetry frontier:   {result.pareto_frontier}")
    print("=" * 80)
    print("Run `python main.py --help` for the check/gen/verify/search commands.")


if __name__ == "__main__":
    if len(sys.argv) > 1:
        raise SystemExit(cli_main(sys.argv[1:]))
    demo()
