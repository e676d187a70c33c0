"""CLI runner for the threshold tools.

Usage:
	python run_cli.py table --config A7+A1
	python run_cli.py certify --all
	python run_cli.py germ --builtin cusp
"""

import sys

from src.cli.cli import main


if __name__ == "__main__":
	sys.exit(main())
