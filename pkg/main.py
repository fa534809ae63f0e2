"""
Main Script for detq
Runs the command line interface, e.g. ``python main.py verify-paper --case lattice``
"""

import sys

from src.apps.cli import main

if __name__ == "__main__":
    sys.exit(main())
