"""Recompute the worked dimension examples and print them next to the quoted values.

Usage: python3 scripts/reproduce_table.py [--max-degree K] [--csv]
"""

import argparse
import sys

from homhoch.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=None)
    ap.add_argument("--csv", action="store_true")
    a = ap.parse_args()
    argv = ["reproduce"] + (["--max-degree", str(a.max_degree)] if a.max_degree else []) + (["--csv"] if a.csv else [])
    sys.exit(main(argv))
