#!/usr/bin/env python3
"""Run every built-in preset and write its outputs under one directory.

Usage:
    python scripts/render_figures.py [--out DIR] [--format csv,pgm] [--gamma G]

Each preset lands in DIR/<preset>/ next to a scenario.txt echo of the
resolved configuration, so a directory produced here can be re-run with
`simulate DIR/<preset>/scenario.txt`.
"""

import argparse
import sys
import time
from pathlib import Path

from ballistic.cli import PRESETS, load_scenario, run_scenario, write_outputs


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="figures", help="output root (default: figures)")
    parser.add_argument("--format", default="csv,pgm", help="comma list of csv,pgm")
    parser.add_argument("--gamma", type=float, default=1.0,
                        help="PGM brightness exponent, < 1 lifts faint fringes")
    args = parser.parse_args(argv)
    formats = tuple(s.strip() for s in args.format.split(",") if s.strip())

    root = Path(args.out)
    for name in sorted(PRESETS):
        scenario = load_scenario(name)
        started = time.perf_counter()
        result = run_scenario(scenario)
        elapsed = time.perf_counter() - started
        written = write_outputs(result, root / name, formats, gamma=args.gamma)
        print(f"{name}: {elapsed:.2f}s, {len(written)} files -> {root / name}")
        for path in written:
            print(f"  {path.name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
