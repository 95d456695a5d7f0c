#!/usr/bin/env python3
"""Write the three figure data grids as CSV files (default directory: out/):
two-player deviation curve, zero-sum guarantee surface, and the advantaged
game's defining curves."""

import argparse
import pathlib
import sys

from showdown.cli import main as cli_main


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dir", default="out")
    parser.add_argument("--grid", type=int, default=101)
    args = parser.parse_args(argv)

    out = pathlib.Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    for fig_id in (1, 2, 3):
        path = out / f"figure{fig_id}.csv"
        code = cli_main(
            ["figure", "--id", str(fig_id), "--grid", str(args.grid), "--out", str(path)]
        )
        if code != 0:
            return code
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
