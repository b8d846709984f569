"""Run every suite of configs/flagship.json and print the verdict table."""

import argparse
import sys
from pathlib import Path

from wapprox import cli

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(ROOT / "results" / "flagship"))
    ap.add_argument("--grid-scale", type=float, default=1.0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    return cli.main(["verify", str(ROOT / "configs" / "flagship.json"), "--out", args.out,
                     "--grid-scale", str(args.grid_scale), "--jobs", str(args.jobs)])


if __name__ == "__main__":
    sys.exit(main())
