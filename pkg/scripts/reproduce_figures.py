"""Write data for all six figure recipes and print a digest of each.

    python3 scripts/reproduce_figures.py --out out/figures
"""

import argparse
from pathlib import Path

from catweak.figures import RECIPES, RunConfig, format_summary, run


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("out/figures"))
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    args = parser.parse_args()
    for name in RECIPES:
        print(format_summary(run(RunConfig(scenario=name, out=args.out, fmt=args.format))))


if __name__ == "__main__":
    main()
