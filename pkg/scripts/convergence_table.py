"""Write CSV convergence tables for every registered check."""

import argparse
from pathlib import Path

from holocone.verify import CHECKS, convergence_table, table_csv

DEFAULT_SIZES = {
    "rank1-beta": [2, 4, 8, 16, 32, 64],
    "sym2-minktype-eigen": [4, 8, 16, 32],
    "sym2-minktype-cartesian": [16, 32, 64, 128],
    "spin3-minktype-eigen": [4, 8, 16, 32],
    "sym2-gamma": [4, 8, 16, 32],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="tables")
    ap.add_argument("--check", action="append", choices=sorted(CHECKS))
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for check in args.check or sorted(CHECKS):
        path = out / f"{check}.csv"
        path.write_text(table_csv(convergence_table(check, DEFAULT_SIZES[check])))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
