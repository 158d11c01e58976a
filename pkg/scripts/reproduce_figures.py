"""Regenerate every figure's data as CSV plus gnuplot scripts.

    python scripts/reproduce_figures.py --out figures/

Each dataset comes with a ``.manifest`` that records the exact command, so any
single file can be regenerated on its own.
"""

import argparse
import sys
from pathlib import Path

from negentropy_ur.cli import run

FIGURES = {
    "fock": ["sweep", "--family", "fock", "--param", "0:10:11"],
    "laplace": ["sweep", "--family", "laplace", "--param", "log:0.1:10:41"],
    "photon_added_coherent": ["sweep", "--family", "pac", "--param", "0:5:51"],
    "photon_added_squeezed": ["sweep", "--family", "pas", "--param", "log:0.1:10:41"],
    "cat": ["sweep", "--family", "cat", "--theta", "0", "--param", "0:5:101"],
    "photon_added_thermal": ["sweep", "--family", "pat", "--param", "0:20:41"],
}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--out", type=Path, default=Path("figures"))
    parser.add_argument("--count", type=int, default=2000, help="random states in the scatter")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)

    jobs = {name: cmd + ["--out", str(args.out / f"{name}.csv"), "--plotscript"]
            for name, cmd in FIGURES.items()}
    jobs["random"] = ["random", "--count", str(args.count), "--seed", str(args.seed), "--dim", "11",
                      "--out", str(args.out / "random.csv"),
                      "--cat-curve", str(args.out / "cat_curve.csv"), "--plotscript"]
    status = 0
    for name, cmd in jobs.items():
        code = run(cmd)
        print(f"{name:24s} exit {code}")
        status = max(status, code)
    return status


if __name__ == "__main__":
    sys.exit(main())
