#!/usr/bin/env python3
"""Free energy vs frequency: numerical blocks against the linearized closed form.

Produces one CSV per (F, k) case in the large-splitting regime (delta = 20,
hbar = 1, g = 1), where the closed form tracks the numerics everywhere except
the crossover window around omega ~ delta/hbar.  Plot omega against
F_numeric / F_semiclassical from the CSVs to recreate the comparison curves.
"""

import argparse
import pathlib

from parafermi_jc.cli import main as cli_main

CASES = [
    {"F": 2, "k": 1},
    {"F": 3, "k": 1},
    {"F": 4, "k": 1},
    {"F": 2, "k": 2},
    {"F": 2, "k": 3},
]


def run(outdir: pathlib.Path, delta: float, hbar: float) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for case in CASES:
        F, k = case["F"], case["k"]
        n = k * (F - 1) + 3
        out = outdir / f"free_energy_F{F}_k{k}.csv"
        code = cli_main([
            "semiclassical-compare",
            "--F", str(F), "--k", str(k), "--n", str(n),
            "--delta", str(delta), "--g", "1.0", "--hbar", str(hbar),
            "--omega-min", "0.5", "--omega-max", "80", "--omega-count", "161",
            "--omega-scale", "log",
            "--out", str(out),
        ])
        if code != 0:
            raise SystemExit(code)
        print(f"wrote {out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="data/free_energy", type=pathlib.Path)
    ap.add_argument("--delta", default=20.0, type=float)
    ap.add_argument("--hbar", default=1.0, type=float)
    args = ap.parse_args()
    run(args.outdir, args.delta, args.hbar)
