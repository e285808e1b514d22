#!/usr/bin/env python3
"""Regenerate all figure data sets (CSV plus SVG) into ./figure_data/.

Covers the standard displays of the model: the tunneling-probability curve,
the vertex states on [0, pi] for several quantum scales, the low-lying energy
levels and gaps over the coupling, the first eigenfunctions at a few
couplings, and the stratum-projector expectations on a log coupling grid.
"""

import pathlib
import sys

from plaquette_qgauge.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "figure_data"

RUNS = [
    (["tunneling"], "tunneling"),
    (["spectrum", "--nu-tilde", "0:24:97", "--n-max", "8"], "spectrum"),
    (["projector-expectations"], "projector_expectations"),
]

T_SCALES = ["0.0078125", "0.03125", "0.125", "0.5"]  # 1/128, 1/32, 1/8, 1/2
for t in T_SCALES:
    for which in ("psi-plus", "psi-minus"):
        RUNS.append(
            (["states", "--state", which, "--hbar-beta2", t, "--grid", "513"],
             f"{which.replace('-', '_')}_t{t}")
        )

NU_TILDES = ["0", "3", "6", "12", "24"]
for nut in NU_TILDES:
    for level in range(4):
        RUNS.append(
            (["states", "--state", "xi", "--level", str(level), "--nu-tilde", nut,
              "--grid", "513"],
             f"xi{level}_nut{nut}")
        )


def run_all() -> int:
    OUT.mkdir(exist_ok=True)
    for args, stem in RUNS:
        for fmt, suffix in (("csv", "csv"), ("svg", "svg")):
            code = main([*args, "--format", fmt, "--out", str(OUT / f"{stem}.{suffix}")])
            if code != 0:
                print(f"failed ({code}): {args}", file=sys.stderr)
                return code
        print(f"wrote {stem}.csv / {stem}.svg")
    return 0


if __name__ == "__main__":
    sys.exit(run_all())
