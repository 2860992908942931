"""Regenerate tests/golden/*.json from the current CLI.

Only run this after checking by hand that a report change is intended;
the golden tests exist to catch unintended drift.
"""

import pathlib

from exactquant.cli import main

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"

COMMANDS = {
    "quantise_verify_t2.json": ["quantise-verify", "--dim", "1", "--f", "t^2/2"],
    "twisted_derham_t3.json": ["twisted-derham", "--dim", "1", "--f", "t^3/3", "--cutoff", "8"],
    "quad_regression.json": ["quad-regression"],
}


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in COMMANDS.items():
        code = main(argv + ["--no-timing", "--out", str(GOLDEN / name)])
        print(f"{name}: exit {code}")
