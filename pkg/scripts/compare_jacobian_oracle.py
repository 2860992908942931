"""Compare Koszul H^0 with the Groebner-basis Jacobian dimension on random potentials.

Also reports what a single degree truncation (gap 0) would have returned, which
is where degenerate leading forms of the partials show up. Needs sympy.

    python scripts/compare_jacobian_oracle.py --count 60 --seed 0
"""

import argparse
import pathlib
import random
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))

from oracles import jacobian_dim_groebner  # noqa: E402

from exactquant.dcrit import koszul_cohomology  # noqa: E402
from exactquant.sampling import random_potential  # noqa: E402


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cutoff", type=int, default=6)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    finite = wrong = naive_wrong = 0
    for _ in range(args.count):
        m = rng.choice([1, 2])
        f = random_potential(m, rng, 4, 4)
        names = [f"y{i}" for i in range(1, m + 1)]
        mu = jacobian_dim_groebner(f, names)
        if mu is None:
            continue
        finite += 1
        got = koszul_cohomology(m, f, args.cutoff, names).dims
        naive = koszul_cohomology(m, f, args.cutoff, names, gap=0).dims
        if got != [0] * m + [mu]:
            wrong += 1
            print("MISMATCH", m, f, "mu", mu, "koszul", got)
        if naive[-1] != mu:
            naive_wrong += 1
    print(f"{finite} finite cases: {wrong} mismatches, single truncation wrong in {naive_wrong}")
    return 1 if wrong else 0


if __name__ == "__main__":
    sys.exit(main())
