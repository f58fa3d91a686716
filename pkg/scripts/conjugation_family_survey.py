"""Sample the conjugation family of Haar unitaries and report residual statistics.

usage: python3 scripts/conjugation_family_survey.py [--count 200] [--members 10]
"""

import argparse
import time

import numpy as np

from conjsym.antilinear import compose, csymmetric_residual, involution_defect, isometry_defect
from conjsym.conjfamily import factor_unitary, member_from_commutant, parametrize, sample_member
from conjsym.linalg import fro, haar_unitary


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--members", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    rows = []
    t0 = time.perf_counter()
    for _ in range(args.count):
        n = int(rng.integers(2, 17))
        u = haar_unitary(n, rng)
        p = parametrize(u)
        sampled = [sample_member(p, rng) for _ in range(args.members)]
        j1, j2 = factor_unitary(u)
        direct = member_from_commutant(u, rng) if n <= 8 else None
        rows.append(
            (
                n,
                max(csymmetric_residual(u, c) for c in sampled),
                max(max(involution_defect(c), isometry_defect(c)) for c in sampled),
                fro(compose(j1, j2) - u),
                np.nan if direct is None else csymmetric_residual(u, direct),
            )
        )
    arr = np.array(rows, dtype=float)
    print(f"{args.count} unitaries, {args.members} members each, {time.perf_counter() - t0:.2f}s")
    for name, col in [("|CUC - U*|", 1), ("involution/isometry", 2), ("|J1 J2 - U|", 3), ("commutant route", 4)]:
        vals = arr[:, col][~np.isnan(arr[:, col])]
        print(f"  {name:>20}: median {np.median(vals):.2e}  max {np.max(vals):.2e}")


if __name__ == "__main__":
    main()
