"""Equivalence audit over random spectra with prescribed multiplicities.

Prints, per unitary, the lattice size, whether every spectral subspace was
left invariant by all sampled conjugations, and how many random non-spectral
subspaces were moved.

usage: python3 scripts/hyperinvariance_audit.py [--trials 20] [--seed 0]
"""

import argparse
import time

import numpy as np

from conjsym.conjfamily import parametrize
from conjsym.hyperinv import equivalence_audit
from conjsym.linalg import unitary_with_spectrum


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--member-samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    total_inconclusive = 0
    t0 = time.perf_counter()
    for k in range(args.trials):
        d = int(rng.integers(2, 5))
        mults = rng.integers(1, 4, size=d)
        args_ = np.sort(rng.choice(64, size=d, replace=False)) * (2 * np.pi / 64)
        u = unitary_with_spectrum(np.repeat(np.exp(1j * args_), mults), rng)
        rep = equivalence_audit(parametrize(u), args.samples, int(rng.integers(2**31)), args.member_samples)
        witnesses = sum(e["verdict"] == "witness" for e in rep.non_lattice)
        worst_lattice = max(e["max_conjugation_defect"] for e in rep.lattice)
        total_inconclusive += rep.inconclusive
        print(
            f"trial {k:3d}  n={rep.n:2d} mult={mults.tolist()}  lattice={len(rep.lattice):3d} "
            f"pass={rep.lattice_pass}  max lattice defect={worst_lattice:.1e}  "
            f"witnesses={witnesses}/{len(rep.non_lattice)}"
        )
    print(f"inconclusive total: {total_inconclusive}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
