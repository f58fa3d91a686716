"""Residual table for the z^2 symbol presets across grid sizes.

usage: python3 scripts/z2_family_demo.py [--s 0.6] [--lam 1.5]
"""

import argparse

from conjsym.shiftmodels import (
    PowerShiftModel,
    constant_phase_symbol,
    intertwine_check,
    lambda_drift_symbol,
    phi_residuals,
    sincos_symbol,
    z2_identity_residuals,
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--s", type=float, default=0.6)
    ap.add_argument("--lam", type=float, default=1.5)
    args = ap.parse_args()

    print(f"{'n':>5} {'preset':>14} {'max residual':>13} {'column norm':>12} {'|phi11|-|phi22|':>16} {'intertwine':>11}")
    for n in (8, 16, 32, 64, 128):
        m = PowerShiftModel(n, 2)
        presets = {
            "constant": constant_phase_symbol(m),
            "sincos": sincos_symbol(m),
            "lambda-drift": lambda_drift_symbol(m, args.s, args.lam),
        }
        inter = intertwine_check(m)
        for name, phi in presets.items():
            res = phi_residuals(m, phi).max()
            ids = z2_identity_residuals(phi)
            print(f"{n:5d} {name:>14} {res:13.2e} {ids['column_norm']:12.2e} {ids['diagonal_modulus']:16.2e} {inter:11.2e}")


if __name__ == "__main__":
    main()
