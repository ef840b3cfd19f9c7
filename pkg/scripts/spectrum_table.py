#!/usr/bin/env python3
"""Print the oscillator and Coulomb spectra, optionally cross-checked
against the shooting-method solver (slow, a few seconds per state)."""

import argparse
import sys

from kgconformal.core import natural_units
from kgconformal import coulomb as cb
from kgconformal import oscillator as ho
from kgconformal.shooting import shooting_eigenvalue


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--omega", type=float, default=1.0)
    ap.add_argument("--alpha", type=float, default=0.0072973525693)
    ap.add_argument("--nmax", type=int, default=4)
    ap.add_argument("--check-shooting", action="store_true")
    args = ap.parse_args()

    units = natural_units()
    osc = ho.OscillatorModel(omega=args.omega, units=units)
    print(f"oscillator (Omega = {args.omega}):")
    print(f"  {'n':>2s}  {'degeneracy':>10s}  {'E_n':>18s}")
    for n in range(args.nmax + 1):
        deg = (n + 1) * (n + 2) // 2
        print(f"  {n:2d}  {deg:10d}  {ho.energy(osc, n):18.15f}")

    model = cb.CoulombModel(alpha=args.alpha, units=units)
    print(f"\ncoulomb (alpha = {args.alpha}):")
    header = f"  {'n':>2s} {'l':>2s}  {'E_nl':>20s}  {'binding':>13s}"
    if args.check_shooting:
        header += f"  {'shooting':>20s}  {'rel diff':>9s}"
    print(header)
    for n, l in ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)):
        state = cb.make_state(model, n, l)
        line = f"  {n:2d} {l:2d}  {state.energy:20.15f}  {state.energy - 1.0:13.6e}"
        if args.check_shooting:
            e_num = shooting_eigenvalue(n, l, args.alpha)
            line += f"  {e_num:20.15f}  {abs(e_num - state.energy) / state.energy:9.2e}"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
