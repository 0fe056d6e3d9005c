"""Spectral sweep experiment: Hausdorff distance to the target set by level.

For each symbol word, computes the Markov spectra of the level-n action
graphs and reports how fast the cumulative spectrum fills the target set
[-1/2, 0] u [1/2, 1].
"""
import argparse

from treespec import GRIG_TARGET, OmegaWord, spectrum_sweep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omegas", default=":012,:01,:02,:12,0:12")
    ap.add_argument("--max-level", type=int, default=10)
    args = ap.parse_args()

    for omega in args.omegas.split(","):
        sweep = spectrum_sweep(OmegaWord.parse(omega), args.max_level)
        print(f"omega = {omega}  target = {GRIG_TARGET}")
        for n in sorted(sweep.hausdorff_by_level):
            rep = sweep.reports[n]
            print(
                f"  level {n:2d}: {len(rep.eigenvalues):4d} eigenvalues, "
                f"all in target = {all(rep.in_target)}, "
                f"hausdorff = {sweep.hausdorff_by_level[n]:.5f}"
            )


if __name__ == "__main__":
    main()
