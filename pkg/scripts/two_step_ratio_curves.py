"""h''/h and eps''/eps after two block steps on R = 0.05..1.5."""
import argparse
from pathlib import Path

from compflux.cli import emit_curve
from compflux.ising_rg import fig_f1_curves, two_step_ratios


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    emit_curve(fig_f1_curves(), args.out / "two_step_ratios.csv")
    for R in (0.57, 0.83, 1.0):
        h, e = two_step_ratios(R)
        print(f"R = {R:4.2f}: h''/h = {h:.4f}  eps''/eps = {e:.4f}  ratio = {h / e:.4f}")


if __name__ == "__main__":
    main()
