"""phi_err requirement over a (C, polarization) grid for N = 4 loops of 800 pH."""
import argparse
from pathlib import Path

from compflux.cli import emit_curve
from compflux.design import sweep
from compflux.ising_rg import polarization_to_R
from compflux.rfsquid import BETA_QUARTER_FLUX, RfSquidParams
from compflux.units import energy_J_to_ueV


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    C_values = [5e-15, 10e-15, 20e-15, 50e-15, 100e-15]
    P_values = [0.8, 0.85, 0.9, 0.95]
    grid = [(C, P) for C in C_values for P in P_values]
    cases = [dict(device=RfSquidParams(800e-12, C, BETA_QUARTER_FLUX), N=4, R_target=polarization_to_R(P))
             for C, P in grid]
    reports = sweep(cases, threads=args.threads)
    rows = {
        "C_fF": [C * 1e15 for C, _ in grid],
        "P": [P for _, P in grid],
        "R": [r.R for r in reports],
        "delta_ueV": [energy_J_to_ueV(r.delta) for r in reports],
        "M_over_L": [r.M / r.device.L for r in reports],
        "phi_err_bound_phi0": [r.phi_err_bound for r in reports],
        "reset_time_ns": [r.reset_time * 1e9 for r in reports],
    }
    emit_curve(rows, args.out / "design_sweep.csv")
    for (C, P), r in zip(grid, reports):
        print(f"C {C * 1e15:5.0f} fF  P {P:.2f}  R {r.R:.3f}  bound {r.phi_err_bound:.2e} phi0  "
              f"reset {r.reset_time * 1e9:.3f} ns")


if __name__ == "__main__":
    main()
