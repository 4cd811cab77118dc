"""Energy scales, splitting and bias error for the nominal 800 pH loop at C = 10 and 100 fF."""
import argparse
from pathlib import Path

from compflux.cli import emit_curve
from compflux.rfsquid import BETA_QUARTER_FLUX, RfSquidParams, delta_uncertainty, energies, numerov_spectrum
from compflux.units import PHI0, energy_J_to_ueV as ueV


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    rows = {k: [] for k in ("C_fF", "E_J", "E_C", "E_L", "E_err", "delta", "delta_beta_lo", "delta_beta_hi")}
    for C in (10e-15, 100e-15):
        dev = RfSquidParams(L=800e-12, C=C, beta=BETA_QUARTER_FLUX, phi_err=1e-4 * PHI0)
        en = energies(dev)
        spec = numerov_spectrum(dev)
        band = delta_uncertainty(dev)
        vals = [C * 1e15, ueV(en.E_J), ueV(en.E_C), ueV(en.E_L), ueV(spec.E_err), ueV(spec.delta),
                ueV(band["beta-"]), ueV(band["beta+"])]
        for k, v in zip(rows, vals):
            rows[k].append(v)
        print(f"C = {C * 1e15:5.0f} fF  E_J {vals[1]:7.2f}  E_C {vals[2]:6.3f}  E_L {vals[3]:7.2f}  "
              f"E_err {vals[4]:.3f}  delta {vals[5]:.3f} ueV  (beta +-1%: {vals[6]:.2f}..{vals[7]:.2f})")
    emit_curve(rows, args.out / "device_table.csv")


if __name__ == "__main__":
    main()
