"""compflux <subcommand> --config FILE --out DIR [--seed N] [--threads N]

Exit codes: 0 success, 2 configuration error, 3 numerical or validity failure.
"""
import argparse
import csv
import itertools
import math
from pathlib import Path
import sys

import numpy as np

from . import capacitance, coupling, design, eeem, ising_ed, ising_rg, noise, rfsquid
from .config import SCHEMAS, SUBCOMMANDS, display, parse_config
from .errors import CompfluxError, ConfigError
from .units import CONST, energy_J_to_ueV

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def fmt(x):
    """17 significant digits for floats, plain text otherwise."""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def emit_curve(series, path):
    """Write named equal-length columns as CSV (LF endings, header row)."""
    cols = list(series)
    if not cols:
        raise ValueError("no columns")
    lengths = {len(series[c]) for c in cols}
    if len(lengths) != 1:
        raise ValueError(f"columns have unequal lengths {sorted(lengths)}")
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(cols)
        for row in zip(*(series[c] for c in cols)):
            w.writerow([fmt(v) for v in row])
    return path


def write_report(path, cfg, results, notes=()):
    """Aligned text report: input echo (SI and display units), defaults, results."""
    schema = SCHEMAS[cfg.subcommand]
    lines = [f"compflux {cfg.subcommand}", f"seed = {cfg.seed}", "", "inputs"]
    width = max(len(k) for k in cfg.params)
    for k in schema:
        if k not in cfg.params:
            continue
        tag = "  (default)" if k in cfg.defaults_used else ""
        lines.append(f"  {k:<{width}}  {display(k, cfg.params[k], schema[k].dim)}{tag}")
    lines += ["", "results"]
    width = max(len(r[0]) for r in results) if results else 0
    for label, value, unit in results:
        lines.append(f"  {label:<{width}}  {fmt(value)} {unit}".rstrip())
    if notes:
        lines += ["", "notes"] + [f"  - {n}" for n in notes]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _device(p):
    return rfsquid.RfSquidParams(L=p["L"], C=p["C"], beta=p["beta"], phi_err=p["phi_err"])


def _grid(p):
    return {"grid_step": p["grid_step"], "theta_max": p["theta_max"]}


def _noise_specs(p):
    band = {"f_L": p["f_L"], "f_H": p["f_H"]}
    return [
        noise.NoiseSpec(kind="one_over_f", label="coupler_1_over_f", phi_n=p["phi_n"] / CONST.phi0,
                        exact_factors=p["exact_factors"], attenuation=p["coupler_attenuation"], **band),
        noise.mrt_spec(level=p["mrt_level"] / CONST.phi0),
        noise.NoiseSpec(kind="magnetometer_spectrum", label="squid_magnetometer", coeff=p["coeff"],
                        pickup_area=p["area"], attenuation=p["magnetometer_attenuation"], **band),
        noise.NoiseSpec(kind="thermal_inductor", label="thermal_environment", T=p["T"],
                        L_EM=p["L_EM"], attenuation=p["thermal_attenuation"]),
    ]


def run_rfsquid(cfg, out, args):
    p = cfg.params
    dev = _device(p)
    en = rfsquid.energies(dev)
    spec = rfsquid.numerov_spectrum(dev, n_levels=p["n_levels"], **_grid(p))
    ueV = energy_J_to_ueV
    row = {
        "E_J_ueV": [ueV(en.E_J)], "E_C_ueV": [ueV(en.E_C)], "E_L_ueV": [ueV(en.E_L)],
        "alpha": [en.alpha], "delta_phi_phi0": [spec.delta_phi / CONST.phi0],
        "barrier_ueV": [ueV(spec.barrier)], "E_err_ueV": [ueV(spec.E_err)],
        "delta_ueV": [ueV(spec.delta)],
    }
    emit_curve(row, out / "rfsquid.csv")
    emit_curve({"level": list(range(len(spec.levels))),
                "energy_ueV": [ueV(x * en.E_C) for x in spec.levels]}, out / "levels.csv")
    results = [(k.rsplit("_ueV", 1)[0], v[0], "ueV" if k.endswith("_ueV") else "")
               for k, v in row.items()]
    return results, []


def run_rg_flow(cfg, out, args):
    p = cfg.params
    traj = ising_rg.rg_flow(ising_rg.IsingParams(J=p["J"], h=p["h"], eps=p["eps"]), p["steps"])
    emit_curve({
        "step": list(range(len(traj.steps))),
        "spins_per_site": list(traj.spins_per_site),
        "J": [s.J for s in traj.steps], "h": [s.h for s in traj.steps],
        "eps": [s.eps for s in traj.steps], "R": [s.R for s in traj.steps],
    }, out / "rg_flow.csv")
    emit_curve(ising_rg.fig_f1_curves(), out / "fig_f1.csv")
    f = traj.final
    results = [("R_initial", traj.steps[0].R, ""), ("J_final", f.J, ""), ("h_final", f.h, ""),
               ("eps_final", f.eps, ""), ("R_final", f.R, "")]
    if traj.steps[0].R > 0:
        hr, er = ising_rg.k_step_ratios(traj.steps[0].R, p["steps"])
        results += [("h_ratio_closed_form", hr, ""), ("eps_ratio_closed_form", er, "")]
    return results, []


def ed_row(n, params):
    obs = ising_ed.ground_state_observables(ising_ed.SpinChainSpec(n, params))
    row = {"n": n, "J": params.J, "h": params.h, "eps": params.eps,
           "E0": obs.E0, "E1": obs.E1, "gap": obs.gap}
    for d, c in enumerate(obs.correlators, start=1):
        row[f"C{d}"] = c
    return row, obs


def run_ed(cfg, out, args):
    p = cfg.params
    params = ising_rg.IsingParams(J=p["J"], h=p["h"], eps=p["eps"])
    row, obs = ed_row(p["n_spins"], params)
    emit_curve({k: [v] for k, v in row.items()}, out / "ed.csv")
    results = [("E0", obs.E0, ""), ("E1", obs.E1, ""), ("gap", obs.gap, ""),
               ("magnetization", obs.magnetization, ""), ("polarization", obs.polarization, "")]
    results += [(f"C{d}", c, "") for d, c in enumerate(obs.correlators, start=1)]
    return results, []


def run_coupling(cfg, out, args):
    p = cfg.params
    M = p["M"] if p.get("M") is not None else coupling.required_mutual_for_R(
        p["L"], p["N"], p["delta"], p["R_target"])
    ising = coupling.map_to_ising(p["L"], M, p["N"], p["delta"], p["E_err"])
    results = [("M", M, "H"), ("M_over_L", M / p["L"], ""), ("J", ising.J, "J"),
               ("h", ising.h, "J"), ("eps", ising.eps, "J"), ("R", ising.R, "")]
    if p["N"] >= 2:
        model = coupling.CouplingModel(p["N"], p["L"], M)
        results.append(("first_order_inverse_error", coupling.first_order_inverse_error(model), ""))
    emit_curve({k: [v] for k, v, _ in results}, out / "coupling.csv")
    return results, []


def run_txline(cfg, out, args):
    p = cfg.params
    build = capacitance.silicon_line if p["substrate"] == "silicon" else capacitance.etched_line
    line = build(p["a"], C_J=p["C_J"], L_preset=p["preset"], d=p["d"])
    gap = capacitance.photon_gap(line)
    results = [("c_per_length", line.c_per, "F/m"),
               ("effective_capacitance", capacitance.effective_capacitance(line), "F"),
               ("loop_inductance", capacitance.loop_inductance(line), "H"),
               ("photon_gap_psi", gap.psi_branch, "J"), ("photon_gap_xi", gap.xi_branch, "J")]
    emit_curve({k: [v] for k, v, _ in results}, out / "txline.csv")
    return results, []


def _budget_rows(budget):
    return {"label": [c[0] for c in budget.contributions],
            "rms_phi0": [c[1] for c in budget.contributions]}


def run_noise(cfg, out, args):
    p = cfg.params
    budget = noise.assemble_budget(_noise_specs(p), p["required_phi_err"] / CONST.phi0)
    emit_curve(_budget_rows(budget), out / "noise_budget.csv")
    results = [(f"rms[{lab}]", v, "phi0") for lab, v in budget.contributions]
    results += [("worst", budget.worst, "phi0"), ("required", budget.required, "phi0"),
                ("margin", budget.margin, ""), ("passed", budget.passed, "")]
    return results, []


def run_eeem(cfg, out, args):
    p = cfg.params
    conf = eeem.EeemConfig(P=p["P"], s=p["s"])
    res = eeem.run_rounds(conf, p["outcomes"])
    q = res.qubit_state
    emit_curve({"round": list(range(1, len(res.relative_phases) + 1)),
                "outcome": list(p["outcomes"]),
                "relative_phase": list(res.relative_phases)}, out / "eeem.csv")
    results = [("zeta", conf.zeta, "rad"), ("probability", res.probability, ""),
               ("q0_re", q[0].real, ""), ("q0_im", q[0].imag, ""),
               ("q1_re", q[1].real, ""), ("q1_im", q[1].imag, "")]
    return results, []


def _design_results(r):
    res = [
        ("delta", r.delta, "J"), ("delta_ueV", energy_J_to_ueV(r.delta), "ueV"),
        ("E_err", r.E_err, "J"), ("delta_phi", r.delta_phi / CONST.phi0, "phi0"),
        ("M", r.M, "H"), ("M_over_L", r.M / r.device.L, ""),
        ("J", r.ising.J, "J"), ("h", r.ising.h, "J"), ("eps", r.ising.eps, "J"), ("R", r.R, ""),
        ("rg_steps", r.rg_steps, ""), ("h_ratio", r.h_ratio, ""), ("eps_ratio", r.eps_ratio, ""),
        ("delta_renorm", r.delta_renorm, "J"), ("eps_renorm", r.eps_renorm, "J"),
        ("phi_err_bound", r.phi_err_bound, "phi0"), ("phi_err_ok", r.phi_err_ok, ""),
        ("reset_time", r.reset_time, "s"),
        ("loop_length", r.geometry.loop_length, "m"), ("total_length", r.geometry.total_length, "m"),
        ("coherence_limit", r.geometry.coherence_limit, "m"), ("geometry_ok", r.geometry.passed, ""),
    ]
    if r.noise is not None:
        res += [("noise_worst", r.noise.worst, "phi0"), ("noise_ok", r.noise.passed, "")]
    return res


def _design_kwargs(p, C=None, R_target=None, M=None):
    dev = _device({**p, "C": p["C"] if C is None else C})
    return dict(device=dev, N=p["N"], M=M, R_target=R_target, margin=p["margin"],
                noise=tuple(_noise_specs(p)), preset=p["preset"],
                spectrum_kwargs=_grid(p))


def run_design(cfg, out, args):
    p = cfg.params
    r = design.analyze(**_design_kwargs(p, R_target=p.get("R_target"), M=p.get("M")))
    results = _design_results(r)
    emit_curve({k: [v] for k, v, _ in results}, out / "design.csv")
    if r.noise is not None:
        emit_curve(_budget_rows(r.noise), out / "noise_budget.csv")
    return results, list(r.notes)


def run_sweep(cfg, out, args):
    p = cfg.params
    grid = list(itertools.product(p["C"], p["R_target"]))
    cases = [_design_kwargs(p, C=C, R_target=R) for C, R in grid]
    reports = design.sweep(cases, threads=args.threads)
    rows = {"C": [C for C, _ in grid], "R_target": [R for _, R in grid]}
    for r in reports:
        for k, v, _ in _design_results(r):
            rows.setdefault(k, []).append(v)
    emit_curve(rows, out / "sweep.csv")
    best = max(reports, key=lambda r: r.phi_err_bound)
    results = [("cases", len(reports), ""), ("loosest_phi_err_bound", best.phi_err_bound, "phi0"),
               ("loosest_C", best.device.C, "F"), ("loosest_R", best.R, "")]
    return results, sorted({n for r in reports for n in r.notes})


HANDLERS = {
    "rfsquid": run_rfsquid, "rg-flow": run_rg_flow, "ed": run_ed, "coupling": run_coupling,
    "txline": run_txline, "noise": run_noise, "eeem": run_eeem, "design": run_design,
    "sweep": run_sweep,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="compflux", description="Composite flux-qubit feasibility tools")
    ap.add_argument("subcommand", choices=SUBCOMMANDS)
    ap.add_argument("--config", required=True, type=Path)
    ap.add_argument("--out", required=True, type=Path)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        text = args.config.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = parse_config(text, args.subcommand, seed=args.seed)
        args.out.mkdir(parents=True, exist_ok=True)
        results, notes = HANDLERS[args.subcommand](cfg, args.out, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CompfluxError, ArithmeticError, ValueError) as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    write_report(args.out / "report.txt", cfg, results, notes)
    print((args.out / "report.txt").read_text(encoding="utf-8"), end="")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
