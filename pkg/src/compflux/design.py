"""Feasibility pipeline for a composite flux qubit of N rf-SQUIDs.

device -> Numerov splitting -> Ising map -> block RG -> bias-precision bound,
reset time and size checks.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
import math

from .capacitance import INDUCTANCE_PER_LENGTH
from .coupling import map_to_ising, required_mutual_for_R
from .errors import InfeasibleDesign
from .ising_rg import IsingParams, k_step_ratios, rg_flow
from .noise import NoiseBudget, assemble_budget
from .rfsquid import RfSquidParams, bias_error_energy, numerov_spectrum, solve_delta_phi
from .units import CONST

DEFAULT_MARGIN = 10.0
COHERENCE_LENGTH = 10e-6  # l_C (m)
DIFFRACTION_ANGLE = 1e-4  # theta_d (rad)
SIZE_LIMIT = 0.03  # "a few cm"


@dataclass(frozen=True)
class GeometryCheck:
    loop_length: float
    total_length: float
    coherence_limit: float
    size_limit: float
    passed: bool


def geometry_check(L, N, preset="coax", l_C=COHERENCE_LENGTH, theta_d=DIFFRACTION_ANGLE,
                   size_limit=SIZE_LIMIT):
    if not (L > 0 and N >= 1 and l_C > 0 and theta_d > 0):
        raise ValueError("geometry inputs must be positive")
    loop = L / INDUCTANCE_PER_LENGTH[preset]
    total = N * loop
    limit = l_C / theta_d
    return GeometryCheck(loop_length=loop, total_length=total, coherence_limit=limit,
                         size_limit=size_limit, passed=total < min(limit, size_limit))


def rg_steps_for(N):
    return max(0, math.ceil(math.log2(N)))


def phi_err_bound(delta, delta_phi, L, h_ratio, eps_ratio, margin=DEFAULT_MARGIN):
    """Largest phi_err (Wb) with margin * eps'' < h''.

    eps = (delta_phi / L) phi_err / 2 and h = delta / 2 before renormalization.
    """
    return h_ratio * delta * L / (margin * eps_ratio * delta_phi)


def single_squid_requirement(L, delta, beta, margin=1.0):
    """phi_err bound (phi0 units) for one SQUID from margin * E_err < delta."""
    dphi = solve_delta_phi(RfSquidParams(L=L, C=1.0, beta=beta))
    return phi_err_bound(delta, dphi, L, 1.0, 1.0, margin) / CONST.phi0


@dataclass(frozen=True)
class DesignReport:
    device: RfSquidParams
    N: int
    M: float
    margin: float
    delta: float
    E_err: float
    delta_phi: float
    ising: IsingParams
    rg_steps: int
    h_ratio: float
    eps_ratio: float
    delta_renorm: float
    eps_renorm: float
    phi_err_bound: float  # phi0 units
    phi_err_ok: bool
    reset_time: float
    geometry: GeometryCheck
    noise: NoiseBudget = None
    notes: tuple = field(default_factory=tuple)

    @property
    def R(self):
        return self.ising.R


def analyze(device, N, M=None, phi_err=None, margin=DEFAULT_MARGIN, noise=(), R_target=None,
            preset="coax", require_ferromagnetic=False, spectrum_kwargs=None):
    """Run the full chain for ``device`` repeated N times with mutual inductance M.

    Give either M (H) or R_target (M is then chosen to make h/J = R_target).
    ``phi_err`` (Wb) overrides the device's bias error.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if phi_err is not None:
        device = replace(device, phi_err=phi_err)
    notes = ["reset time uses Planck's constant: t = h_planck / delta''"]
    spec = numerov_spectrum(device, **(spectrum_kwargs or {}))
    delta = spec.delta
    E_err = bias_error_energy(device)
    if M is None:
        if R_target is None:
            raise ValueError("give M or R_target")
        M = required_mutual_for_R(device.L, N, delta, R_target)
    ising = map_to_ising(device.L, M, N, delta, E_err)
    if require_ferromagnetic and ising.R >= 1:
        raise InfeasibleDesign(f"R = {ising.R:.4g} is not in the ferromagnetic phase")

    k = rg_steps_for(N)
    if N != 2 ** k:
        notes.append(f"N = {N} is not a power of two; {k} block steps applied")
    h_ratio, eps_ratio = k_step_ratios(ising.R, k)
    traj = rg_flow(ising, k)
    final = traj.final
    bound = phi_err_bound(delta, spec.delta_phi, device.L, h_ratio, eps_ratio, margin)
    budget = None
    if noise:
        budget = assemble_budget(noise, bound / CONST.phi0)
    delta_renorm = delta * h_ratio
    return DesignReport(
        device=device,
        N=N,
        M=M,
        margin=margin,
        delta=delta,
        E_err=E_err,
        delta_phi=spec.delta_phi,
        ising=ising,
        rg_steps=k,
        h_ratio=h_ratio,
        eps_ratio=eps_ratio,
        delta_renorm=delta_renorm,
        eps_renorm=final.eps,
        phi_err_bound=bound / CONST.phi0,
        phi_err_ok=abs(device.phi_err) < bound,
        reset_time=CONST.h_planck / delta_renorm,
        geometry=geometry_check(device.L, N, preset),
        noise=budget,
        notes=tuple(notes),
    )


def _analyze_kwargs(kw):
    return analyze(**kw)


def sweep(cases, threads=1):
    """analyze over a list of keyword dicts; results keep input order."""
    cases = list(cases)
    if threads <= 1 or len(cases) < 2:
        return [analyze(**kw) for kw in cases]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_analyze_kwargs, cases))
