"""Single rf-SQUID: double-well potential, flux minima, tunnel splitting.

The Hamiltonian in units of the charging energy E_C is

    h = -d^2/dtheta^2 + alpha*theta^2 + 2*alpha*beta*cos(theta),

with theta = 2*pi*phi/phi0 and alpha = E_L/E_C. The two lowest levels are
found by parity-resolved Numerov shooting on [0, theta_max] with a
Dirichlet wall at theta_max.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .errors import (
    GridTooCoarse,
    NoConvergence,
    NoDoubleWell,
    PerturbationInvalid,
    SingularSensitivity,
)
from .units import CONST, charging_energy, inductive_energy

DEFAULT_GRID_STEP = math.pi / 100
DEFAULT_THETA_MAX = 2 * math.pi
SCAN_STEP = 0.05
SCAN_HEADROOM = 20.0
BISECT_RTOL = 1e-10
# |phi_err| beyond this fraction of phi0 breaks the linear bias-error estimate.
MAX_PHI_ERR_FRACTION = 0.01

BETA_QUARTER_FLUX = math.sqrt(2) * math.pi / 4  # gives delta_phi = phi0/4
BETA_THIRD_FLUX = 2 * math.pi / (3 * math.sqrt(3))  # gives delta_phi = phi0/3


@dataclass(frozen=True)
class RfSquidParams:
    L: float
    C: float
    beta: float
    phi_err: float = 0.0

    def __post_init__(self):
        if not (self.L > 0 and self.C > 0 and self.beta > 0):
            raise ValueError(f"L, C and beta must be positive, got {self}")

    @property
    def i_c(self):
        return self.beta * CONST.phi0 / (2 * math.pi * self.L)

    @classmethod
    def from_critical_current(cls, L, C, i_c, phi_err=0.0):
        return cls(L=L, C=C, beta=2 * math.pi * L * i_c / CONST.phi0, phi_err=phi_err)


@dataclass(frozen=True)
class RfSquidEnergies:
    E_J: float
    E_C: float
    E_L: float
    alpha: float


@dataclass(frozen=True)
class RfSquidSpectrum:
    levels: tuple  # dimensionless, units of E_C
    delta: float
    delta_phi: float
    barrier: float
    E_err: float


def energies(params):
    E_L = inductive_energy(params.L)
    E_C = charging_energy(params.C)
    E_J = params.i_c * CONST.phi0 / (2 * math.pi)
    return RfSquidEnergies(E_J=E_J, E_C=E_C, E_L=E_L, alpha=E_L / E_C)


def potential(phi, params):
    """U(phi) = phi^2/2L + E_J cos(2 pi (phi + phi_err)/phi0), in joules."""
    E_J = energies(params).E_J
    phi = np.asarray(phi, dtype=float)
    return phi ** 2 / (2 * params.L) + E_J * np.cos(2 * math.pi * (phi + params.phi_err) / CONST.phi0)


def _minima_root(beta):
    """Positive root x of x = beta*sin(x), x = pi*delta_phi/phi0."""
    if beta <= 1:
        raise NoDoubleWell(f"beta = {beta} <= 1 has a single well")
    f = lambda x: x - beta * math.sin(x)
    return brentq(f, 1e-300, math.pi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)


def solve_delta_phi(params):
    """Separation of the two flux minima (Wb)."""
    return _minima_root(params.beta) * CONST.phi0 / math.pi


def flux_minima(params):
    half = solve_delta_phi(params) / 2
    return -half, half


def delta_phi_sensitivity(params):
    """(d delta_phi / delta_phi) / (d beta / beta) from implicit differentiation."""
    x = _minima_root(params.beta)
    denom = 1.0 - params.beta * math.cos(x)
    if abs(denom) < np.finfo(float).eps:
        raise SingularSensitivity(f"1 - beta cos x = {denom:g} at beta = {params.beta}")
    return params.beta * math.sin(x) / denom / x


def barrier_height(params):
    """Exact U(0) - U(delta_phi/2) at phi_err = 0."""
    x = _minima_root(params.beta)
    en = energies(params)
    # U(delta_phi/2) in reduced form: theta = x at the minimum.
    return en.E_J - (en.E_L * x ** 2 + en.E_J * math.cos(x))


def barrier_height_asymptotic(params):
    """Large-beta estimate 2 E_J (1 - pi^2 / 4 beta)."""
    return 2 * energies(params).E_J * (1 - math.pi ** 2 / (4 * params.beta))


def bias_error_energy(params):
    """Semi-classical well asymmetry E_err = (delta_phi / L) * phi_err."""
    if abs(params.phi_err) >= MAX_PHI_ERR_FRACTION * CONST.phi0:
        raise PerturbationInvalid(
            f"|phi_err| = {abs(params.phi_err) / CONST.phi0:g} phi0 is not << phi0"
        )
    if params.phi_err == 0:
        return 0.0
    return solve_delta_phi(params) / params.L * params.phi_err


def two_level_model(delta, e_err):
    """Two-state model H = -(delta/2) sx - (e_err/2) sz of the biased double well.

    Returns ((E_ground, E_excited), ground_state, error_probability) where the
    ground state is (psi_left, psi_right), normalized.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    r = math.hypot(delta, e_err)
    v = np.array([delta, r - e_err])
    return (-r / 2, r / 2), v / np.linalg.norm(v), (e_err / delta) ** 2


# --------------------------------------------------------------------------
# Numerov shooting

def _reduced_potential(theta, alpha, beta):
    return alpha * theta ** 2 + 2 * alpha * beta * np.cos(theta)


def _shoot(E, V, dt, parity):
    """Integrate psi'' = (V - E) psi outward from theta = 0.

    ``E`` may be an array; returns psi at the last grid point (only its sign
    is meaningful) for each energy.
    """
    E = np.atleast_1d(np.asarray(E, dtype=float))
    c = dt * dt / 12.0
    f = 1.0 + c * (E[:, None] - V[None, :])
    if parity == "even":
        prev = np.ones_like(E)
        cur = (6.0 - 5.0 * f[:, 0]) / f[:, 1]
    else:
        prev = np.zeros_like(E)
        cur = np.full_like(E, dt)
    for k in range(1, V.size - 1):
        nxt = ((12.0 - 10.0 * f[:, k]) * cur - f[:, k - 1] * prev) / f[:, k + 1]
        prev, cur = cur, nxt
        big = np.abs(cur) > 1e150
        if big.any():
            prev = np.where(big, prev / 1e150, prev)
            cur = np.where(big, cur / 1e150, cur)
    return cur


def _grid(grid_step, theta_max):
    n = int(round(theta_max / grid_step))
    if n < 4:
        raise ValueError("theta_max must span several grid steps")
    theta = np.linspace(0.0, theta_max, n + 1)
    return theta, theta[1] - theta[0]


def _bisect(E_lo, E_hi, s_lo, V, dt, parity):
    while E_hi - E_lo > BISECT_RTOL * max(abs(E_lo), abs(E_hi), 1.0):
        mid = 0.5 * (E_lo + E_hi)
        s_mid = np.sign(_shoot(mid, V, dt, parity)[0])
        if s_mid == 0:
            return mid
        if s_mid == s_lo:
            E_lo = mid
        else:
            E_hi = mid
    return 0.5 * (E_lo + E_hi)


def _parity_levels(alpha, beta, parity, count, grid_step, theta_max):
    theta, dt = _grid(grid_step, theta_max)
    V = _reduced_potential(theta, alpha, beta)
    E_lo = float(V.min())
    E_hi = float(V[0]) + SCAN_HEADROOM
    # Beyond the wall height the box, not the potential, sets the levels.
    E_ceiling = float(V[-1])
    roots = []
    start = E_lo
    while len(roots) < count:
        stop = min(E_hi, E_ceiling)
        if stop <= start:
            raise NoConvergence(
                f"found {len(roots)} of {count} {parity} levels below the wall at {E_ceiling:g}"
            )
        grid_E = np.arange(start, stop + SCAN_STEP, SCAN_STEP)
        signs = np.sign(_shoot(grid_E, V, dt, parity))
        for i in range(grid_E.size - 1):
            if signs[i] != signs[i + 1] and signs[i] != 0:
                roots.append(float(_bisect(grid_E[i], grid_E[i + 1], signs[i], V, dt, parity)))
                if len(roots) == count:
                    break
        start = grid_E[-1]
        E_hi = E_hi + 2 * SCAN_HEADROOM
    return roots


def numerov_levels(alpha, beta, n_levels=2, grid_step=DEFAULT_GRID_STEP,
                   theta_max=DEFAULT_THETA_MAX):
    """Lowest ``n_levels`` eigenvalues of the reduced Hamiltonian.

    Works for any beta >= 0 (beta = 0 is the harmonic oscillator with
    levels (2n+1) sqrt(alpha)).
    """
    n_even = (n_levels + 1) // 2
    n_odd = n_levels // 2
    even = _parity_levels(alpha, beta, "even", n_even, grid_step, theta_max)
    odd = _parity_levels(alpha, beta, "odd", n_odd, grid_step, theta_max) if n_odd else []
    return tuple(float(x) for x in sorted(even + odd))


def numerov_spectrum(params, grid_step=DEFAULT_GRID_STEP, theta_max=DEFAULT_THETA_MAX,
                     n_levels=2, check_grid=True):
    if params.beta <= 1:
        raise NoDoubleWell(f"beta = {params.beta} <= 1 has a single well")
    if grid_step <= 0 or theta_max < 2 * math.pi:
        raise ValueError("need grid_step > 0 and theta_max >= 2 pi")
    en = energies(params)
    levels = numerov_levels(en.alpha, params.beta, max(n_levels, 2), grid_step, theta_max)
    delta = (levels[1] - levels[0]) * en.E_C
    resolution = 10 * BISECT_RTOL * max(abs(levels[0]), abs(levels[1]), 1.0) * en.E_C
    if delta <= resolution:
        raise NoConvergence(f"splitting {delta:g} J is below the solver resolution {resolution:g} J")
    if check_grid:
        fine = numerov_levels(en.alpha, params.beta, 2, grid_step / 2, theta_max)
        delta_fine = (fine[1] - fine[0]) * en.E_C
        if abs(delta_fine - delta) > 0.01 * abs(delta):
            raise GridTooCoarse(
                f"halving the step moved delta by {abs(delta_fine / delta - 1):.2%}"
            )
    return RfSquidSpectrum(
        levels=levels,
        delta=delta,
        delta_phi=solve_delta_phi(params),
        barrier=barrier_height(params),
        E_err=bias_error_energy(params),
    )


def delta_uncertainty(params, rel=0.01, **kwargs):
    """Splitting at the nominal point and under +/- rel changes of alpha and beta.

    Each parameter is varied alone, as the tunnel splitting error band is
    quoted per parameter. Returns {label: delta}.
    """
    en = energies(params)
    out = {}
    for label, a, b in [
        ("nominal", en.alpha, params.beta),
        ("alpha-", en.alpha * (1 - rel), params.beta),
        ("alpha+", en.alpha * (1 + rel), params.beta),
        ("beta-", en.alpha, params.beta * (1 - rel)),
        ("beta+", en.alpha, params.beta * (1 + rel)),
    ]:
        lv = numerov_levels(a, b, 2, **kwargs)
        out[label] = (lv[1] - lv[0]) * en.E_C
    return out


def numerov_wavefunction(alpha, beta, energy, parity, grid_step=DEFAULT_GRID_STEP,
                         theta_max=DEFAULT_THETA_MAX):
    """Wavefunction on [-theta_max, theta_max] at an eigenvalue, L2-normalized.

    The divergent tail past the outer turning point (an artifact of the finite
    eigenvalue precision) is cut at its node-free minimum.
    """
    theta, dt = _grid(grid_step, theta_max)
    V = _reduced_potential(theta, alpha, beta)
    f = 1.0 + dt * dt / 12.0 * (energy - V)
    psi = np.zeros_like(theta)
    if parity == "even":
        psi[0] = 1.0
        psi[1] = (6.0 - 5.0 * f[0]) / f[1]
    else:
        psi[1] = dt
    for k in range(1, theta.size - 1):
        psi[k + 1] = ((12.0 - 10.0 * f[k]) * psi[k] - f[k - 1] * psi[k - 1]) / f[k + 1]
    turning = np.nonzero(V < energy)[0]
    if turning.size:
        t = turning[-1]
        cut = t + int(np.argmin(np.abs(psi[t:])))
        psi[cut:] = 0.0
    sign = 1.0 if parity == "even" else -1.0
    full_theta = np.concatenate([-theta[:0:-1], theta])
    full_psi = np.concatenate([sign * psi[:0:-1], psi])
    norm = math.sqrt(trapezoid(full_psi ** 2, full_theta))
    return full_theta, full_psi / norm


def bias_error_energy_matrix_element(params, grid_step=DEFAULT_GRID_STEP,
                                     theta_max=DEFAULT_THETA_MAX):
    """Quantum estimate E_err ~ i_c phi_err (<up|sin|up> - <down|sin|down>).

    With up/down = (g +/- e)/sqrt(2) the bracket is 2 <g|sin(theta)|e>.
    Cross-check for the semi-classical ``bias_error_energy``.
    """
    en = energies(params)
    lv = numerov_levels(en.alpha, params.beta, 2, grid_step, theta_max)
    th, g = numerov_wavefunction(en.alpha, params.beta, lv[0], "even", grid_step, theta_max)
    _, ex = numerov_wavefunction(en.alpha, params.beta, lv[1], "odd", grid_step, theta_max)
    overlap = abs(trapezoid(g * np.sin(th) * ex, th))
    return params.i_c * params.phi_err * 2 * overlap


def central_difference_levels(alpha, beta, n_levels=2, grid_step=DEFAULT_GRID_STEP,
                              theta_max=DEFAULT_THETA_MAX):
    """Dense 3-point finite-difference diagonalization on (-theta_max, theta_max).

    Independent oracle for the shooting solver; same wall, same step.
    """
    n = int(round(theta_max / grid_step))
    dt = theta_max / n
    theta = dt * np.arange(-n + 1, n)
    diag = 2.0 / dt ** 2 + _reduced_potential(theta, alpha, beta)
    off = -np.ones(theta.size - 1) / dt ** 2
    w = eigh_tridiagonal(diag, off, eigvals_only=True, select="i",
                         select_range=(0, n_levels - 1))
    return tuple(float(x) for x in w)
