"""Exact diagonalization of short open Ising chains with transverse and
longitudinal fields, plus an explicit check of the two-spin block projection.

Basis convention: bit i of the basis index is spin i+1 (least significant
bit first); bit value 0 is sigma^z = +1.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.linalg import eigh

from .errors import TooLarge
from .ising_rg import IsingParams, check_longitudinal, rg_step

MAX_SPINS = 14


@dataclass(frozen=True)
class ChainCouplings:
    """Couplings for the oracle only; unlike IsingParams, J = 0 is allowed."""
    J: float
    h: float
    eps: float = 0.0


@dataclass(frozen=True)
class SpinChainSpec:
    n_spins: int
    params: IsingParams
    boundary: str = "open"

    def __post_init__(self):
        if self.n_spins < 2:
            raise ValueError("need at least 2 spins")
        if self.n_spins > MAX_SPINS:
            raise TooLarge(f"{self.n_spins} spins exceeds the dense limit of {MAX_SPINS}")
        if self.boundary != "open":
            raise ValueError("only open boundaries are supported")


@dataclass(frozen=True)
class SpectrumResult:
    energies: np.ndarray
    ground_state: np.ndarray
    gap: float


@dataclass(frozen=True)
class ChainObservables:
    gap: float
    correlators: tuple  # C(1) .. C(n-1)
    magnetization: float  # mean <sigma^z>
    polarization: float  # sqrt(C(n-1)); the cat-state proxy
    E0: float
    E1: float


def _spin_z(n):
    idx = np.arange(2 ** n)
    return np.array([1 - 2 * ((idx >> i) & 1) for i in range(n)], dtype=float)


def build_hamiltonian(spec):
    n = spec.n_spins
    p = spec.params
    dim = 2 ** n
    z = _spin_z(n)
    diag = -p.J * np.sum(z[:-1] * z[1:], axis=0) - p.eps * np.sum(z, axis=0)
    H = np.diag(diag)
    idx = np.arange(dim)
    for i in range(n):
        H[idx, idx ^ (1 << i)] -= p.h
    return H


def diagonalize(spec, n_levels=None):
    H = build_hamiltonian(spec)
    if n_levels is None:
        w, v = eigh(H)
    else:
        w, v = eigh(H, subset_by_index=(0, n_levels - 1))
    return SpectrumResult(energies=w, ground_state=v[:, 0], gap=float(w[1] - w[0]))


def ground_state_observables(spec, n_levels=2):
    res = diagonalize(spec, n_levels=n_levels)
    n = spec.n_spins
    z = _spin_z(n)
    prob = res.ground_state ** 2
    corr = []
    for d in range(1, n):
        vals = [prob @ (z[i] * z[i + d]) for i in range(n - d)]
        corr.append(float(np.mean(vals)))
    mag = float(np.mean(z @ prob))
    return ChainObservables(
        gap=res.gap,
        correlators=tuple(corr),
        magnetization=mag,
        polarization=math.sqrt(max(corr[-1], 0.0)),
        E0=float(res.energies[0]),
        E1=float(res.energies[1]),
    )


# --------------------------------------------------------------------------
# Block projection

_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SZ = np.diag([1.0, -1.0])


def intra_block_eigenvalues(J, h, eps, s):
    """lambda_{+/-,s} = +/- sqrt(h^2 + (sJ + eps)^2)."""
    r = math.sqrt(h * h + (s * J + eps) ** 2)
    return -r, r


def intra_block_matrix(J, h, eps, s):
    """Slave-spin Hamiltonian -h sx - (sJ + eps) sz with the master spin fixed at s."""
    return -h * _SX - (s * J + eps) * _SZ


def slave_ground_state(J, h, eps, s, exact=False):
    """Ground state |g_s> of the slave spin, basis (|+1>, |-1>).

    ``exact=False`` uses the first-order-in-eps amplitudes and normalization.
    """
    if exact:
        w, v = np.linalg.eigh(intra_block_matrix(J, h, eps, s))
        g = v[:, 0]
        return g if g[0] <= 0 else -g  # match the -h first-component sign
    if h <= 0:
        raise ValueError("first-order slave states need h > 0")
    r = math.hypot(h, J)
    if s == 1:
        second = J - r + eps * (1 - J / r)
        jr = J - r
    else:
        second = -(J + r - eps * (1 + J / r))
        jr = J + r
    D = h * h + jr * jr
    F = (1 + eps / r * jr * jr / D) / math.sqrt(D)
    return F * np.array([-h, second])


def slave_overlap(J, h, eps, exact=False):
    """alpha = <g_-1|g_1>; equals h / sqrt(h^2 + J^2) to first order."""
    return float(slave_ground_state(J, h, eps, -1, exact) @ slave_ground_state(J, h, eps, 1, exact))


def slave_sz(J, h, eps, s, exact=False):
    g = slave_ground_state(J, h, eps, s, exact)
    return float(g @ _SZ @ g) / float(g @ g)


def slave_sz_first_order(J, h, eps, s):
    """beta_s = s J/r * (1 + s eps h^2 / (J r^2)), r = sqrt(h^2 + J^2)."""
    r2 = h * h + J * J
    return s * J / math.sqrt(r2) * (1 + s * eps * h * h / (J * r2))


def four_spin_projector(J, h, eps, exact=False):
    """Isometry (to first order) from 2 master spins onto the 4-spin chain.

    Spins 1, 3 are slaves; 2, 4 are masters. Renormalized index: bit 0 is
    master 2, bit 1 is master 4.
    """
    g = {s: slave_ground_state(J, h, eps, s, exact) for s in (1, -1)}
    up = np.array([1.0, 0.0])
    dn = np.array([0.0, 1.0])
    master = {1: up, -1: dn}
    P = np.zeros((16, 4))
    for col, (s2, s4) in enumerate([(1, 1), (-1, 1), (1, -1), (-1, -1)]):
        # kron order is spin 4, 3, 2, 1 so that spin 1 is the least significant bit.
        P[:, col] = np.kron(np.kron(np.kron(master[s4], g[s4]), master[s2]), g[s2])
    return P


def renormalized_pair_hamiltonian(p, eps_bound=0.1):
    """2-spin open chain built from one ``rg_step``.

    The last renormalized spin has no following block, so it misses the
    eps J h^2 / r^3 field that the next block would feed back.
    """
    q = rg_step(p, eps_bound)
    r = math.hypot(p.h, p.J)
    boundary = p.eps * p.J * p.h ** 2 / r ** 3
    z = _spin_z(2)
    diag = -q.J * z[0] * z[1] - q.eps * z[0] - (q.eps - boundary) * z[1]
    H = np.diag(diag)
    idx = np.arange(4)
    for i in range(2):
        H[idx, idx ^ (1 << i)] -= q.h
    return H


@dataclass(frozen=True)
class ProjectionReport:
    max_eig_discrepancy: float
    projected_eigs: tuple
    renormalized_eigs: tuple
    additive_constant: float
    isometry_defect: float


def validate_block_projection(params, exact_states=False, eps_bound=0.1):
    check_longitudinal(params, eps_bound)
    J, h, eps = params.J, params.h, params.eps
    H4 = build_hamiltonian(SpinChainSpec(4, params))
    P = four_spin_projector(J, h, eps, exact_states)
    HR = P.T @ H4 @ P
    const = -2 * math.hypot(h, J)
    proj = np.linalg.eigvalsh(HR) - const
    ren = np.linalg.eigvalsh(renormalized_pair_hamiltonian(params, eps_bound))
    return ProjectionReport(
        max_eig_discrepancy=float(np.max(np.abs(proj - ren))),
        projected_eigs=tuple(float(x) for x in proj),
        renormalized_eigs=tuple(float(x) for x in ren),
        additive_constant=const,
        isometry_defect=float(np.max(np.abs(P.T @ P - np.eye(4)))),
    )
