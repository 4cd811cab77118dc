"""Magnetic energy of a chain of inductively coupled rf-SQUIDs and the map
from device quantities to Ising parameters.

The inductance matrix is L*A with A tridiagonal (1 on the diagonal, M/L on
the first off-diagonals). To first order in M/L its inverse B has -M/L on
the off-diagonals.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import RatioTooLarge
from .ising_rg import IsingParams
from .units import CONST

MAX_RATIO = 0.2


@dataclass(frozen=True)
class CouplingModel:
    n_squids: int
    L: float
    M: float

    def __post_init__(self):
        if self.n_squids < 2:
            raise ValueError("need at least 2 rf-SQUIDs")
        if not (self.L > 0 and self.M >= 0):
            raise ValueError("need L > 0 and M >= 0")
        if self.ratio >= MAX_RATIO:
            raise RatioTooLarge(f"M/L = {self.ratio:g} is outside the first-order regime")

    @property
    def ratio(self):
        return self.M / self.L


def coupling_matrix(model):
    """Dimensionless tridiagonal A, inductance matrix = L * A."""
    n = model.n_squids
    r = model.ratio
    return np.eye(n) + r * (np.eye(n, k=1) + np.eye(n, k=-1))


def tridiagonal_inverse_first_order(model):
    n = model.n_squids
    r = model.ratio
    return np.eye(n) - r * (np.eye(n, k=1) + np.eye(n, k=-1))


def magnetic_energy(model, fluxes, form="difference"):
    """Stored magnetic energy for loop fluxes ``fluxes`` (Wb).

    form:
      "difference"  -- 1/(2(L+2M)) sum phi_k^2 + M/(2L^2) sum (phi_{k+1}-phi_k)^2,
                       sums over the open chain exactly as written
      "tridiagonal" -- (1/2L) phi^T B phi with the first-order inverse B
      "exact"       -- (1/2) phi^T (L A)^-1 phi

    The difference form treats end loops like bulk loops, so at the chain ends
    it differs from the exact energy at first order in M/L; the tridiagonal
    form is accurate to second order everywhere.
    """
    phi = np.asarray(fluxes, dtype=float)
    if phi.shape != (model.n_squids,):
        raise ValueError(f"expected {model.n_squids} fluxes")
    L, M = model.L, model.M
    if form == "difference":
        return float(np.sum(phi ** 2) / (2 * (L + 2 * M)) + M / (2 * L ** 2) * np.sum(np.diff(phi) ** 2))
    if form == "tridiagonal":
        return float(phi @ tridiagonal_inverse_first_order(model) @ phi / (2 * L))
    if form == "exact":
        return float(phi @ np.linalg.solve(L * coupling_matrix(model), phi) / 2)
    raise ValueError(f"unknown form {form!r}")


def first_order_inverse_error(model):
    """Max entry of |A^-1 - B|, which scales as (M/L)^2."""
    exact = np.linalg.inv(coupling_matrix(model))
    return float(np.max(np.abs(exact - tridiagonal_inverse_first_order(model))))


def block_inverse(A, b, c, d):
    """Inverse of [[A, b], [c^T, d]] through the Schur complement d - c^T A^-1 b."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).reshape(-1, 1)
    c = np.asarray(c, dtype=float).reshape(-1, 1)
    Ai = np.linalg.inv(A)
    schur = (d - c.T @ Ai @ b).item()
    top_left = Ai + Ai @ b @ c.T @ Ai / schur
    top_right = -Ai @ b / schur
    bottom_left = -c.T @ Ai / schur
    return np.block([[top_left, top_right], [bottom_left, np.array([[1 / schur]])]])


def biased_energy_first_order(l, m, L_ext, phi, Phi):
    """Energy of internal inductors l weakly coupled (vector m) to a bias coil L_ext.

    Returns the first-order form (1/2)(phi - Phi m/L)^T l^-1 (phi - Phi m/L) + Phi^2/2L.
    """
    li = np.linalg.inv(np.asarray(l, dtype=float))
    shifted = np.asarray(phi, dtype=float) - Phi * np.asarray(m, dtype=float) / L_ext
    return float(shifted @ li @ shifted / 2 + Phi ** 2 / (2 * L_ext))


def biased_energy_exact(l, m, L_ext, phi, Phi):
    l = np.asarray(l, dtype=float)
    m = np.asarray(m, dtype=float)
    full = np.block([[l, m[:, None]], [m[None, :], np.array([[L_ext]])]])
    v = np.append(np.asarray(phi, dtype=float), Phi)
    return float(v @ np.linalg.solve(full, v) / 2)


def ising_coupling(L, M, N):
    """J = M phi0^2 / (2 N^2 L^2)."""
    return M * CONST.phi0 ** 2 / (2 * N ** 2 * L ** 2)


def map_to_ising(L, M, N, delta, e_err):
    """Device quantities to (J, h, eps) = (M phi0^2/2N^2L^2, delta/2, E_err/2)."""
    if not (L > 0 and M > 0 and N >= 1):
        raise ValueError("need L > 0, M > 0, N >= 1")
    return IsingParams(J=ising_coupling(L, M, N), h=delta / 2, eps=abs(e_err) / 2)


def required_mutual_for_R(L, N, delta, R_target):
    """Mutual inductance giving h/J = R_target: M = N^2 L^2 delta / (R phi0^2)."""
    if R_target <= 0:
        raise ValueError("R_target must be positive")
    M = N ** 2 * L ** 2 * delta / (R_target * CONST.phi0 ** 2)
    if M / L >= MAX_RATIO:
        raise RatioTooLarge(f"M/L = {M / L:g} needed for R = {R_target} is not small")
    return M
