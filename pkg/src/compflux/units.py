"""Physical constants and conversions between SI and working units.

Everything inside the package is SI. Working units (ueV, fF, pH, fractions
of the flux quantum) only appear at I/O boundaries.
"""
from dataclasses import dataclass
import math

import scipy.constants as sc


@dataclass(frozen=True)
class PhysConstants:
    phi0: float
    e_charge: float
    h_planck: float
    hbar: float
    k_B: float
    mu0: float
    eps0: float

    @classmethod
    def codata(cls):
        # e, h, k_B are exact since the 2019 SI redefinition; derive the rest.
        e = sc.e
        h = sc.h
        return cls(
            phi0=h / (2.0 * e),
            e_charge=e,
            h_planck=h,
            hbar=h / (2.0 * math.pi),
            k_B=sc.k,
            mu0=sc.mu_0,
            eps0=sc.epsilon_0,
        )


CONST = PhysConstants.codata()
PHI0 = CONST.phi0

# Relative permittivity of silicon used for the on-chip line capacitance.
EPS_R_SILICON = 11.68


def energy_J_to_ueV(E):
    return E / CONST.e_charge * 1e6


def energy_ueV_to_J(E_ueV):
    return E_ueV * 1e-6 * CONST.e_charge


def energy_J_to_meV(E):
    return E / CONST.e_charge * 1e3


def energy_meV_to_J(E_meV):
    return E_meV * 1e-3 * CONST.e_charge


def flux_Wb_to_phi0(phi):
    return phi / CONST.phi0


def flux_phi0_to_Wb(phi_in_phi0):
    return phi_in_phi0 * CONST.phi0


def capacitance_F_to_fF(C):
    return C * 1e15


def capacitance_fF_to_F(C_fF):
    return C_fF * 1e-15


def inductance_H_to_pH(L):
    return L * 1e12


def inductance_pH_to_H(L_pH):
    return L_pH * 1e-12


def inductive_energy(L):
    """E_L = (phi0/2pi)^2 / 2L, in joules."""
    return (CONST.phi0 / (2.0 * math.pi)) ** 2 / (2.0 * L)


def inductive_energy_phi0_units(L_pH):
    """Same quantity via working units: phi0^2 [Wb^2] per pH, then to J.

    Kept as an independent path so the two can be cross-checked.
    """
    phi0_sq_over_pH = CONST.phi0 ** 2 / 1e-12
    return phi0_sq_over_pH / (8.0 * math.pi ** 2 * L_pH)


def charging_energy(C):
    """E_C = (2e)^2 / 2C, in joules."""
    return (2.0 * CONST.e_charge) ** 2 / (2.0 * C)
