"""Lumped parameters of a long rectangular rf-SQUID treated as a shorted
transmission line: effective capacitance, photon gap, line capacitance.
"""
from dataclasses import dataclass
import math

from .errors import GeometryInvalid
from .units import CONST, EPS_R_SILICON

# Inductance per unit length presets (H/m).
INDUCTANCE_PER_LENGTH = {
    "coax": 0.2e-9 / 1e-3,  # mu0 / 2pi, coaxial field confinement
    "open_loop": 1.2e-9 / 1e-3,  # 10 um wide loop on a bare substrate
}

# d / rod radius that makes ln(d/a) = pi, the etched-substrate target.
ETCHED_ASPECT = math.exp(math.pi)


@dataclass(frozen=True)
class TxLineSpec:
    a: float  # long-side length (m)
    l_per: float  # H/m
    c_per: float  # F/m
    C_J: float = 0.0  # junction capacitance (F)

    def __post_init__(self):
        if not (self.a > 0 and self.l_per > 0 and self.c_per > 0 and self.C_J >= 0):
            raise ValueError(f"transmission-line parameters must be positive: {self}")


@dataclass(frozen=True)
class PhotonGap:
    psi_branch: float  # 2 pi hbar / (a sqrt(l c)), J
    xi_branch: float  # pi hbar / (a sqrt(l c)), J


def effective_capacitance(spec):
    """C = C_J + c a / 12."""
    return spec.C_J + spec.c_per * spec.a / 12


def loop_inductance(spec):
    return spec.l_per * spec.a


def photon_gap(spec):
    e = CONST.h_planck / (spec.a * math.sqrt(spec.l_per * spec.c_per))
    return PhotonGap(psi_branch=e, xi_branch=e / 2)


def photon_gap_shortcut(la_nH, ca_fF):
    """4.1 meV / sqrt((la/nH)(ca/fF)), returned in joules."""
    return 4.1e-3 * CONST.e_charge / math.sqrt(la_nH * ca_fF)


def parallel_rod_capacitance(eps_eff, d, rod_radius, ignore_log=False):
    """Per-length capacitance pi eps_eff / ln(d / rod_radius) of two thin rods.

    ``ignore_log`` drops the logarithm (c = pi eps_eff), the rough estimate
    used for the unetched silicon case.
    """
    if d / rod_radius <= 3:
        raise GeometryInvalid(f"d / radius = {d / rod_radius:g}; rods are not thin")
    if ignore_log:
        return math.pi * eps_eff
    return math.pi * eps_eff / math.log(d / rod_radius)


def silicon_eps_eff():
    """(eps0 + eps_Si) / 2 for lines on a silicon surface."""
    return (1 + EPS_R_SILICON) / 2 * CONST.eps0


def silicon_line(a, C_J=0.0, L_preset="coax", d=10e-6):
    """Lines on bare silicon, log factor ignored."""
    c = parallel_rod_capacitance(silicon_eps_eff(), d, d / 10, ignore_log=True)
    return TxLineSpec(a=a, l_per=INDUCTANCE_PER_LENGTH[L_preset], c_per=c, C_J=C_J)


def etched_line(a, C_J=0.0, L_preset="coax", d=10e-6):
    """Silicon etched away between the lines (eps_eff = eps0) and ln(d/a) = pi."""
    c = parallel_rod_capacitance(CONST.eps0, d, d / ETCHED_ASPECT)
    return TxLineSpec(a=a, l_per=INDUCTANCE_PER_LENGTH[L_preset], c_per=c, C_J=C_J)
