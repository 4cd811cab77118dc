"""Flux-noise estimates and a bias-precision budget.

Variance convention: var = integral S d(omega)/pi = 2 * integral S df, except
for the 1/f coupler entry whose closed form carries the (2/pi) ln(f_H/f_L)
factor as published (see ``one_over_f_rms``).
"""
from dataclasses import dataclass, field
import math
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import QuadratureFailure
from .units import CONST

DEFAULT_BAND = (0.1, 10e9)
QUAD_RTOL = 1e-6
MRT_BAND = (1e-4, 1e-3)  # literature flux-noise range, phi0 units

# Published SQUID magnetometer spectrum: sqrt(S) = coeff {1 + (f1/f)^e1 + f2/f}.
MAGNETOMETER_COEFF = 0.09e-15  # T / sqrt(Hz)
MAGNETOMETER_F1 = 300.0
MAGNETOMETER_E1 = 0.3
MAGNETOMETER_F2 = 3.0
PICKUP_AREA = 10e-6 * 1e-2  # coherence width x 1 cm


def _check_band(f_L, f_H):
    if not f_H > f_L > 0:
        raise ValueError(f"need f_H > f_L > 0, got [{f_L}, {f_H}]")


def integrate_log(fn, f_L, f_H, n_nodes=None, rtol=QUAD_RTOL):
    """Integral of fn(f) df over [f_L, f_H], one log-spaced panel per decade.

    With ``n_nodes`` a fixed Gauss-Legendre rule of that order is used on
    each panel; otherwise adaptive quadrature to ``rtol``.
    """
    _check_band(f_L, f_H)
    edges = np.logspace(math.log10(f_L), math.log10(f_H),
                        max(1, int(math.ceil(math.log10(f_H / f_L)))) + 1)
    g = lambda u: fn(math.exp(u)) * math.exp(u)
    total = 0.0
    err = 0.0
    if n_nodes is not None:
        x, w = np.polynomial.legendre.leggauss(n_nodes)
        for a, b in zip(np.log(edges[:-1]), np.log(edges[1:])):
            u = 0.5 * (b - a) * x + 0.5 * (a + b)
            total += 0.5 * (b - a) * sum(wi * g(ui) for wi, ui in zip(w, u))
        return total
    with warnings.catch_warnings():
        # the error estimate is checked below instead
        warnings.simplefilter("ignore", IntegrationWarning)
        for a, b in zip(np.log(edges[:-1]), np.log(edges[1:])):
            val, e = quad(g, a, b, epsabs=0.0, epsrel=max(rtol * 1e-2, 1e-13), limit=200)
            total += val
            err += e
    if err > rtol * abs(total):
        raise QuadratureFailure(f"estimated error {err:g} exceeds {rtol:g} relative")
    return total


def one_over_f_rms(phi_n, f_L=DEFAULT_BAND[0], f_H=DEFAULT_BAND[1], exact_factors=False,
                   exponent=1.0):
    """RMS flux (phi0 units) of S = phi_n^2 / f^exponent.

    exact_factors=False drops the (2/pi) ln(f_H/f_L) factor and returns phi_n.
    """
    _check_band(f_L, f_H)
    if not exact_factors:
        return phi_n
    if exponent == 1.0:
        band = math.log(f_H / f_L)
    else:
        band = (f_H ** (1 - exponent) - f_L ** (1 - exponent)) / (1 - exponent)
    return phi_n * math.sqrt(2 / math.pi * band)


def magnetometer_spectrum(f, coeff=MAGNETOMETER_COEFF, f_corner1=MAGNETOMETER_F1,
                          exp1=MAGNETOMETER_E1, f_corner2=MAGNETOMETER_F2):
    """Field power density S(f) in T^2/Hz."""
    return (coeff * (1 + (f_corner1 / f) ** exp1 + f_corner2 / f)) ** 2


def magnetometer_field_rms(coeff=MAGNETOMETER_COEFF, f_corner1=MAGNETOMETER_F1,
                           exp1=MAGNETOMETER_E1, f_corner2=MAGNETOMETER_F2,
                           f_L=DEFAULT_BAND[0], f_H=DEFAULT_BAND[1], n_nodes=None):
    """RMS field (T) with var = 2 * integral S df."""
    S = lambda f: magnetometer_spectrum(f, coeff, f_corner1, exp1, f_corner2)
    return math.sqrt(2 * integrate_log(S, f_L, f_H, n_nodes))


def magnetometer_rms(coeff=MAGNETOMETER_COEFF, f_corner1=MAGNETOMETER_F1,
                     exp1=MAGNETOMETER_E1, f_corner2=MAGNETOMETER_F2,
                     f_L=DEFAULT_BAND[0], f_H=DEFAULT_BAND[1], area=PICKUP_AREA,
                     n_nodes=None):
    """RMS flux in phi0 units through ``area`` (m^2)."""
    if area <= 0:
        raise ValueError("pickup area must be positive")
    B = magnetometer_field_rms(coeff, f_corner1, exp1, f_corner2, f_L, f_H, n_nodes)
    return B * area / CONST.phi0


def thermal_inductor_rms(T, L_EM):
    """Equipartition phi_n^2 / 2L = k_B T / 2, in phi0 units."""
    if T < 0 or L_EM <= 0:
        raise ValueError("need T >= 0 and L_EM > 0")
    return math.sqrt(CONST.k_B * T * L_EM) / CONST.phi0


@dataclass(frozen=True)
class NoiseSpec:
    kind: str  # one_over_f | magnetometer_spectrum | thermal_inductor | constant_bound
    label: str = ""
    phi_n: float = 1e-5
    exponent: float = 1.0
    exact_factors: bool = False
    coeff: float = MAGNETOMETER_COEFF
    f_corner1: float = MAGNETOMETER_F1
    exp1: float = MAGNETOMETER_E1
    f_corner2: float = MAGNETOMETER_F2
    T: float = 0.1
    L_EM: float = 100e-9
    bound: float = MRT_BAND[0]
    f_L: float = DEFAULT_BAND[0]
    f_H: float = DEFAULT_BAND[1]
    pickup_area: float = PICKUP_AREA
    attenuation: float = 1.0  # coupling of this source into the qubit loop

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}")
        _check_band(self.f_L, self.f_H)
        if self.kind == "magnetometer_spectrum" and self.pickup_area <= 0:
            raise ValueError("pickup_area must be positive")
        if self.attenuation < 0:
            raise ValueError("attenuation must be non-negative")

    @property
    def name(self):
        return self.label or self.kind


KINDS = ("one_over_f", "magnetometer_spectrum", "thermal_inductor", "constant_bound")


def evaluate(spec):
    """Unattenuated RMS flux of one source, phi0 units."""
    if spec.kind == "one_over_f":
        return one_over_f_rms(spec.phi_n, spec.f_L, spec.f_H, spec.exact_factors, spec.exponent)
    if spec.kind == "magnetometer_spectrum":
        return magnetometer_rms(spec.coeff, spec.f_corner1, spec.exp1, spec.f_corner2,
                                spec.f_L, spec.f_H, spec.pickup_area)
    if spec.kind == "thermal_inductor":
        return thermal_inductor_rms(spec.T, spec.L_EM)
    return spec.bound


@dataclass(frozen=True)
class NoiseBudget:
    contributions: tuple  # (label, rms in phi0 units)
    required: float
    worst: float = field(init=False)
    passed: bool = field(init=False)
    margin: float = field(init=False)

    def __post_init__(self):
        worst = max(v for _, v in self.contributions)
        object.__setattr__(self, "worst", worst)
        object.__setattr__(self, "passed", worst <= self.required)
        object.__setattr__(self, "margin", self.required / worst if worst > 0 else math.inf)


def mrt_spec(level=MRT_BAND[0], attenuation=1.0):
    return NoiseSpec(kind="constant_bound", label="mrt_low_frequency", bound=level,
                     attenuation=attenuation)


def reference_noise_specs():
    """The four published estimates, unattenuated."""
    return [
        NoiseSpec(kind="one_over_f", label="coupler_1_over_f", phi_n=1e-5),
        mrt_spec(),
        NoiseSpec(kind="magnetometer_spectrum", label="squid_magnetometer"),
        NoiseSpec(kind="thermal_inductor", label="thermal_environment", T=0.1, L_EM=100e-9),
    ]


def assemble_budget(specs, required_phi_err, include_mrt=True):
    """Evaluate every source and compare the worst one with ``required_phi_err``.

    The literature MRT bound is appended as a ``constant_bound`` entry unless
    one is already present or ``include_mrt`` is off.
    """
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one noise source")
    if include_mrt and not any(s.kind == "constant_bound" for s in specs):
        specs.append(mrt_spec())
    contributions = tuple((s.name, evaluate(s) * s.attenuation) for s in specs)
    return NoiseBudget(contributions=contributions, required=required_phi_err)
