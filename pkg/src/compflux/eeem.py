"""Qubit-electron amplitudes for entanglement-enhanced electron microscopy
with an imperfect flux difference P*phi0.

Joint basis |e q> with index 2*e + q: |00>, |01>, |10>, |11>. The mean
phase convention is fixed: qubit |1> carries mean phase pi/2 between the
electron paths, qubit |0> carries mean phase 0.
"""
from dataclasses import dataclass
import cmath
import math
import warnings

import numpy as np

from .errors import NotNormalized

ZETA_WARN = 0.2
_SQ2 = math.sqrt(2.0)


@dataclass(frozen=True)
class EeemConfig:
    P: float
    s: float = 0.0

    def __post_init__(self):
        if not 0 < self.P <= 1:
            raise ValueError("P must lie in (0, 1]")
        if self.zeta > ZETA_WARN:
            warnings.warn(f"zeta = {self.zeta:.3f} is not small", stacklevel=2)

    @property
    def zeta(self):
        return math.pi / 4 * (1 - self.P)


@dataclass(frozen=True)
class JointState:
    amplitudes: np.ndarray

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


PLUS = (1 / _SQ2) * np.array([1, 1], dtype=complex)


def interact(config, qubit_state=None, linearized=False):
    """Electron |0>_e passes the qubit; returns the joint state.

    Qubit |0> sends the electron to cos z |0> - i sin z |1>, qubit |1> to
    i sin z |0> + cos z |1>. ``linearized`` replaces (cos, sin) by (1, z).
    """
    z = config.zeta
    c, s = (1.0, z) if linearized else (math.cos(z), math.sin(z))
    q = PLUS if qubit_state is None else np.asarray(qubit_state, dtype=complex)
    amp = np.array([c * q[0], 1j * s * q[1], -1j * s * q[0], c * q[1]], dtype=complex)
    return JointState(amp)


def first_order_joint_state(config):
    return interact(config, linearized=True)


def specimen_phase(state, s):
    """|0>_e picks up e^{is}, |1>_e picks up e^{-is}."""
    ph = np.array([cmath.exp(1j * s)] * 2 + [cmath.exp(-1j * s)] * 2)
    return JointState(state.amplitudes * ph)


def measure_electron(state, basis="s"):
    """Project the electron on (|0>_e + |1>_e)/sqrt2 ("s") or (|0>_e - |1>_e)/sqrt2 ("a").

    Returns (probability, normalized qubit state). The probability is taken
    relative to the state's own norm.
    """
    sign = {"s": 1.0, "a": -1.0}[basis]
    a = state.amplitudes
    q = (a[0:2] + sign * a[2:4]) / _SQ2
    total = float(np.vdot(a, a).real)
    w = float(np.vdot(q, q).real)
    return w / total, q / math.sqrt(w)


def qubit_readout_probability(qubit_state, basis="s"):
    """Probability of finding the qubit in (|0> + |1>)/sqrt2 ("s") or (|0> - |1>)/sqrt2 ("a")."""
    sign = {"s": 1.0, "a": -1.0}[basis]
    q = np.asarray(qubit_state, dtype=complex)
    return float(abs(q[0] + sign * q[1]) ** 2 / 2 / np.vdot(q, q).real)


def literal_leftover_state(zeta, s, basis="s"):
    """First-order leftover qubit state as a closed formula, normalized.

    (e^{is} -+ i z e^{-is}) |0> +- (e^{-is} +- i z e^{is}) |1>
    """
    sg = 1.0 if basis == "s" else -1.0
    e, ei = cmath.exp(1j * s), cmath.exp(-1j * s)
    v = np.array([e - sg * 1j * zeta * ei, sg * (ei + sg * 1j * zeta * e)])
    return v / np.linalg.norm(v)


def same_up_to_phase(u, v):
    """Max componentwise |u - v e^{i chi}| with chi aligning the two vectors."""
    ov = np.vdot(v, u)
    chi = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.max(np.abs(np.asarray(u) - chi * np.asarray(v))))


@dataclass(frozen=True)
class RoundsResult:
    qubit_state: np.ndarray
    probability: float
    relative_phases: tuple  # arg(q1/q0) after each round


def run_rounds(config, outcomes, s=None, qubit_state=None):
    """Repeat interact -> specimen -> measure for each outcome in ``outcomes``."""
    s = config.s if s is None else s
    q = PLUS if qubit_state is None else np.asarray(qubit_state, dtype=complex)
    prob = 1.0
    phases = []
    for basis in outcomes:
        joint = specimen_phase(interact(config, q), s)
        p, q = measure_electron(joint, basis)
        prob *= p
        phases.append(cmath.phase(q[1] / q[0]))
    return RoundsResult(qubit_state=q, probability=prob, relative_phases=tuple(phases))


@dataclass(frozen=True)
class SmearedResult:
    zeta0: complex
    zeta1: complex
    excitation_probability: float
    qubit_state: np.ndarray  # in the dressed basis (|0>, |1>)


def smeared_flux_model(config, components, components1=None, basis="s", s=None, exact=True):
    """Leftover state when each basis state is a superposition of flux components.

    ``components``: [(amplitude, zeta_i), ...] for the |0> branch; the |1>
    branch uses ``components1`` or the same list. Amplitudes must be unit
    norm per branch. Returns complex effective phases zeta0, zeta1 defined by
    A0 = e^{is + zeta0}, A1 = +-e^{-is + zeta1} for the dressed projections,
    and the probability of leaving the dressed two-state space.
    """
    s = config.s if s is None else s
    comp0 = list(components)
    comp1 = list(components1) if components1 is not None else comp0
    for comp in (comp0, comp1):
        n = sum(abs(c) ** 2 for c, _ in comp)
        if abs(n - 1) > 1e-10:
            raise NotNormalized(f"branch amplitudes have norm^2 {n:.12g}")
    sg = 1.0 if basis == "s" else -1.0
    e, ei = cmath.exp(1j * s), cmath.exp(-1j * s)

    def cs(z):
        return (math.cos(z), math.sin(z)) if exact else (1.0, z)

    amp0 = []
    for c, z in comp0:
        co, si = cs(z)
        amp0.append(c * (co * e - sg * 1j * si * ei))
    amp1 = []
    for d, z in comp1:
        co, si = cs(z)
        amp1.append(sg * d * (co * ei + sg * 1j * si * e))
    amp0 = np.array(amp0)
    amp1 = np.array(amp1)
    c0 = np.array([c for c, _ in comp0], dtype=complex)
    c1 = np.array([d for d, _ in comp1], dtype=complex)
    A0 = np.vdot(c0, amp0)
    A1 = np.vdot(c1, amp1)
    total = float(np.vdot(amp0, amp0).real + np.vdot(amp1, amp1).real)
    kept = abs(A0) ** 2 + abs(A1) ** 2
    q = np.array([A0, A1]) / math.sqrt(kept)
    return SmearedResult(
        zeta0=cmath.log(A0 * ei),
        zeta1=cmath.log(sg * A1 * e),
        excitation_probability=max(0.0, 1 - kept / total),
        qubit_state=q,
    )
