"""Feasibility analysis of a composite flux qubit built from a chain of rf-SQUIDs."""
from .units import CONST, PHI0
from .rfsquid import RfSquidParams, numerov_spectrum
from .ising_rg import IsingParams, rg_flow, two_step_ratios
from .design import analyze

__all__ = ["CONST", "PHI0", "RfSquidParams", "numerov_spectrum", "IsingParams", "rg_flow",
           "two_step_ratios", "analyze"]
