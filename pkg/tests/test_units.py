import math

from hypothesis import given, strategies as st
import pytest

from compflux import units
from compflux.units import CONST

finite = st.floats(min_value=-1e30, max_value=1e30, allow_nan=False).filter(lambda x: abs(x) > 1e-300)


def test_derived_constants():
    assert CONST.phi0 == pytest.approx(CONST.h_planck / (2 * CONST.e_charge), rel=1e-15)
    assert CONST.hbar == pytest.approx(CONST.h_planck / (2 * math.pi), rel=1e-15)


def test_one_electronvolt():
    assert units.energy_J_to_ueV(1.602176634e-19) == pytest.approx(1e6, rel=1e-14)


def test_charging_energy_column():
    assert units.energy_J_to_ueV(5.1328e-24) == pytest.approx(32.04, abs=0.005)


def test_renormalized_splitting_in_ueV():
    assert units.energy_J_to_ueV(1.6e-24) == pytest.approx(9.99, abs=0.01)


@pytest.mark.parametrize("fwd,back", [
    (units.energy_J_to_ueV, units.energy_ueV_to_J),
    (units.energy_J_to_meV, units.energy_meV_to_J),
    (units.flux_Wb_to_phi0, units.flux_phi0_to_Wb),
    (units.capacitance_F_to_fF, units.capacitance_fF_to_F),
    (units.inductance_H_to_pH, units.inductance_pH_to_H),
])
@given(x=finite)
def test_round_trip(fwd, back, x):
    assert back(fwd(x)) == pytest.approx(x, rel=1e-12)


@given(L_pH=st.floats(min_value=1.0, max_value=1e6))
def test_inductive_energy_two_paths(L_pH):
    a = units.inductive_energy(units.inductance_pH_to_H(L_pH))
    b = units.inductive_energy_phi0_units(L_pH)
    assert a == pytest.approx(b, rel=1e-12)
