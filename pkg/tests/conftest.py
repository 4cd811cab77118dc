import pytest

from compflux.rfsquid import BETA_QUARTER_FLUX, RfSquidParams
from compflux.units import PHI0

REF_L = 800e-12
REF_C = 10e-15


@pytest.fixture(scope="session")
def ref_device():
    return RfSquidParams(L=REF_L, C=REF_C, beta=BETA_QUARTER_FLUX, phi_err=1e-4 * PHI0)


@pytest.fixture(scope="session")
def heavy_device():
    return RfSquidParams(L=REF_L, C=100e-15, beta=BETA_QUARTER_FLUX)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
