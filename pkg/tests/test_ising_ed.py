import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from compflux import ising_ed as ed
from compflux.errors import LongitudinalTooLarge, TooLarge
from compflux.ising_rg import IsingParams


def spec(n, J, h, eps=0.0):
    return ed.SpinChainSpec(n, ed.ChainCouplings(J, h, eps))


def spectrum(n, J, h, eps=0.0):
    return np.linalg.eigvalsh(ed.build_hamiltonian(spec(n, J, h, eps)))


def test_size_limits():
    with pytest.raises(TooLarge):
        spec(15, 1, 1)
    with pytest.raises(ValueError):
        spec(1, 1, 1)


def test_classical_pair():
    np.testing.assert_allclose(spectrum(2, 1, 0), [-1, -1, 1, 1], atol=1e-14)


def test_free_spins():
    np.testing.assert_allclose(spectrum(2, 0, 1), [-2, 0, 0, 2], atol=1e-14)


def test_pair_analytic():
    s5 = math.sqrt(5)
    np.testing.assert_allclose(spectrum(2, 1, 1), [-s5, -1, 1, s5], atol=1e-13)


def test_bit_convention():
    # spin 1 is the least significant bit, bit 0 means sigma^z = +1
    H = ed.build_hamiltonian(spec(3, 0.0, 0.0, 1.0))
    assert H[0, 0] == -3.0
    assert H[1, 1] == -1.0  # spin 1 flipped
    assert H[7, 7] == 3.0


@settings(max_examples=20, deadline=None)
@given(n=st.integers(2, 7), J=st.floats(0, 2), h=st.floats(0, 2), eps=st.floats(0, 1))
def test_hermitian(n, J, h, eps):
    H = ed.build_hamiltonian(spec(n, J, h, eps))
    assert np.max(np.abs(H - H.T)) == 0.0


@settings(max_examples=20, deadline=None)
@given(n=st.integers(2, 7), J=st.floats(0, 2), h=st.floats(0, 2))
def test_flip_symmetry(n, J, h):
    H = ed.build_hamiltonian(spec(n, J, h))
    flip = np.arange(2 ** n)[::-1]  # complements every bit
    np.testing.assert_allclose(np.linalg.eigvalsh(H[np.ix_(flip, flip)]), np.linalg.eigvalsh(H),
                               atol=1e-12)


def test_spectrum_result_invariants():
    res = ed.diagonalize(spec(6, 1.0, 0.7, 0.01))
    assert abs(np.linalg.norm(res.ground_state) - 1) < 1e-10
    assert np.all(np.diff(res.energies) >= 0)


def test_ordered_chain_observables():
    obs = ed.ground_state_observables(spec(4, 1.0, 0.0))
    assert obs.gap == pytest.approx(0.0, abs=1e-10)
    np.testing.assert_allclose(obs.correlators, 1.0, atol=1e-10)


def test_ferro_side_ordering():
    obs = ed.ground_state_observables(spec(4, 1.0, 0.57))
    c = obs.correlators
    assert c[0] > c[2] > 0.5
    assert obs.gap > 0
    assert obs.magnetization == pytest.approx(0.0, abs=1e-10)
    assert obs.polarization == pytest.approx(math.sqrt(c[-1]), rel=1e-14)


def test_para_side_decay():
    kappa = 0.3
    obs = ed.ground_state_observables(spec(12, 1.0, 1.0 + kappa))
    n = np.arange(1, 8)
    slope = np.polyfit(n, np.log(obs.correlators[:7]), 1)[0]
    assert slope == pytest.approx(-kappa, rel=0.5)


@settings(max_examples=100, deadline=None)
@given(J=st.floats(0.01, 5), h=st.floats(0.01, 5), eps=st.floats(0, 1), s=st.sampled_from([1, -1]))
def test_intra_block_eigenvalues(J, h, eps, s):
    lo, hi = ed.intra_block_eigenvalues(J, h, eps, s)
    w = np.linalg.eigvalsh(ed.intra_block_matrix(J, h, eps, s))
    assert w[0] == pytest.approx(lo, rel=1e-12)
    assert w[1] == pytest.approx(hi, rel=1e-12)


@pytest.mark.parametrize("R", [1.0, 0.57])
def test_projection_exact_without_eps(R):
    rep = ed.validate_block_projection(IsingParams(J=1.0, h=R))
    assert rep.max_eig_discrepancy < 1e-10
    assert rep.isometry_defect < 1e-12


def test_projection_second_order_residual():
    J, h = 1.0, 0.57
    eps = 0.01 * h
    r1 = ed.validate_block_projection(IsingParams(J, h, eps)).max_eig_discrepancy
    r2 = ed.validate_block_projection(IsingParams(J, h, eps / 2)).max_eig_discrepancy
    assert r1 < 10 * eps ** 2 / J
    assert r1 / r2 == pytest.approx(4.0, abs=0.8)


def test_projection_guard():
    with pytest.raises(LongitudinalTooLarge):
        ed.validate_block_projection(IsingParams(1.0, 0.5, 0.1))


def test_slave_overlap():
    J, h = 1.0, 0.57
    a = ed.slave_overlap(J, h, 1e-4 * h)
    assert a == pytest.approx(h / math.hypot(h, J), abs=1e-8)


@pytest.mark.parametrize("s", [1, -1])
def test_slave_sz_first_order(s):
    J, h = 1.0, 0.8
    errs = []
    for eps in (2e-3, 1e-3):
        exact = ed.slave_sz(J, h, eps, s, exact=True)
        errs.append(abs(exact - ed.slave_sz_first_order(J, h, eps, s)))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.2)
    assert ed.slave_sz_first_order(J, h, 0.0, s) == pytest.approx(s * J / math.hypot(h, J))
