import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from djcm.evolution import BlockState, InitialAmplitudes, evolve, initial_block_state
from djcm.measurement import (InversionConvention, Site, excited_populations,
                              inversion_exact, inversion_paper, reduce_atom)
from djcm.model import BlockIndex, SystemParams, interaction_block

B00 = BlockIndex(0, 0)


def _state(vec):
    return BlockState(amplitudes=vec, block=B00)


def test_reduce_atom_basis_states():
    e4 = _state([0, 0, 0, 1])
    for site in ("A", "B"):
        np.testing.assert_array_equal(reduce_atom(e4, site).matrix, np.diag([0, 1]))
    e1 = _state([1, 0, 0, 0])
    assert reduce_atom(e1, Site.A).excited_population == 0.0
    np.testing.assert_array_equal(reduce_atom(e1, "B").matrix, np.diag([1, 0]))
    # e2 has only B excited, e3 only A
    assert reduce_atom(_state([0, 1, 0, 0]), "B").excited_population == 1.0
    assert reduce_atom(_state([0, 0, 1, 0]), "A").excited_population == 1.0


def test_inversion_exact_examples():
    sample = inversion_exact(_state([0, 0, 0, 1]))
    assert (sample.W_A, sample.W_B) == (1.0, 1.0)
    assert sample.convention is InversionConvention.EXACT
    sample = inversion_exact(_state([1, 0, 0, 0]))
    assert (sample.W_A, sample.W_B) == (-1.0, -1.0)


def test_excited_populations_vectorized():
    v = np.array([[0.5, 0.5, 0.5, 0.5], [1, 0, 0, 0]])
    p_a, p_b = excited_populations(v)
    np.testing.assert_allclose(p_a, [0.5, 0.0])
    np.testing.assert_allclose(p_b, [0.5, 0.0])


@settings(max_examples=60, deadline=None)
@given(g_a=st.floats(0.0, 5.0), g_b=st.floats(0.0, 5.0), n_a=st.integers(0, 50),
       n_b=st.integers(0, 50), theta=st.floats(0.0, 2 * math.pi), t=st.floats(0.0, 100.0),
       scenario=st.sampled_from(["I", "II"]))
def test_bell_pair_trajectories_have_zero_exact_inversion(g_a, g_b, n_a, n_b, theta, t,
                                                           scenario):
    block = BlockIndex(n_a, n_b)
    h = interaction_block(SystemParams(g_A=g_a, g_B=g_b), block)
    state0 = initial_block_state(scenario, InitialAmplitudes.from_theta(theta, scenario), block)
    v = evolve(state0, h, [t])[0]
    state = BlockState(amplitudes=v, block=block, time=t)
    for site in ("A", "B"):
        rho = reduce_atom(state, site).matrix
        assert abs(np.trace(rho) - 1.0) < 1e-12
        assert np.min(np.linalg.eigvalsh(rho)) > -1e-12
        np.testing.assert_allclose(rho, np.diag([0.5, 0.5]), atol=1e-12)
    sample = inversion_exact(state)
    assert abs(sample.W_A) < 1e-12 and abs(sample.W_B) < 1e-12


def test_reduced_state_is_a_density_matrix():
    rng = np.random.default_rng(2)
    for _ in range(50):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        state = _state(v / np.linalg.norm(v))
        for site in Site:
            rho = reduce_atom(state, site).matrix
            assert np.allclose(rho, rho.conj().T, atol=1e-12)
            assert abs(np.trace(rho).real - 1.0) < 1e-12
            eig = np.linalg.eigvalsh(rho)
            assert eig.min() > -1e-12 and eig.max() < 1 + 1e-12


def test_inversion_paper_examples():
    times = np.linspace(0.0, 20.0, 101)
    w_a, w_b = inversion_paper(InitialAmplitudes.from_theta(math.pi / 4), 1.0, 1.5, times)
    assert np.max(np.abs(w_a)) < 1e-15 and np.max(np.abs(w_b)) < 1e-15
    sample = inversion_paper(InitialAmplitudes(c00=1), 1.0, 1.0, 0.0)
    assert (sample.W_A, sample.W_B) == (1.0, -1.0)
    assert sample.convention is InversionConvention.PAPER_BELL
    sample = inversion_paper(InitialAmplitudes(c00=1), 1.0, 1.0, math.pi / 2)
    assert sample.W_A == pytest.approx(-1.0, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(theta=st.floats(0.0, math.pi / 2), omega_a=st.floats(0.01, 5.0),
       omega_b=st.floats(0.01, 5.0))
def test_inversion_paper_properties(theta, omega_a, omega_b):
    total = omega_a + omega_b
    times = np.linspace(0.0, 3 * 2 * math.pi / total, 301)
    w_a, w_b = inversion_paper(InitialAmplitudes.from_theta(theta), omega_a, omega_b, times)
    np.testing.assert_array_equal(w_b, -w_a)
    assert np.max(np.abs(w_a - math.cos(2 * theta) * np.cos(total * times))) < 1e-12
    assert np.max(np.abs(w_a)) == pytest.approx(abs(math.cos(2 * theta)), abs=1e-12)
    shifted, _ = inversion_paper(InitialAmplitudes.from_theta(theta), omega_a, omega_b,
                                 times + 2 * math.pi / total)
    assert np.max(np.abs(shifted - w_a)) < 1e-12
    mirror, _ = inversion_paper(InitialAmplitudes.from_theta(math.pi / 2 - theta),
                                omega_a, omega_b, times)
    assert np.max(np.abs(mirror + w_a)) < 1e-12
