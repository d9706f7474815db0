import numpy as np
import pytest

from conftest import eigensystem_at, make_params, stationary_at, top_pair_by_energy
from kpo_spectro import (
    DensityMatrix,
    build_generator,
    evolve,
    populations_in_eigenbasis,
    steady_state,
)
from kpo_spectro.errors import SolverError, SteadyStateError, StepSizeError
from kpo_spectro.lindblad import (
    LindbladGenerator,
    build_dissipator_superop,
    build_hamiltonian_superop,
)
from kpo_spectro.units import from_mhz


def _vec(rho):
    return rho.reshape(-1)


def _fock_dm(dim, m):
    rho = np.zeros((dim, dim), dtype=complex)
    rho[m, m] = 1.0
    return rho


def test_closed_system_generator_is_commutator():
    params = make_params(kappa_ex=0.0, kappa_int=0.0, delta=3.0, beta=5.0, dim=8)
    gen = build_generator(params)
    assert np.abs(gen.matrix - build_hamiltonian_superop(params)).max() == 0.0
    eigs = np.linalg.eigvals(gen.matrix)
    assert np.abs(eigs.real).max() < 1e-10 * np.abs(gen.matrix).max()


def test_vacuum_stationary_without_pump():
    params = make_params(beta=0.0, dim=8)
    gen = build_generator(params)
    resid = gen.matrix @ _vec(_fock_dm(8, 0))
    assert np.abs(resid).max() < 1e-12 * np.abs(gen.matrix).max()


def test_trace_row_annihilated():
    params = make_params(delta=-7.0, beta=11.0, dim=10)
    gen = build_generator(params)
    trace_row = np.eye(10, dtype=complex).reshape(-1) @ gen.matrix
    assert np.abs(trace_row).max() < 1e-10 * np.abs(gen.matrix).max()


def test_hermiticity_preservation():
    params = make_params(delta=5.0, beta=7.0, dim=6)
    gen = build_generator(params)
    rng = np.random.default_rng(3)
    for _ in range(4):
        r = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        lhs = (gen.matrix @ _vec(r.conj().T)).reshape(6, 6)
        rhs = (gen.matrix @ _vec(r)).reshape(6, 6).conj().T
        assert np.abs(lhs - rhs).max() < 1e-9 * np.abs(gen.matrix).max()
        h = r + r.conj().T
        image = (gen.matrix @ _vec(h)).reshape(6, 6)
        assert np.abs(image - image.conj().T).max() < 1e-9 * np.abs(gen.matrix).max()


def test_steady_state_vacuum_at_beta_zero():
    params = make_params(beta=0.0, dim=10)
    rho = steady_state(build_generator(params))
    assert np.abs(rho.entries - _fock_dm(10, 0)).max() < 1e-12


def test_steady_state_requires_decay():
    params = make_params(kappa_ex=0.0, kappa_int=0.0, dim=6)
    with pytest.raises(SteadyStateError):
        steady_state(build_generator(params))


def test_steady_state_residual_and_invariants():
    params, es, rho, pops = stationary_at(delta=0.0, beta=20.0, dim=24)
    gen = build_generator(params)
    resid = np.abs(gen.matrix @ _vec(rho.entries)).max()
    assert resid < 1e-10 * np.abs(gen.matrix).max()
    rho.validate()  # Hermitian, unit trace, PSD within tolerances


def test_cat_mixture_populations():
    # stationary state approaches the even/odd cat mixture: top two levels
    # carry nearly all population at beta/2pi = 20 MHz
    params, es, rho, pops = stationary_at(delta=0.0, beta=20.0, dim=24)
    top, second = top_pair_by_energy(es)
    assert {top, second} == {0, 1}
    assert abs(pops[top] - 0.5) < 0.1
    assert abs(pops[second] - 0.5) < 0.1
    assert pops[top] + pops[second] > 0.95


def test_populations_basics():
    params, es, rho, pops = stationary_at(delta=20.0, beta=20.0, dim=24)
    assert pops.min() > -1e-8
    assert pops.max() < 1 + 1e-8
    assert pops.sum() == pytest.approx(1.0, abs=1e-8)
    # population crossing endpoint: labels 1 and 2 share the population
    assert pops[1] == pytest.approx(0.5, abs=0.1)
    assert pops[2] == pytest.approx(0.5, abs=0.1)


def test_populations_beta_zero():
    params, es, rho, pops = stationary_at(delta=7.0, beta=0.0, dim=10)
    assert pops[0] == pytest.approx(1.0, abs=1e-10)
    assert np.abs(pops[1:]).max() < 1e-10


def test_populations_eigen_basis_passthrough():
    _, es = eigensystem_at(delta=7.0, beta=0.0, dim=6)
    rho = DensityMatrix(entries=_fock_dm(6, 1), basis="eigen")
    pops = populations_in_eigenbasis(rho, es)
    assert pops[1] == 1.0
    with pytest.raises(ValueError):
        populations_in_eigenbasis(DensityMatrix(entries=_fock_dm(8, 0)), es)


def test_evolve_zero_time_returns_input():
    params = make_params(dim=6)
    gen = build_generator(params)
    rho0 = DensityMatrix(entries=_fock_dm(6, 1))
    assert evolve(gen, rho0, 0.0, 1e-12) is rho0


def test_evolve_single_quantum_decay():
    # from |1><1| with beta = 0 the ground population is 1 - exp(-kappa t)
    params = make_params(beta=0.0, dim=8)
    gen = build_generator(params)
    rho0 = DensityMatrix(entries=_fock_dm(8, 1))
    dt = 0.1 / np.abs(gen.matrix).sum(axis=1).max()
    for t_frac in (0.5, 2.0):
        t = t_frac / params.kappa_tot
        rho_t = evolve(gen, rho0, t, dt)
        expected = 1.0 - np.exp(-params.kappa_tot * t)
        assert rho_t.entries[0, 0].real == pytest.approx(expected, abs=1e-6)


def test_evolve_step_size_guard():
    params = make_params(dim=6)
    gen = build_generator(params)
    rho0 = DensityMatrix(entries=_fock_dm(6, 0))
    bad_dt = 1.0 / np.abs(gen.matrix).sum(axis=1).max()
    with pytest.raises(StepSizeError):
        evolve(gen, rho0, 1e-6, bad_dt)


def test_evolve_matches_steady_state():
    params = make_params(delta=0.0, beta=20.0, dim=20)
    gen = build_generator(params)
    rho_ns = steady_state(gen)
    rho0 = DensityMatrix(entries=_fock_dm(20, 0))
    dt = 0.1 / np.abs(gen.matrix).sum(axis=1).max()
    rho_t = evolve(gen, rho0, 50.0 / params.kappa_tot, dt)
    assert np.abs(rho_t.entries - rho_ns.entries).max() < 1e-6
    assert abs(np.trace(rho_t.entries) - 1.0) < 1e-8


def test_truncation_convergence_of_populations():
    _, _, _, pops_small = stationary_at(delta=-7.0, beta=20.0, dim=22)
    _, _, _, pops_large = stationary_at(delta=-7.0, beta=20.0, dim=32)
    assert np.abs(pops_small[:10] - pops_large[:10]).max() < 1e-6


def test_degenerate_stationary_manifold_detected():
    # pure dephasing: every diagonal state is stationary -> multiplicity error
    dim = 4
    n = np.diag(np.arange(dim, dtype=complex))
    eye = np.eye(dim, dtype=complex)
    kappa = 1.0
    mat = kappa * (np.kron(n, n.conj())
                   - 0.5 * np.kron(n @ n, eye)
                   - 0.5 * np.kron(eye, (n @ n).T))
    gen = LindbladGenerator(matrix=mat, dim=dim, kappa_tot=kappa)
    with pytest.raises(SteadyStateError) as err:
        steady_state(gen)
    assert err.value.null_dimension == dim


def test_kappa_scale_invariance_of_steady_state():
    # scaling all rates and frequencies together leaves the state unchanged
    p1 = make_params(delta=7.0, beta=10.0, dim=16)
    p2 = make_params(delta=14.0, beta=20.0, chi=60.0, kappa_ex=0.8, kappa_int=8.0,
                     dim=16)
    r1 = steady_state(build_generator(p1))
    r2 = steady_state(build_generator(p2))
    assert np.abs(r1.entries - r2.entries).max() < 1e-9
