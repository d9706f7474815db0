"""Shared helpers for the test suite.

Heavy objects (labeled eigensystems, stationary states) are memoized per
parameter point so unit tests and the acceptance suite can share them.
"""

import functools

import numpy as np

from kpo_spectro import (
    ModelParams,
    build_generator,
    build_h0,
    diagonalize,
    populations_in_eigenbasis,
    steady_state,
)
from kpo_spectro.units import from_mhz

# paper-typical defaults: chi/2pi = 30, kappa_ex/2pi = 0.4, kappa_int/2pi = 4 MHz
def make_params(delta=7.0, beta=0.0, chi=30.0, kappa_ex=0.4, kappa_int=4.0,
                omega_drive=0.0, dim=30) -> ModelParams:
    return ModelParams(
        delta=from_mhz(delta),
        chi=from_mhz(chi),
        beta=from_mhz(beta),
        kappa_ex=from_mhz(kappa_ex),
        kappa_int=from_mhz(kappa_int),
        omega_drive=from_mhz(omega_drive),
        dim=dim,
    )


@functools.lru_cache(maxsize=64)
def eigensystem_at(delta=7.0, beta=0.0, dim=30, chi=30.0):
    params = make_params(delta=delta, beta=beta, dim=dim, chi=chi)
    return params, diagonalize(build_h0(params), params)


@functools.lru_cache(maxsize=64)
def stationary_at(delta=7.0, beta=0.0, dim=30, chi=30.0, kappa_ex=0.4, kappa_int=4.0):
    params = make_params(delta=delta, beta=beta, dim=dim, chi=chi,
                         kappa_ex=kappa_ex, kappa_int=kappa_int)
    es = diagonalize(build_h0(params), params)
    rho = steady_state(build_generator(params))
    pops = populations_in_eigenbasis(rho, es)
    return params, es, rho, pops


def top_pair_by_energy(es, within=None):
    """Labels of the two highest levels (by eigenvalue), highest first."""
    n = within if within is not None else es.dim
    order = np.argsort(es.eigenvalues[:n])
    return int(order[-1]), int(order[-2])
