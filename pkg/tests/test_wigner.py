import numpy as np
import pytest
from scipy.linalg import expm

from conftest import stationary_at
from kpo_spectro import wigner
from kpo_spectro.fock import adjoint, build_annihilation, parity_operator


def _coherent(dim, alpha):
    n = np.arange(dim)
    from scipy.special import gammaln
    log_terms = n * np.log(np.abs(alpha) + 1e-300) - 0.5 * gammaln(n + 1.0)
    vec = np.exp(log_terms - 0.5 * np.abs(alpha) ** 2) * np.exp(1j * n * np.angle(alpha))
    return vec / np.linalg.norm(vec)


def _displaced_parity_oracle(rho, x, p):
    """Direct evaluation of (1/pi) Tr[rho D(alpha) P D(-alpha)] via expm.

    The displacement is exponentiated in a padded space so that truncating
    the generator does not pollute the matrix elements on rho's support.
    """
    dim = rho.shape[0] + 12
    padded = np.zeros((dim, dim), dtype=complex)
    padded[: rho.shape[0], : rho.shape[0]] = rho
    a = build_annihilation(dim)
    ad = adjoint(a)
    par = parity_operator(dim)
    alpha = (x + 1j * p) / np.sqrt(2)
    d = expm(alpha * ad - np.conj(alpha) * a)
    kernel = d @ par @ d.conj().T
    return np.real(np.trace(padded @ kernel)) / np.pi


def test_vacuum_peak():
    dim = 20
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    grid = wigner(rho, np.array([0.0]), np.array([0.0]))
    assert grid.values[0, 0] == pytest.approx(1 / np.pi, abs=1e-6)


def test_vacuum_gaussian_profile():
    dim = 20
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    x = np.linspace(-2.5, 2.5, 41)
    grid = wigner(rho, x, x)
    expected = np.exp(-(x[:, None] ** 2 + x[None, :] ** 2)) / np.pi
    assert np.abs(grid.values - expected).max() < 1e-10


def test_cat_mixture_analytic():
    # even mixture of |+-alpha0|: two Gaussian lobes at (+-sqrt(2) alpha0, 0)
    alpha0 = 1.1547
    dim = 40
    kets = [_coherent(dim, s * alpha0) for s in (1, -1)]
    rho = 0.5 * sum(np.outer(k, k.conj()) for k in kets)
    x = np.linspace(-3.5, 3.5, 29)
    p = np.linspace(-2.0, 2.0, 17)
    grid = wigner(rho, x, p)
    xg, pg = x[:, None], p[None, :]
    expected = (np.exp(-(xg - np.sqrt(2) * alpha0) ** 2 - pg**2)
                + np.exp(-(xg + np.sqrt(2) * alpha0) ** 2 - pg**2)) / (2 * np.pi)
    assert np.abs(grid.values - expected).max() < 1e-8
    # mirror-symmetric maxima near the analytic lobe centers
    i, j = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    assert abs(abs(x[i]) - np.sqrt(2) * alpha0) < 0.3
    assert abs(p[j]) < 0.2
    assert np.abs(grid.values - grid.values[::-1, ::-1]).max() < 1e-10


def test_against_displaced_parity_oracle():
    rng = np.random.default_rng(5)
    dim = 25
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    # random state localized on low Fock levels so truncation is immaterial
    weights = np.exp(-0.5 * np.arange(dim))
    m = weights[:, None] * m * weights[None, :]
    rho = m @ m.conj().T
    rho /= np.trace(rho).real
    xs = np.array([-1.3, -0.4, 0.0, 0.7, 1.5])
    ps = np.array([-1.1, 0.2, 0.9])
    grid = wigner(rho, xs, ps)
    for i, x in enumerate(xs):
        for j, p in enumerate(ps):
            assert grid.values[i, j] == pytest.approx(
                _displaced_parity_oracle(rho, x, p), abs=1e-8)


def test_stationary_state_two_lobes():
    params, es, rho, pops = stationary_at(delta=0.0, beta=20.0, dim=30)
    alpha = np.sqrt(2 * params.beta / params.chi)
    # lobes are vacuum-width Gaussians centered at x = +-sqrt(2) alpha; a
    # 3-unit margin keeps the clipped tail mass below 1e-4
    extent = np.sqrt(2) * alpha + 3.0
    axis = np.linspace(-extent, extent, 101)
    grid = wigner(rho, axis, axis)
    assert grid.integral() == pytest.approx(1.0, abs=1e-3)
    assert np.abs(grid.values - grid.values[::-1, ::-1]).max() < 1e-8
    assert np.abs(grid.values).max() <= 1 / np.pi + 1e-8
    i, j = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    assert abs(abs(axis[i]) - np.sqrt(2) * alpha) < 0.3
    assert abs(axis[j]) < 0.15
    # the mirror lobe is present with equal height
    mirrored = grid.values[len(axis) - 1 - i, len(axis) - 1 - j]
    assert mirrored == pytest.approx(grid.values[i, j], rel=1e-6)


def test_non_hermitian_rejected():
    rho = np.zeros((6, 6), dtype=complex)
    rho[0, 0] = 1.0
    rho[0, 1] = 0.5
    with pytest.raises(ValueError):
        wigner(rho, np.array([0.0]), np.array([0.0]))
