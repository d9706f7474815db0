"""Eigendecomposition of H0 with adiabatic level labels and parities.

Levels are labeled |m~> by continuity in the pump amplitude: at beta = 0 the
label equals the Fock index, and along a beta sweep each label follows the
eigenvector of maximal overlap with its predecessor.  Eigenvalue order is NOT
the public order; the adiabatic label is.

H0 commutes exactly with the photon parity P = diag((-1)^m), so the
diagonalization runs per parity sector.  Eigenvectors then carry definite
parity by construction (minority components exactly zero), and crossings
between opposite-parity levels cannot contaminate the eigenbasis.
"""

from dataclasses import dataclass, replace

import numpy as np

from .fock import adjoint, build_annihilation, fock_parities
from .model import ModelParams, build_h0
from .units import from_mhz

# Internal fallback chain step when diagonalizing at beta > 0 without a hint.
_CHAIN_STEP = from_mhz(0.5)
# Two candidate label assignments closer than this in overlap fitness are
# reported as ambiguous.
_AMBIGUITY_TOL = 1e-6


@dataclass(frozen=True)
class EigenSystem:
    """Labeled eigensystem of H0.

    Arrays are ordered by adiabatic label: eigenvalues[m] and
    eigenvectors[:, m] belong to |m~>.  x_matrix[m, n] = <phi_m|a|phi_n> and
    y_matrix[m, n] = <phi_m|a^dag a|phi_n>.  parities holds fock.EVEN/ODD per
    label.  ambiguous is True when some label assignment along the internal
    continuation was a near-tie (resolved by eigenvalue proximity).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    parities: np.ndarray
    x_matrix: np.ndarray
    y_matrix: np.ndarray
    ambiguous: bool = False

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def _sector_eigh(h0: np.ndarray):
    """Eigenpairs of h0 computed per parity sector.

    Returns (eigenvalues, eigenvectors, parities) sorted by ascending
    eigenvalue; eigenvectors are exactly parity-pure.
    """
    d = h0.shape[0]
    vals = np.empty(d)
    vecs = np.zeros((d, d), dtype=np.complex128)
    pars = np.empty(d, dtype=np.int8)
    pos = 0
    for parity in (0, 1):
        idx = np.arange(parity, d, 2)
        w, v = np.linalg.eigh(h0[np.ix_(idx, idx)])
        block = slice(pos, pos + idx.size)
        vals[block] = w
        vecs[np.ix_(idx, np.arange(pos, pos + idx.size))] = v
        pars[block] = parity
        pos += idx.size
    order = np.argsort(vals, kind="stable")
    return vals[order], vecs[:, order], pars[order]


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    out = vecs.copy()
    for j in range(out.shape[1]):
        k = np.argmax(np.abs(out[:, j]))
        pivot = out[k, j]
        if pivot != 0:
            out[:, j] *= np.conj(pivot) / abs(pivot)
    return out


def _assign_labels(prev_vecs, prev_vals, vals, vecs):
    """Greedy maximal-overlap matching of new eigenvectors to previous labels.

    Returns (permutation, ambiguous): permutation[label] = column index into
    vecs.  Ties within _AMBIGUITY_TOL in |overlap|^2 are broken by eigenvalue
    proximity and flagged.
    """
    d = prev_vecs.shape[1]
    overlap = np.abs(prev_vecs.conj().T @ vecs) ** 2
    work = overlap.copy()
    perm = np.full(d, -1, dtype=int)
    ambiguous = False
    for _ in range(d):
        r, c = np.unravel_index(np.argmax(work), work.shape)
        best = work[r, c]
        row = work[r]
        contenders = np.flatnonzero(row > best - _AMBIGUITY_TOL)
        if contenders.size > 1:
            ambiguous = True
            c = contenders[np.argmin(np.abs(vals[contenders] - prev_vals[r]))]
        perm[r] = c
        work[r, :] = -1.0
        work[:, c] = -1.0
    return perm, ambiguous


def _beta_zero_system(params: ModelParams) -> EigenSystem:
    # H0 is exactly diagonal at beta = 0; labels are Fock indices.
    h0 = build_h0(replace(params, beta=0.0))
    d = params.dim
    a = build_annihilation(d)
    return EigenSystem(
        eigenvalues=np.real(np.diag(h0)).copy(),
        eigenvectors=np.eye(d, dtype=np.complex128),
        parities=fock_parities(d),
        x_matrix=a.copy(),
        y_matrix=(adjoint(a) @ a),
    )


def _labeled_step(h0, prev: EigenSystem) -> EigenSystem:
    vals, vecs, pars = _sector_eigh(h0)
    perm, ambiguous = _assign_labels(prev.eigenvectors, prev.eigenvalues, vals, vecs)
    vecs = _fix_phases(vecs[:, perm])
    d = h0.shape[0]
    a = build_annihilation(d)
    x = vecs.conj().T @ a @ vecs
    y = vecs.conj().T @ (adjoint(a) @ a) @ vecs
    return EigenSystem(
        eigenvalues=vals[perm],
        eigenvectors=vecs,
        parities=pars[perm],
        x_matrix=x,
        y_matrix=y,
        ambiguous=ambiguous or prev.ambiguous,
    )


def diagonalize(
    h0: np.ndarray,
    params: ModelParams,
    labeling_hint: EigenSystem | None = None,
) -> EigenSystem:
    """Diagonalize h0 and label levels adiabatically.

    With a labeling_hint (the eigensystem of a nearby parameter point) labels
    continue from the hint.  Without one, beta = 0 is labeled by Fock index
    directly and beta > 0 falls back to an internal sweep from beta = 0.
    """
    if h0.shape != (params.dim, params.dim):
        raise ValueError(f"h0 shape {h0.shape} does not match dim {params.dim}")
    if labeling_hint is not None:
        if labeling_hint.dim != params.dim:
            raise ValueError("labeling_hint dimension mismatch")
        return _labeled_step(h0, labeling_hint)
    if params.beta == 0.0:
        return _beta_zero_system(params)
    prev = _beta_zero_system(params)
    n_steps = max(1, int(np.ceil(params.beta / _CHAIN_STEP)))
    for b in np.linspace(0.0, params.beta, n_steps + 1)[1:-1]:
        prev = _labeled_step(build_h0(replace(params, beta=float(b))), prev)
    return _labeled_step(h0, prev)


def eigensystem_sweep(params: ModelParams, beta_grid) -> list[EigenSystem]:
    """Eigensystems along an ascending beta grid with chained labels."""
    beta_grid = np.asarray(beta_grid, dtype=float)
    if beta_grid.ndim != 1 or beta_grid.size == 0:
        raise ValueError("beta_grid must be a non-empty 1-D array")
    if np.any(np.diff(beta_grid) <= 0) and beta_grid.size > 1:
        raise ValueError("beta_grid must be strictly ascending")
    out = []
    prev = None
    for b in beta_grid:
        p = replace(params, beta=float(b))
        if prev is None:
            es = diagonalize(build_h0(p), p)
        else:
            es = _labeled_step(build_h0(p), prev)
        out.append(es)
        prev = es
    return out


def transition_frequencies(es: EigenSystem) -> np.ndarray:
    """Antisymmetric matrix T[n, m] = omega_n - omega_m for |m~> -> |n~>."""
    return np.subtract.outer(es.eigenvalues, es.eigenvalues)


@dataclass(frozen=True)
class EnergyDiagram:
    """Adiabatic level energies along a beta grid (labels 0 .. level_cut-1)."""

    beta_grid: np.ndarray
    omegas: np.ndarray        # shape (len(beta_grid), level_cut)
    parities: np.ndarray      # shape (level_cut,), constant along the sweep
    ambiguous: np.ndarray     # per-beta ambiguity flags


def energy_diagram(params: ModelParams, beta_grid, level_cut: int = 4) -> EnergyDiagram:
    systems = eigensystem_sweep(params, beta_grid)
    if level_cut > params.dim:
        raise ValueError("level_cut exceeds dim")
    omegas = np.array([es.eigenvalues[:level_cut] for es in systems])
    flags = np.array([es.ambiguous for es in systems])
    return EnergyDiagram(
        beta_grid=np.asarray(beta_grid, dtype=float),
        omegas=omegas,
        parities=systems[0].parities[:level_cut].copy(),
        ambiguous=flags,
    )
