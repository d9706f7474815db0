"""Lindblad generator of the driveless rotating-frame master equation.

    drho/dt = -i [H0, rho] + (kappa_tot/2) ([A rho, A^dag] + [A, rho A^dag])

The generator acts on row-stacked density matrices: vec(rho) = rho.reshape(-1)
and vec(A rho B) = (A kron B^T) vec(rho).  The stationary state is obtained
from the null space of the superoperator by replacing one redundant row with
the trace constraint; a fixed-step RK4 integrator serves as an independent
oracle.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import SolverError, SteadyStateError, StepSizeError
from .fock import adjoint, build_annihilation
from .model import ModelParams, build_h0

_HERM_TOL = 1e-10
_PSD_TOL = 1e-8
_TRACE_TOL = 1e-10
_NULL_SPACE_TOL = 1e-8


@dataclass(frozen=True)
class DensityMatrix:
    """Density operator with its basis tag ("fock" or "eigen")."""

    entries: np.ndarray
    basis: str = "fock"

    def __post_init__(self):
        if self.basis not in ("fock", "eigen"):
            raise ValueError(f"unknown basis {self.basis!r}")
        d = self.entries.shape
        if len(d) != 2 or d[0] != d[1]:
            raise ValueError(f"density matrix must be square, got {d}")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def validate(self):
        """Enforce Hermiticity, unit trace and positivity up to solver noise."""
        rho = self.entries
        herm = np.abs(rho - rho.conj().T).max()
        if herm > _HERM_TOL:
            raise SolverError(f"density matrix not Hermitian: defect {herm:.2e}")
        tr = np.trace(rho)
        if abs(tr - 1.0) > _TRACE_TOL:
            raise SolverError(f"density matrix trace {tr} deviates from 1")
        min_eig = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
        if min_eig < -_PSD_TOL:
            raise SolverError(f"density matrix not PSD: min eigenvalue {min_eig:.2e}")


@dataclass(frozen=True)
class LindbladGenerator:
    """Superoperator matrix acting on row-stacked density matrices."""

    matrix: np.ndarray
    dim: int
    kappa_tot: float


def build_hamiltonian_superop(params: ModelParams) -> np.ndarray:
    """-i [H0, .] as a dim^2 x dim^2 matrix."""
    h = build_h0(params)
    eye = sparse.identity(params.dim, dtype=np.complex128, format="csr")
    s = -1j * (sparse.kron(h, eye) - sparse.kron(eye, h.T))
    return s.toarray()


def build_dissipator_superop(params: ModelParams) -> np.ndarray:
    """(kappa_tot/2) ([A ., A^dag] + [A, . A^dag]) as a matrix."""
    d = params.dim
    a = build_annihilation(d)
    n = adjoint(a) @ a
    eye = sparse.identity(d, dtype=np.complex128, format="csr")
    k = params.kappa_tot
    s = k * sparse.kron(a, a.conj())
    s -= 0.5 * k * (sparse.kron(n, eye) + sparse.kron(eye, n.T))
    return s.toarray()


def build_generator(params: ModelParams) -> LindbladGenerator:
    """Full generator; the probe drive plays no role here."""
    mat = build_hamiltonian_superop(params) + build_dissipator_superop(params)
    return LindbladGenerator(matrix=mat, dim=params.dim, kappa_tot=params.kappa_tot)


def _trace_row(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128).reshape(-1)


def steady_state(gen: LindbladGenerator) -> DensityMatrix:
    """Unique stationary state from the generator's null space.

    The row of the (0,0) matrix element is redundant (the trace functional is
    a left null vector of the generator), so it is replaced by the trace
    constraint and the resulting linear system solved directly.
    """
    if gen.kappa_tot <= 0:
        raise SteadyStateError(
            "kappa_tot = 0: closed dynamics has no unique stationary state"
        )
    d = gen.dim
    m = gen.matrix.copy()
    m[0, :] = _trace_row(d)
    b = np.zeros(d * d, dtype=np.complex128)
    b[0] = 1.0
    try:
        x = np.linalg.solve(m, b)
    except np.linalg.LinAlgError as exc:
        _diagnose_null_space(gen, str(exc))
    residual = np.abs(gen.matrix @ x).max()
    scale = np.abs(gen.matrix).max()
    if not np.isfinite(residual) or residual > 1e-10 * scale:
        _diagnose_null_space(gen, f"stationary residual {residual:.2e} vs scale {scale:.2e}")
    rho = x.reshape(d, d)
    herm = np.abs(rho - rho.conj().T).max()
    if herm > _HERM_TOL:
        raise SolverError(
            f"stationary solution asymmetry {herm:.2e} exceeds {_HERM_TOL:.0e}; "
            "generator construction is suspect"
        )
    rho = 0.5 * (rho + rho.conj().T)
    out = DensityMatrix(entries=rho, basis="fock")
    out.validate()
    return out


def _diagnose_null_space(gen: LindbladGenerator, context: str):
    """Distinguish a degenerate stationary manifold from a bad solve."""
    s = np.linalg.svd(gen.matrix, compute_uv=False)
    null_dim = int(np.sum(s < _NULL_SPACE_TOL * s[0]))
    if null_dim > 1:
        raise SteadyStateError(
            f"stationary manifold is {null_dim}-dimensional; no unique steady state",
            null_dimension=null_dim,
        )
    raise SolverError(f"steady-state solve failed: {context}")


def _rk4_update_matrix(gen_matrix: np.ndarray, dt: float) -> np.ndarray:
    """One-step update operator of classical RK4 for the linear system
    x' = S x:  R = I + dt S + (dt S)^2/2 + (dt S)^3/6 + (dt S)^4/24."""
    n = gen_matrix.shape[0]
    sdt = gen_matrix * dt
    r = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    for k in (1, 2, 3, 4):
        term = term @ sdt / k
        r += term
    return r


def evolve(gen: LindbladGenerator, rho0: DensityMatrix, t_final: float, dt: float) -> DensityMatrix:
    """Propagate rho0 to t_final by fixed-step RK4 on the vectorized equation.

    The generator is constant, so n RK4 steps equal the n-th power of the
    one-step update operator; the power is applied by binary exponentiation.
    The guard dt <= 0.1 / max-row-sum(|S|) keeps RK4 well inside its
    stability region.
    """
    if rho0.basis != "fock":
        raise ValueError("evolve expects a Fock-basis density matrix")
    if rho0.dim != gen.dim:
        raise ValueError("density matrix / generator dimension mismatch")
    if t_final < 0 or dt <= 0:
        raise ValueError("t_final must be >= 0 and dt > 0")
    if t_final == 0:
        return rho0
    row_sum = np.abs(gen.matrix).sum(axis=1).max()
    if dt > 0.1 / row_sum:
        raise StepSizeError(
            f"dt = {dt:.3e} violates the stability guard 0.1/max-row-sum = "
            f"{0.1 / row_sum:.3e}"
        )
    n_steps = int(np.ceil(t_final / dt))
    dt_eff = t_final / n_steps
    r = _rk4_update_matrix(gen.matrix, dt_eff)
    x = rho0.entries.reshape(-1).copy()
    # binary exponentiation of the update operator
    k = n_steps
    while k:
        if k & 1:
            x = r @ x
        k >>= 1
        if k:
            r = r @ r
    rho = x.reshape(gen.dim, gen.dim)
    drift = abs(np.trace(rho) - np.trace(rho0.entries))
    if drift > 1e-8:
        raise SolverError(f"RK4 trace drift {drift:.2e} exceeds 1e-8")
    return DensityMatrix(entries=rho, basis="fock")


def populations_in_eigenbasis(rho: DensityMatrix, es) -> np.ndarray:
    """Stationary populations rho_mm in the labeled eigenbasis."""
    if rho.dim != es.dim:
        raise ValueError("density matrix / eigensystem dimension mismatch")
    if rho.basis == "eigen":
        return np.real(np.diag(rho.entries)).copy()
    v = es.eigenvectors
    return np.real(np.diag(v.conj().T @ rho.entries @ v)).copy()
