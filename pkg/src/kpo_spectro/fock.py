"""Dense operator algebra on a truncated Fock space.

Operators are plain complex128 numpy arrays of shape (dim, dim).  Dimensions
stay small (dim <= 60 in practice), so everything is dense and immutable by
convention: functions never modify their arguments.
"""

import numpy as np

EVEN = 0
ODD = 1
PARITY_NAMES = ("even", "odd")


def build_annihilation(dim: int) -> np.ndarray:
    """Annihilation operator a with a[m, m+1] = sqrt(m+1)."""
    if dim < 2:
        raise ValueError(f"Fock truncation must be >= 2, got {dim}")
    a = np.zeros((dim, dim), dtype=np.complex128)
    n = np.arange(1, dim)
    a[n - 1, n] = np.sqrt(n)
    return a


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def number_operator(dim: int) -> np.ndarray:
    """a^dag a, diagonal (0, 1, ..., dim-1)."""
    return np.diag(np.arange(dim, dtype=np.complex128))


def adjoint(op: np.ndarray) -> np.ndarray:
    return op.conj().T


def matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x @ y


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """[x, y] = xy - yx."""
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x @ y - y @ x


def fock_parities(dim: int) -> np.ndarray:
    """Parity of each Fock state |m>: EVEN for m even, ODD for m odd."""
    return (np.arange(dim) % 2).astype(np.int8)


def parity_operator(dim: int) -> np.ndarray:
    """P = diag((-1)^m)."""
    return np.diag((-1.0 + 0j) ** np.arange(dim))
