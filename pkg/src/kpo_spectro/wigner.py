"""Wigner function via the Fock-basis expansion of the displaced parity.

W(x, p) = (1/pi) Tr[rho D(alpha) P D(-alpha)] with alpha = (x + i p)/sqrt(2),
so a coherent state |a0> peaks at (sqrt(2) Re a0, sqrt(2) Im a0) and the
vacuum gives W(0, 0) = 1/pi.  Using P D(-alpha) = D(alpha) P, the kernel is
D(2 alpha) P, whose matrix elements reduce to associated Laguerre
polynomials; each diagonal of rho contributes one Laguerre series, evaluated
with a Clenshaw recursion that is stable in the truncation dimension.

Both signs of the diagonal offset are summed explicitly, so the imaginary
part of the result is a genuine numerical residue (it vanishes analytically
for Hermitian input) and is checked rather than discarded silently.
"""

import numpy as np

from .errors import SolverError
from .lindblad import DensityMatrix

_HERM_TOL = 1e-10
_IMAG_TOL = 1e-10


def _laguerre_series(ell: int, x: np.ndarray, coeffs: np.ndarray):
    """Clenshaw evaluation of sum_n c_n (-1)^n sqrt(ell! n!/(ell+n)!) L_n^ell(x)."""
    if len(coeffs) == 1:
        y0 = coeffs[0]
        y1 = 0.0
    elif len(coeffs) == 2:
        y0 = coeffs[0]
        y1 = coeffs[1]
    else:
        k = len(coeffs)
        y0 = coeffs[-2]
        y1 = coeffs[-1]
        for i in range(3, len(coeffs) + 1):
            k -= 1
            y0, y1 = (
                coeffs[-i] - y1 * np.sqrt(((k - 1) * (ell + k - 1)) / ((ell + k) * k)),
                y0 - y1 * ((ell + 2 * k - 1) - x) * ((ell + k) * k) ** -0.5,
            )
    return y0 - y1 * ((ell + 1) - x) * (ell + 1) ** -0.5


@np.errstate(over="raise")
def _wigner_values(rho: np.ndarray, x_axis: np.ndarray, p_axis: np.ndarray) -> np.ndarray:
    d = rho.shape[0]
    gamma = np.sqrt(2.0) * (x_axis[:, None] + 1j * p_axis[None, :])
    b = np.abs(gamma) ** 2
    total = _laguerre_series(0, b, np.diag(rho).copy()) * np.ones_like(b)
    g_pow = np.ones_like(gamma)
    for ell in range(1, d):
        g_pow = g_pow * gamma / np.sqrt(ell)
        upper = _laguerre_series(ell, b, np.diag(rho, ell).copy())
        lower = _laguerre_series(ell, b, np.diag(rho, -ell).copy())
        total = total + g_pow * upper + np.conj(g_pow) * lower
    return total * np.exp(-0.5 * b) / np.pi


class WignerGrid:
    """Wigner samples on a rectangular (x, p) grid; values[i, j] = W(x_i, p_j)."""

    def __init__(self, x_axis: np.ndarray, p_axis: np.ndarray, values: np.ndarray):
        self.x_axis = x_axis
        self.p_axis = p_axis
        self.values = values

    def integral(self) -> float:
        """Riemann-sum normalization over the grid."""
        dx = np.diff(self.x_axis).mean()
        dp = np.diff(self.p_axis).mean()
        return float(self.values.sum() * dx * dp)


def wigner(rho, x_axis, p_axis) -> WignerGrid:
    """Wigner function of a Fock-basis density matrix on the given axes."""
    if isinstance(rho, DensityMatrix):
        if rho.basis != "fock":
            raise ValueError("wigner expects a Fock-basis density matrix")
        mat = rho.entries
    else:
        mat = np.asarray(rho, dtype=np.complex128)
    herm = np.abs(mat - mat.conj().T).max()
    if herm > _HERM_TOL:
        raise ValueError(f"non-Hermitian input: defect {herm:.2e}")
    x_axis = np.asarray(x_axis, dtype=float)
    p_axis = np.asarray(p_axis, dtype=float)
    values = _wigner_values(mat, x_axis, p_axis)
    residue = np.abs(values.imag).max()
    if residue > _IMAG_TOL:
        raise SolverError(f"Wigner imaginary residue {residue:.2e} exceeds {_IMAG_TOL:.0e}")
    return WignerGrid(x_axis=x_axis, p_axis=p_axis, values=values.real)
