"""Reflection coefficient of the pumped parametron.

Probe frequencies are handled as detunings from half the pump frequency,
delta_probe = omega_in - omega_p/2, which is the only combination the
rotating-frame equations see.  Two routes are provided:

* ``weak_field_gamma`` - closed-form weak-probe limit.  Each ordered level
  pair (m~, n~) contributes a Lorentzian-like term

      kappa_ex |X_mn|^2 (rho_mm - rho_nn)
      -----------------------------------------------
      i Delta_nm - (kappa_tot/2) (Y_mm + Y_nn)

  on top of the unit background, with Delta_nm = delta_probe - omega_n +
  omega_m and stationary populations taken from the driveless Lindblad
  steady state.  The unit background enters once, not once per pair.

* ``finite_drive_gamma`` - harmonic balance at finite probe strength Omega.
  The Fourier-decomposed density-matrix equations are truncated to diagonal
  elements at harmonic 0 and off-diagonal elements at harmonics +-1, within
  the lowest ``level_cut`` labeled levels (default 6), and solved as one real
  linear system per probe point together with the trace constraint.

Per-transition nominal decay rates follow

    kappa_ex~ = kappa_ex |X_mn|^2 (rho_mm - rho_nn)
    kappa_int~ = kappa_tot (Y_mm + Y_nn) - kappa_ex~

so kappa_ex~ + kappa_int~ = kappa_tot (Y_mm + Y_nn) exactly.  Note the
lineshape denominator carries (kappa_ex~ + kappa_int~)/2 at resonance.
"""

from dataclasses import dataclass

import numpy as np

from .eigensystem import EigenSystem
from .errors import SolverError
from .model import ModelParams

DEFAULT_LEVEL_CUT = 8
DEFAULT_HARMONIC_LEVELS = 6


@dataclass(frozen=True)
class TransitionDescriptor:
    """One ordered transition |m~> -> |n~> and the quantities entering Gamma."""

    m: int
    n: int
    x_element: complex
    y_mm: float
    y_nn: float
    pop_m: float
    pop_n: float
    omega_m: float
    omega_n: float

    def detuning(self, delta_probe):
        """Delta_nm = (omega_in - omega_p/2) - omega_n + omega_m."""
        return delta_probe - self.omega_n + self.omega_m


@dataclass(frozen=True)
class SpectrumTrace:
    """Reflection coefficient samples over a probe grid."""

    probe_grid: np.ndarray
    gamma: np.ndarray
    per_transition: dict | None
    nominal_rates: dict


@dataclass(frozen=True)
class HarmonicState:
    """Truncated Fourier blocks of the driven density matrix.

    diag_block holds rho_mm[0]; offdiag_plus / offdiag_minus hold
    rho_mn[+-(omega_in - omega_p/2)] with zero diagonals.  Hermiticity across
    harmonics, offdiag_minus[m, n] = conj(offdiag_plus[n, m]), holds by
    construction.
    """

    diag_block: np.ndarray
    offdiag_plus: np.ndarray
    offdiag_minus: np.ndarray
    level_cut: int


def transitions(
    params: ModelParams,
    es: EigenSystem,
    pops: np.ndarray,
    level_cut: int = DEFAULT_LEVEL_CUT,
) -> list[TransitionDescriptor]:
    """All ordered pairs among the lowest ``level_cut`` labels."""
    level_cut = min(level_cut, es.dim)
    out = []
    y = np.real(np.diag(es.y_matrix))
    for m in range(level_cut):
        for n in range(level_cut):
            if m == n:
                continue
            out.append(
                TransitionDescriptor(
                    m=m,
                    n=n,
                    x_element=complex(es.x_matrix[m, n]),
                    y_mm=float(y[m]),
                    y_nn=float(y[n]),
                    pop_m=float(pops[m]),
                    pop_n=float(pops[n]),
                    omega_m=float(es.eigenvalues[m]),
                    omega_n=float(es.eigenvalues[n]),
                )
            )
    return out


def nominal_rates(
    params: ModelParams,
    es: EigenSystem,
    pops: np.ndarray,
    m: int,
    n: int,
) -> tuple[float, float]:
    """Nominal external and internal decay rates of the |m~> -> |n~> feature."""
    y = np.real(np.diag(es.y_matrix))
    kex_t = params.kappa_ex * abs(es.x_matrix[m, n]) ** 2 * (pops[m] - pops[n])
    kint_t = params.kappa_tot * (y[m] + y[n]) - kex_t
    return float(kex_t), float(kint_t)


def eta(es: EigenSystem, pops: np.ndarray, m: int, n: int) -> float:
    """Peak/dip indicator: eta > 0 means a peak at the |m~> -> |n~> resonance."""
    return float(-abs(es.x_matrix[m, n]) ** 2 * (pops[m] - pops[n]))


def weak_field_gamma(
    params: ModelParams,
    es: EigenSystem,
    pops: np.ndarray,
    probe_grid,
    level_cut: int = DEFAULT_LEVEL_CUT,
    per_transition: bool = False,
) -> SpectrumTrace:
    """Weak-probe reflection coefficient over a probe-detuning grid."""
    if params.kappa_tot <= 0:
        raise SolverError("kappa_tot must be > 0 for the weak-field spectrum")
    probe_grid = np.atleast_1d(np.asarray(probe_grid, dtype=float))
    trans = transitions(params, es, pops, level_cut)
    gamma = np.ones(probe_grid.shape, dtype=np.complex128)
    per = {} if per_transition else None
    rates = {}
    half_k = 0.5 * params.kappa_tot
    for t in trans:
        numer = params.kappa_ex * abs(t.x_element) ** 2 * (t.pop_m - t.pop_n)
        denom = 1j * t.detuning(probe_grid) - half_k * (t.y_mm + t.y_nn)
        if np.any(denom == 0):
            raise SolverError(
                f"singular denominator for transition ({t.m}, {t.n}): "
                "Y_mm + Y_nn and the detuning vanish simultaneously"
            )
        term = numer / denom
        gamma += term
        rates[(t.m, t.n)] = nominal_rates(params, es, pops, t.m, t.n)
        if per is not None:
            per[(t.m, t.n)] = term
    return SpectrumTrace(
        probe_grid=probe_grid, gamma=gamma, per_transition=per, nominal_rates=rates
    )


class _HarmonicSystem:
    """Assembled finite-drive linear system, reusable across probe points.

    Unknowns are packed as [D_0..D_{M-1}, Re P, Im P] where D are the
    harmonic-0 diagonal elements and P the harmonic -1 off-diagonal elements
    over ordered pairs.  Only the probe detuning enters per point, as
    i * delta_probe on the diagonal of the P block.
    """

    def __init__(self, params: ModelParams, es: EigenSystem, level_cut: int):
        if params.omega_drive <= 0:
            raise ValueError("finite-drive solver requires omega_drive > 0")
        m_cut = min(level_cut, es.dim)
        self.level_cut = m_cut
        self.kappa_ex = params.kappa_ex
        self.omega_drive = params.omega_drive
        x = es.x_matrix[:m_cut, :m_cut]
        y = es.y_matrix[:m_cut, :m_cut]
        w = es.eigenvalues[:m_cut]
        ktot = params.kappa_tot
        omd = params.omega_drive
        pairs = [(m, n) for m in range(m_cut) for n in range(m_cut) if m != n]
        self.pairs = pairs
        self.x = x
        pid = {p: i for i, p in enumerate(pairs)}
        n_pairs = len(pairs)

        # complex coefficients of the pair (harmonic -1) equations
        a_pd = np.zeros((n_pairs, m_cut), dtype=np.complex128)
        a_pp = np.zeros((n_pairs, n_pairs), dtype=np.complex128)
        for i, (m, n) in enumerate(pairs):
            a_pp[i, pid[(m, n)]] += 1j * (w[n] - w[m])
            a_pd[i, n] += -1j * omd * np.conj(x[n, m])
            a_pd[i, m] += 1j * omd * np.conj(x[n, m])
            for k, l in pairs:
                a_pp[i, pid[(k, l)]] += ktot * x[m, k] * np.conj(x[n, l])
            for k in range(m_cut):
                if k != n:
                    a_pp[i, pid[(k, n)]] += -0.5 * ktot * y[m, k]
                if k != m:
                    a_pp[i, pid[(m, k)]] += -0.5 * ktot * np.conj(y[n, k])

        size = m_cut + 2 * n_pairs
        base = np.zeros((size, size))
        rhs = np.zeros(size)
        # trace constraint replaces the redundant m = 0 diagonal equation
        base[0, :m_cut] = 1.0
        rhs[0] = 1.0
        for m in range(1, m_cut):
            row = base[m]
            for k in range(m_cut):
                if k != m:
                    row[k] += ktot * abs(x[m, k]) ** 2
            row[m] -= ktot * np.real(y[m, m])
            for k in range(m_cut):
                if k == m:
                    continue
                i_km = pid[(k, m)]
                i_mk = pid[(m, k)]
                # 2*Omega*(Im(X_mk P_km) - Im(X_km P_mk)) from the drive
                row[m_cut + i_km] += 2 * omd * np.imag(x[m, k])
                row[m_cut + n_pairs + i_km] += 2 * omd * np.real(x[m, k])
                row[m_cut + i_mk] -= 2 * omd * np.imag(x[k, m])
                row[m_cut + n_pairs + i_mk] -= 2 * omd * np.real(x[k, m])
        # embed the complex pair equations as real rows
        p_re = slice(m_cut, m_cut + n_pairs)
        p_im = slice(m_cut + n_pairs, size)
        base[p_re, :m_cut] = a_pd.real
        base[p_re, p_re] = a_pp.real
        base[p_re, p_im] = -a_pp.imag
        base[p_im, :m_cut] = a_pd.imag
        base[p_im, p_re] = a_pp.imag
        base[p_im, p_im] = a_pp.real
        self._pid = pid
        self._n_pairs = n_pairs
        self._base = base
        self._rhs = rhs

    def solve(self, delta_probe: float) -> HarmonicState:
        m_cut = self.level_cut
        n_pairs = self._n_pairs
        a = self._base.copy()
        # i*delta_probe on the P diagonal: Re rows get -delta on Im P,
        # Im rows get +delta on Re P
        idx = np.arange(n_pairs)
        a[m_cut + idx, m_cut + n_pairs + idx] -= delta_probe
        a[m_cut + n_pairs + idx, m_cut + idx] += delta_probe
        try:
            sol = np.linalg.solve(a, self._rhs)
        except np.linalg.LinAlgError as exc:
            raise SolverError(
                f"finite-drive system singular at delta_probe = {delta_probe!r}: {exc}",
                condition_number=float(np.linalg.cond(a)),
            ) from exc
        diag = sol[:m_cut]
        p = sol[m_cut:m_cut + n_pairs] + 1j * sol[m_cut + n_pairs:]
        minus = np.zeros((m_cut, m_cut), dtype=np.complex128)
        for (m, n), i in self._pid.items():
            minus[m, n] = p[i]
        plus = minus.conj().T
        return HarmonicState(
            diag_block=diag, offdiag_plus=plus, offdiag_minus=minus, level_cut=m_cut
        )

    def gamma(self, state: HarmonicState) -> complex:
        s = np.sum(self.x * state.offdiag_minus.T)
        return complex(1.0 - 1j * self.kappa_ex / self.omega_drive * s)


def solve_harmonic_state(
    params: ModelParams,
    es: EigenSystem,
    delta_probe: float,
    level_cut: int = DEFAULT_HARMONIC_LEVELS,
) -> HarmonicState:
    """Truncated Fourier blocks of the driven stationary density matrix."""
    return _HarmonicSystem(params, es, level_cut).solve(delta_probe)


def finite_drive_gamma(
    params: ModelParams,
    es: EigenSystem,
    delta_probe,
    level_cut: int = DEFAULT_HARMONIC_LEVELS,
):
    """Reflection coefficient at finite probe strength params.omega_drive.

    delta_probe may be a scalar (returns complex) or an array (returns a
    complex array); each probe point is an independent linear solve.
    """
    system = _HarmonicSystem(params, es, level_cut)
    grid = np.atleast_1d(np.asarray(delta_probe, dtype=float))
    out = np.array([system.gamma(system.solve(float(d))) for d in grid])
    if np.isscalar(delta_probe) or np.asarray(delta_probe).ndim == 0:
        return complex(out[0])
    return out
