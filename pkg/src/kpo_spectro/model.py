"""Physical parameters and the rotating-frame Hamiltonian of the parametron.

The rotating frame co-rotates at half the pump frequency, where the pumped
Kerr oscillator is described by the time-independent

    H0 = delta * a^dag a - (chi/2) * a^dag^2 a^2 + beta * (a^2 + a^dag^2)

in angular-frequency units (hbar divided out).  ``delta`` is the detuning
omega - chi - omega_p/2 between the Kerr-shifted resonance and half the pump
frequency.  Circuit parameters of a SQUID-array resonator map onto
(omega, chi, beta) through a fourth-order expansion of the junction cosine.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ModelValidityError
from .fock import adjoint, build_annihilation

# Expansion-validity bounds for the circuit-to-model mapping.  The expansion
# parameter phi0/N and the dropped quartic pump term chi*beta/omega^2 must be
# small; the exact thresholds are engineering choices.
PHI0_OVER_N_MAX = 0.5
CHI_BETA_OVER_OMEGA_SQ_MAX = 1e-3


@dataclass(frozen=True)
class ModelParams:
    """Rotating-frame model parameters, all angular frequencies in rad/s.

    omega_drive is the probe drive strength Omega = sqrt(v_b * kappa_ex) * E;
    the transmission-line amplitude E and phase velocity v_b never appear
    separately.
    """

    delta: float
    chi: float
    beta: float
    kappa_ex: float
    kappa_int: float
    omega_drive: float = 0.0
    dim: int = 30

    def __post_init__(self):
        if self.chi <= 0:
            raise ModelValidityError(f"chi must be > 0, got {self.chi}")
        for name in ("beta", "kappa_ex", "kappa_int", "omega_drive"):
            if getattr(self, name) < 0:
                raise ModelValidityError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.dim < 2:
            raise ModelValidityError(f"dim must be >= 2, got {self.dim}")

    @property
    def kappa_tot(self) -> float:
        return self.kappa_ex + self.kappa_int


@dataclass(frozen=True)
class CircuitParams:
    """SQUID-array resonator parameters.

    Energies are stored divided by hbar (rad/s): e_c = E_C/hbar etc., so the
    mapping formulas hold without explicit hbar.  A quoted E_C/h of f GHz
    corresponds to e_c = 2*pi*1e9*f.
    """

    e_c: float
    e_j: float
    n_squid: int
    delta_e_j: float
    omega_p: float

    def __post_init__(self):
        if self.e_c <= 0 or self.e_j <= 0:
            raise ModelValidityError("e_c and e_j must be > 0")
        if self.n_squid < 1:
            raise ModelValidityError(f"n_squid must be >= 1, got {self.n_squid}")
        if self.delta_e_j < 0:
            raise ModelValidityError("delta_e_j must be >= 0")
        if not 0 <= self.delta_e_j < self.e_j:
            raise ModelValidityError("delta_e_j must be smaller than e_j")


@dataclass(frozen=True)
class CircuitDerived:
    """Quantities derived from CircuitParams (angular frequencies / pure numbers)."""

    omega: float
    chi: float
    beta: float
    delta: float
    n0_sq: float
    phi0_sq: float


def build_h0(params: ModelParams) -> np.ndarray:
    """Rotating-frame Hamiltonian matrix in rad/s (Hermitian, real symmetric)."""
    a = build_annihilation(params.dim)
    ad = adjoint(a)
    n = ad @ a
    return (
        params.delta * n
        - 0.5 * params.chi * (ad @ ad @ a @ a)
        + params.beta * (a @ a + ad @ ad)
    )


def circuit_derived(circuit: CircuitParams) -> CircuitDerived:
    """Map circuit parameters to model parameters, enforcing expansion validity."""
    n = circuit.n_squid
    omega = np.sqrt(8.0 * circuit.e_c * circuit.e_j / n)
    chi = circuit.e_c / n**2
    beta = omega * circuit.delta_e_j / (8.0 * circuit.e_j)
    delta = omega - chi - 0.5 * circuit.omega_p
    n0_sq = np.sqrt(circuit.e_j / (32.0 * n * circuit.e_c))
    phi0_sq = np.sqrt(2.0 * n * circuit.e_c / circuit.e_j)

    phi0_over_n = 2.0 * np.sqrt(chi / omega)
    if phi0_over_n >= PHI0_OVER_N_MAX:
        raise ModelValidityError(
            f"phi0/N = {phi0_over_n:.4f} exceeds the expansion bound "
            f"{PHI0_OVER_N_MAX} (cos(phi/N) expansion invalid)"
        )
    chi_beta = chi * beta / omega**2
    if chi_beta >= CHI_BETA_OVER_OMEGA_SQ_MAX:
        raise ModelValidityError(
            f"chi*beta/omega^2 = {chi_beta:.2e} exceeds the bound "
            f"{CHI_BETA_OVER_OMEGA_SQ_MAX} (dropped quartic pump term not negligible)"
        )
    return CircuitDerived(omega=omega, chi=chi, beta=beta, delta=delta,
                          n0_sq=n0_sq, phi0_sq=phi0_sq)


def circuit_to_model(
    circuit: CircuitParams,
    *,
    kappa_ex: float = 0.0,
    kappa_int: float = 0.0,
    omega_drive: float = 0.0,
    dim: int = 30,
) -> ModelParams:
    """Build ModelParams from a circuit description; decay rates are not
    derivable from the circuit and default to zero."""
    d = circuit_derived(circuit)
    return ModelParams(
        delta=d.delta,
        chi=d.chi,
        beta=d.beta,
        kappa_ex=kappa_ex,
        kappa_int=kappa_int,
        omega_drive=omega_drive,
        dim=dim,
    )
