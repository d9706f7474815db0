"""Unit conversions at the package boundary.

All frequencies are angular frequencies in rad/s internally.  Configuration
files and CSV artifacts quote values as "f/2pi" in MHz (or GHz for circuit
energies), matching how superconducting-circuit parameters are usually
reported.
"""

import math

TWO_PI = 2.0 * math.pi


def from_mhz(value: float) -> float:
    """(value/2pi in MHz) -> angular frequency in rad/s."""
    return TWO_PI * 1e6 * value


def to_mhz(value: float) -> float:
    """Angular frequency in rad/s -> value/2pi in MHz."""
    return value / (TWO_PI * 1e6)


def from_ghz(value: float) -> float:
    """(value/2pi in GHz) -> angular frequency in rad/s; also used for E/h in GHz -> E/hbar."""
    return TWO_PI * 1e9 * value


def to_ghz(value: float) -> float:
    return value / (TWO_PI * 1e9)
