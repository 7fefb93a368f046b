"""Physical constants and normalized-flux arithmetic.

Everything in this package computes in SI.  Magnetic flux is swept in the
dimensionless coordinate phi = Phi/Phi0, with Phi0 = 2*pi*hbar/q the flux
quantum of the carrier charge q (q = 2e for Cooper pairs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

TWO_PI = 2.0 * math.pi

# 2018 CODATA values, pinned as literals so results do not drift with
# library upgrades.
HBAR = 1.054571817e-34      # J s
K_B = 1.380649e-23          # J/K
E_CHARGE = 1.602176634e-19  # C
M_E = 9.1093837015e-31      # kg
MU_0 = 1.25663706212e-6     # T m/A
MU_B = 9.2740100783e-24     # J/T
AMU = 1.66053906660e-27     # kg

PAIR_CHARGE = 2.0 * E_CHARGE  # C, Cooper pair
PAIR_MASS = 2.0 * M_E         # kg, Cooper pair


@dataclass(frozen=True)
class Constants:
    """The constant set used by every model in the package."""

    hbar: float = HBAR
    k_B: float = K_B
    e: float = E_CHARGE
    m_e: float = M_E
    mu_0: float = MU_0
    mu_B: float = MU_B
    amu: float = AMU

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0.0:
                raise DomainError(f"constant {name} must be positive, got {value}")


CODATA = Constants()


def flux_quantum(q: float = PAIR_CHARGE) -> float:
    """Flux periodicity unit 2*pi*hbar/q for carrier charge q, in Wb."""
    if not q > 0.0:
        raise DomainError(f"carrier charge must be positive, got {q}")
    return TWO_PI * HBAR / q


@dataclass(frozen=True)
class FluxPoint:
    """Magnetic flux through a loop, in absolute and normalized form.

    phi_norm = phi_abs / flux_quantum(q) holds exactly for the carrier
    charge q the point was built with.
    """

    phi_abs: float   # Wb
    phi_norm: float  # Phi / Phi0, dimensionless
    q: float         # C, carrier charge of the normalization

    @classmethod
    def from_flux(cls, phi_abs: float, q: float = PAIR_CHARGE) -> "FluxPoint":
        return cls(phi_abs=phi_abs, phi_norm=phi_abs / flux_quantum(q), q=q)

    @classmethod
    def from_norm(cls, phi_norm: float, q: float = PAIR_CHARGE) -> "FluxPoint":
        return cls(phi_abs=phi_norm * flux_quantum(q), phi_norm=phi_norm, q=q)


def normalize_flux(phi_abs: float, q: float = PAIR_CHARGE) -> FluxPoint:
    """Absolute flux in Wb -> FluxPoint carrying phi/Phi0 for charge q."""
    return FluxPoint.from_flux(phi_abs, q)


def denormalize_flux(point: FluxPoint) -> float:
    """Inverse of normalize_flux, back to Wb."""
    return point.phi_norm * flux_quantum(point.q)


def as_phi(phi) -> float:
    """Accept a FluxPoint or a plain number; return normalized flux."""
    if isinstance(phi, FluxPoint):
        return phi.phi_norm
    return float(phi)
