"""Observability bounds for quantum behaviour of large particles.

Closed-form estimates: how long a two-slit interference run must take for
a particle of a given size, how cold a ring experiment must be to resolve
its discrete orbit spectrum, moment differences of loop states, the
flux-shifted two-slit pattern, and the time-of-flight uncertainty-product
estimator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

from .errors import DomainError
from .quantities import (
    E_CHARGE,
    FluxPoint,
    HBAR,
    K_B,
    M_E,
    MU_B,
    TWO_PI,
)

DEFAULT_MASS_DENSITY = 1e3  # kg/m^3, typical of organic matter


@dataclass(frozen=True)
class ParticleSpec:
    """A compact particle of size a; mass defaults to g*a^3 (no shape factor)."""

    a: float                          # m
    g: float = DEFAULT_MASS_DENSITY   # kg/m^3
    v: float | None = None            # m/s, only needed for wavelength reports
    m: float | None = None            # kg, derived g*a^3 unless given

    def __post_init__(self):
        if not self.a > 0.0 or not self.g > 0.0:
            raise DomainError("particle size and density must be positive")
        if self.v is not None and not self.v > 0.0:
            raise DomainError("particle velocity must be positive")
        if self.m is None:
            object.__setattr__(self, "m", self.g * self.a**3)
        elif not self.m > 0.0:
            raise DomainError("particle mass must be positive")

    @property
    def mass(self) -> float:
        return self.m


def de_broglie_wavelength(m: float, v: float) -> float:
    """2*pi*hbar / (m*v), in m."""
    if not (m > 0.0 and v > 0.0):
        raise DomainError("mass and velocity must be positive")
    return TWO_PI * HBAR / (m * v)


def interference_time_bound(p: ParticleSpec) -> float:
    """Minimum duration of a two-slit run resolving a particle of size a.

    The fringe period must exceed a, which forces a flight path longer than
    a^2 over the de Broglie wavelength; with m = g*a^3 the transit time is
    (g / (2*pi*hbar)) * a^5, independent of the velocity.  About
    1.5e-9 s per nm^5 at g = 1e3 kg/m^3: seconds for a 60 nm particle,
    years beyond a micrometre.
    """
    return p.g * p.a**5 / (TWO_PI * HBAR)


def bohr_temperature_bound(p: ParticleSpec) -> float:
    """Temperature below which the orbit spectrum of a particle of size a
    is resolvable: hbar^2 / (2 g k_B a^5), the first level gap of a ring
    with r = a over k_B.  About 3e-4 K at 1 nm, falling as a^-5."""
    return HBAR**2 / (2.0 * p.g * K_B * p.a**5)


def orbit_gap(m: float, r: float, n: int = 0) -> tuple[float, float]:
    """Energy gap (hbar^2 / (2 m r^2)) * (2n + 1) between orbit n and n+1
    of a single particle on a ring, and its equivalent temperature.

    Returns (energy in J, energy/k_B in K).
    """
    if not (m > 0.0 and r > 0.0):
        raise DomainError("mass and radius must be positive")
    if n < 0:
        raise DomainError(f"quantum number must be non-negative, got {n}")
    energy = HBAR**2 / (2.0 * m * r**2) * (2 * n + 1)
    return energy, energy / K_B


def fermi_quantum_number(m: float, v_f: float, r: float) -> int:
    """Quantum number m*v_f*r/hbar of a carrier at the Fermi velocity."""
    return round(m * v_f * r / HBAR)


class MomentDifference(NamedTuple):
    magnetic_mu_B: float   # Bohr magnetons
    angular_hbar: float    # units of hbar


def moment_difference(S: float, I_p: float) -> MomentDifference:
    """Magnetic and angular momentum split 2*S*I_p between the two loop
    states carrying +/-I_p around an area S.

    The magnetic difference is returned in Bohr magnetons, the angular
    momentum difference (2 m_e/e times the magnetic one) in units of hbar.
    For S = 1 um^2 and I_p = 0.5 uA both are about 1e5.
    """
    if not (S > 0.0 and I_p > 0.0):
        raise DomainError("loop area and current must be positive")
    d_magnetic = 2.0 * S * I_p
    d_angular = (2.0 * M_E / E_CHARGE) * d_magnetic
    return MomentDifference(
        magnetic_mu_B=d_magnetic / MU_B,
        angular_hbar=d_angular / HBAR,
    )


@dataclass(frozen=True)
class TwoSlitSetup:
    """Arrival amplitudes of the two paths and the flux they enclose.

    The flux point must be normalized for the electron charge; use
    TwoSlitSetup.with_flux for that.
    """

    a1: float
    a2: float
    phi: FluxPoint

    def __post_init__(self):
        if self.a1 < 0.0 or self.a2 < 0.0:
            raise DomainError("arrival amplitudes must be non-negative")

    @classmethod
    def with_flux(cls, a1: float, a2: float, phi_abs: float) -> "TwoSlitSetup":
        return cls(a1=a1, a2=a2, phi=FluxPoint.from_flux(phi_abs, q=E_CHARGE))

    @classmethod
    def with_norm_flux(cls, a1: float, a2: float, phi_norm: float) -> "TwoSlitSetup":
        return cls(a1=a1, a2=a2, phi=FluxPoint.from_norm(phi_norm, q=E_CHARGE))


def two_slit_pattern(setup: TwoSlitSetup, delta_geo):
    """Arrival probability density at geometric phase difference delta_geo.

    P = A1^2 + A2^2 + 2 A1 A2 cos(delta_geo + 2*pi*phi): the enclosed flux
    shifts the fringes but cannot change the total transmission.
    Accepts a scalar or an array of phase differences.
    """
    shift = TWO_PI * setup.phi.phi_norm
    return (
        setup.a1**2
        + setup.a2**2
        + 2.0 * setup.a1 * setup.a2 * np.cos(np.asarray(delta_geo) + shift)
    )


def two_slit_transmission(setup: TwoSlitSetup) -> float:
    """Mean of the pattern over one full fringe period, by quadrature.

    Equals A1^2 + A2^2 for every enclosed flux: the fringes move, the
    transmitted total does not.
    """
    total, _ = quad(lambda d: float(two_slit_pattern(setup, d)), 0.0, TWO_PI)
    return total / TWO_PI


class UncertaintyCheck(NamedTuple):
    product: float     # m^2/s, delta_z * delta_v_z
    threshold: float   # m^2/s, hbar / (2 m)
    violated: bool     # product below the threshold


def uncertainty_product(
    z: float, t: float, dz: float, dt: float, m: float
) -> UncertaintyCheck:
    """Time-of-flight estimate of the position-velocity uncertainty product.

    A particle timed over a distance z has v_z = z/t known to
    dv_z = v_z*(dz/z + dt/t); the product dz*dv_z shrinks with the flight
    distance and eventually falls below hbar/(2m).

    Requires z > 10*dz and t > 10*dt so the relative-error expansion holds.
    """
    if not (z > 0.0 and t > 0.0 and m > 0.0):
        raise DomainError("distance, time and mass must be positive")
    if dz < 0.0 or dt < 0.0:
        raise DomainError("inaccuracies must be non-negative")
    if z <= 10.0 * dz:
        raise DomainError(f"need z >> dz (z/dz > 10), got z/dz = {z / dz:.3g}")
    if dt > 0.0 and t <= 10.0 * dt:
        raise DomainError(f"need t >> dt (t/dt > 10), got t/dt = {t / dt:.3g}")
    v_z = z / t
    product = dz * v_z * (dz / z + dt / t)
    threshold = HBAR / (2.0 * m)
    return UncertaintyCheck(
        product=product, threshold=threshold, violated=product < threshold
    )
