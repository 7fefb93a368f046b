"""Static model of a superconducting loop.

Permitted states of the pair condensate in a ring, their velocities,
energies and persistent currents, fluxoid/Meissner quantization for the
three wall regimes, screening, angular-momentum bookkeeping and
critical-current curves.

Conventions: phi is the applied flux in units of the flux quantum of the
carrier charge (self-field corrections are opt-in, see
self_consistent_flux); the condensate energy is referenced to its minimum
at n = phi.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

from .errors import ConfigError, DomainError, NoCondensateError
from .quantities import (
    E_CHARGE,
    HBAR,
    M_E,
    MU_0,
    TWO_PI,
    as_phi,
    flux_quantum,
)

# Wall-width factor separating the asymptotic regimes: narrow means
# w < lambda_L/f, wide means w > f*lambda_L, with a warning zone between.
REGIME_FACTOR = 3.0


@dataclass(frozen=True)
class RingGeometry:
    """Loop geometry.  l = 2*pi*r and V = s*l are derived.

    s must equal w*h to 1e-9 relative; use from_wall to build it that way.
    """

    r: float       # m, loop radius
    s: float       # m^2, wall cross-section area
    w: float       # m, wall width (radial)
    h: float       # m, wall height
    L_geo: float   # H, geometric inductance

    def __post_init__(self):
        for name in ("r", "s", "w", "h", "L_geo"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"geometry field {name} must be positive")
        if abs(self.s - self.w * self.h) > 1e-9 * self.s:
            raise DomainError(
                f"cross-section s={self.s} inconsistent with w*h={self.w * self.h}"
            )

    @classmethod
    def from_wall(cls, r: float, w: float, h: float, L_geo: float) -> "RingGeometry":
        return cls(r=r, s=w * h, w=w, h=h, L_geo=L_geo)

    @property
    def l(self) -> float:
        """Circumference, m."""
        return TWO_PI * self.r

    @property
    def volume(self) -> float:
        """Condensate volume s*l, m^3."""
        return self.s * self.l


@dataclass(frozen=True)
class Material:
    """Superconductor parameters.

    lambda_L0 is the zero-temperature penetration depth used for screening
    profiles and the wall-regime checks.  The kinetic inductance is always
    derived from the pair density (see kinetic_inductance); the two agree
    when lambda_L0 = sqrt(m / (mu_0 q^2 n_s0)), which the shipped presets
    satisfy by construction.
    """

    T_c: float                       # K
    n_s0: float                      # 1/m^3, pair density at T = 0
    lambda_L0: float                 # m
    rho_n: float                     # ohm m, normal-state resistivity
    m: float = 2.0 * M_E             # kg, carrier mass
    q: float = 2.0 * E_CHARGE        # C, carrier charge

    def __post_init__(self):
        for name in ("T_c", "n_s0", "lambda_L0", "rho_n", "m", "q"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"material field {name} must be positive")


@dataclass(frozen=True)
class PermittedState:
    """One quantized condensate state at a given flux and temperature."""

    n: int
    v_n: float   # m/s
    E_n: float   # J, referenced to the n = phi minimum
    I_n: float   # A


class FluxoidRegime(enum.Enum):
    NARROW_WALL = "narrow_wall"
    WIDE_WALL_WITH_HOLE = "wide_wall_with_hole"
    WIDE_WALL_NO_HOLE = "wide_wall_no_hole"


def pair_density(mat: Material, T: float) -> float:
    """Two-fluid pair density n_s0 * (1 - T/T_c); zero at and above T_c."""
    if T < 0.0:
        raise DomainError(f"temperature must be non-negative, got {T}")
    if T >= mat.T_c:
        return 0.0
    return mat.n_s0 * (1.0 - T / mat.T_c)


def london_depth(mat: Material, T: float) -> float:
    """Penetration depth lambda_L0 * (1 - T/T_c)^(-1/2)."""
    if T < 0.0:
        raise DomainError(f"temperature must be non-negative, got {T}")
    if T >= mat.T_c:
        raise NoCondensateError(
            f"penetration depth diverges at T={T} K >= T_c={mat.T_c} K"
        )
    return mat.lambda_L0 / math.sqrt(1.0 - T / mat.T_c)


def screening_depth(mat: Material, T: float) -> float:
    """Penetration depth implied by the pair density, sqrt(m/(mu_0 q^2 n_s))."""
    n_s = pair_density(mat, T)
    if n_s <= 0.0:
        raise NoCondensateError(f"no condensate at T={T} K (T_c={mat.T_c} K)")
    return math.sqrt(mat.m / (MU_0 * mat.q**2 * n_s))


def permitted_velocity(n: int, phi, geom: RingGeometry, mat: Material) -> float:
    """Quantized pair velocity (2*pi*hbar / (l*m)) * (n - phi)."""
    return TWO_PI * HBAR * (n - as_phi(phi)) / (geom.l * mat.m)


def condensate_size(geom: RingGeometry, mat: Material, T: float) -> float:
    """Number of pairs N_s = V * n_s(T) sharing one quantum number."""
    return geom.volume * pair_density(mat, T)


def state_energy(n: int, phi, geom: RingGeometry, mat: Material, T: float) -> float:
    """Condensate kinetic energy N_s * (hbar^2 / (2 m r^2)) * (n - phi)^2.

    All N_s pairs carry the same quantum number, so the level spacing grows
    with the condensate size; successive levels at integer flux differ by
    N_s * (hbar^2/(2 m r^2)) * (2n + 1).
    """
    if T >= mat.T_c:
        raise NoCondensateError(f"no condensate at T={T} K (T_c={mat.T_c} K)")
    n_s = pair_density(mat, T)
    delta = n - as_phi(phi)
    return geom.volume * n_s * HBAR**2 / (2.0 * mat.m * geom.r**2) * delta * delta


def persistent_current_state(
    n: int, phi, geom: RingGeometry, mat: Material, T: float
) -> float:
    """Persistent current s * q * n_s * v_n of the state n, in A."""
    if T >= mat.T_c:
        raise NoCondensateError(f"no condensate at T={T} K (T_c={mat.T_c} K)")
    return geom.s * mat.q * pair_density(mat, T) * permitted_velocity(n, phi, geom, mat)


def permitted_state(
    n: int, phi, geom: RingGeometry, mat: Material, T: float
) -> PermittedState:
    """Bundle velocity, energy and current of one quantum number."""
    return PermittedState(
        n=n,
        v_n=permitted_velocity(n, phi, geom, mat),
        E_n=state_energy(n, phi, geom, mat, T),
        I_n=persistent_current_state(n, phi, geom, mat, T),
    )


def ground_state_number(phi) -> int:
    """Quantum number minimizing (n - phi)^2.

    At an exact half-integer the two neighbours are degenerate; the lower n
    is returned (see ground_state_degenerate).
    """
    p = as_phi(phi)
    lower = math.floor(p)
    if p - lower == 0.5:
        return lower
    return round(p)


def ground_state_degenerate(phi) -> bool:
    """True when phi sits exactly between two permitted states."""
    p = as_phi(phi)
    return p - math.floor(p) == 0.5


def kinetic_inductance(geom: RingGeometry, mat: Material, T: float) -> float:
    """Kinetic inductance mu_0 * lambda^2 * l / s = m*l / (s q^2 n_s(T))."""
    n_s = pair_density(mat, T)
    if n_s <= 0.0:
        raise NoCondensateError(f"no condensate at T={T} K (T_c={mat.T_c} K)")
    return mat.m * geom.l / (geom.s * mat.q**2 * n_s)


def total_inductance(geom: RingGeometry, mat: Material, T: float) -> float:
    """L_geo + L_k(T); governs the current decay through a normal segment."""
    return geom.L_geo + kinetic_inductance(geom, mat, T)


def validate_regime(
    regime: FluxoidRegime,
    geom: RingGeometry,
    mat: Material,
    T: float,
    factor: float = REGIME_FACTOR,
) -> None:
    """Check the wall width against the requested screening regime.

    Raises ConfigError when the opposite asymptotic regime holds; warns in
    the intermediate zone lambda/factor <= w <= factor*lambda.
    """
    lam = london_depth(mat, T)
    if regime is FluxoidRegime.NARROW_WALL:
        if geom.w > factor * lam:
            raise ConfigError(
                f"narrow-wall regime needs w << lambda_L; w={geom.w} > {factor}*lambda={factor * lam}"
            )
        if geom.w >= lam / factor:
            warnings.warn(
                f"wall width w={geom.w:.3g} m is not well inside the narrow regime "
                f"(lambda_L={lam:.3g} m)",
                stacklevel=2,
            )
    else:
        if geom.w < lam / factor:
            raise ConfigError(
                f"wide-wall regime needs w >> lambda_L; w={geom.w} < lambda/{factor}={lam / factor}"
            )
        if geom.w <= factor * lam:
            warnings.warn(
                f"wall width w={geom.w:.3g} m is not well inside the wide regime "
                f"(lambda_L={lam:.3g} m)",
                stacklevel=2,
            )


def fluxoid_balance(
    phi,
    n: int,
    geom: RingGeometry,
    mat: Material,
    T: float,
    regime: FluxoidRegime,
    check_regime: bool = True,
) -> float:
    """Enclosed flux (Wb) satisfying mu_0 * closed-path integral of
    lambda^2 j_s plus Phi = n*Phi0 in the given regime.

    wide_wall_with_hole: a deep path carries no current, Phi = n*Phi0.
    wide_wall_no_hole:   no singularity is available, n = 0 and Phi = 0
                         (complete expulsion).
    narrow_wall:         the circulating current cannot be neglected;
                         the applied flux plus the self-field of the
                         quantized current is solved self-consistently.
    """
    if check_regime:
        validate_regime(regime, geom, mat, T)
    if regime is FluxoidRegime.WIDE_WALL_WITH_HOLE:
        return n * flux_quantum(mat.q)
    if regime is FluxoidRegime.WIDE_WALL_NO_HOLE:
        if n != 0:
            raise DomainError(
                "a wall without a hole admits no phase winding; n must be 0"
            )
        return 0.0
    return self_consistent_flux(phi, n, geom, mat, T)


def self_consistent_flux(
    phi,
    n: int,
    geom: RingGeometry,
    mat: Material,
    T: float,
    tol: float = 1e-12,
    max_iter: int = 100,
) -> float:
    """Total flux of a narrow-wall ring including the current's self-field.

    Fixed-point iteration of Phi = Phi_applied + L_geo * I_n(Phi/Phi0),
    converged to tol (relative to one flux quantum).  The result also obeys
    n*Phi0 - L_k*I_n = Phi to the same tolerance.  The update contracts by
    -L_geo/L_k per step, so it converges only for kinetic-dominated rings
    (L_geo < L_k); outside that regime a ConfigError is raised.
    """
    phi0 = flux_quantum(mat.q)
    phi_applied = as_phi(phi) * phi0
    scale = geom.s * mat.q * pair_density(mat, T) * TWO_PI * HBAR / (geom.l * mat.m)

    def current(phi_abs: float) -> float:
        return scale * (n - phi_abs / phi0)

    total = phi_applied
    for _ in range(max_iter):
        updated = phi_applied + geom.L_geo * current(total)
        if abs(updated - total) <= tol * phi0:
            return updated
        total = updated
    raise ConfigError(
        f"self-consistent flux did not converge within {max_iter} iterations"
    )


def screening_current_density(depth: float, j0: float, lambda_L: float) -> float:
    """Current density j0 * exp(-depth/lambda_L) at the given depth below
    the surface."""
    if depth < 0.0:
        raise DomainError(f"depth must be non-negative, got {depth}")
    if not lambda_L > 0.0:
        raise DomainError(f"lambda_L must be positive, got {lambda_L}")
    return j0 * math.exp(-depth / lambda_L)


def angular_momentum_transfer(n: int, phi) -> float:
    """Force-free angular-momentum change per pair when the wave function
    closes: 2*pi*hbar*(n - phi), in J s."""
    return TWO_PI * HBAR * (n - as_phi(phi))


def condensate_momentum_transfer(
    n: int, phi, geom: RingGeometry, mat: Material, T: float
) -> float:
    """Aggregate angular-momentum transfer N_s * 2*pi*hbar*(n - phi)."""
    return condensate_size(geom, mat, T) * angular_momentum_transfer(n, phi)


def ground_persistent_current(
    phi, geom: RingGeometry, mat: Material, T: float = 0.0
) -> float:
    """Sawtooth persistent current of the lowest-energy state."""
    return persistent_current_state(ground_state_number(phi), phi, geom, mat, T)


def critical_current(
    phi,
    I_c0: float,
    geom: RingGeometry,
    mat: Material,
    T: float = 0.0,
    direction: str = "plus",
    model: str = "symmetric",
    delta_phi: float = 0.0,
) -> float:
    """Critical current I_c0 - 2*|I_p| of a ring carrying a measuring current.

    The symmetric model is direction-independent, with maxima at integer and
    minima at half-integer flux.  The shift model reproduces the observed
    anisotropy of asymmetric rings by shifting the *argument*: the plus and
    minus directions read the same curve at phi -/+ delta_phi/2.  The
    half-shift is capped at 0.25, the largest value reported.
    """
    if direction not in ("plus", "minus"):
        raise DomainError(f"direction must be 'plus' or 'minus', got {direction!r}")
    if model not in ("symmetric", "shift"):
        raise DomainError(f"model must be 'symmetric' or 'shift', got {model!r}")
    i_max = abs(ground_persistent_current(0.5, geom, mat, T))
    if not I_c0 > 2.0 * i_max:
        raise DomainError(
            f"I_c0={I_c0} A must exceed the largest backaction 2*max|I_p|"
            f" = {2.0 * i_max} A"
        )
    p = as_phi(phi)
    if model == "shift":
        if abs(delta_phi) / 2.0 > 0.25:
            raise DomainError(
                f"argument shift delta_phi/2 = {abs(delta_phi) / 2.0} exceeds the"
                " observed bound 0.25"
            )
        p = p - delta_phi / 2.0 if direction == "plus" else p + delta_phi / 2.0
    return I_c0 - 2.0 * abs(ground_persistent_current(p, geom, mat, T))
