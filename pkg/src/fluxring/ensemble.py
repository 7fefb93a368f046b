"""Thermal statistics over the permitted states of a loop.

Boltzmann weights over the discrete spectrum, ensemble mean quantum number
and persistent current, mean-square reduced velocity, and the resistance
oscillation curves measured near the transition (Little-Parks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .errors import DomainError, NoCondensateError, TruncationError
from .quantities import HBAR, K_B, TWO_PI, as_phi
from .ring import Material, RingGeometry, pair_density

# A boundary state may carry at most this fraction of the peak weight,
# otherwise the truncation is deemed insufficient.
TRUNCATION_RESIDUAL = 1e-15

# Hard ceiling for automatic escalation of the truncation half-width.
N_MAX_CEILING = 4096

DEFAULT_N_MAX = 20


def boltzmann_exponent_scale(geom: RingGeometry, mat: Material, T: float) -> float:
    """beta such that the weight of state n is exp(-beta*(n - phi)^2).

    beta = N_s(T) * hbar^2 / (2 m r^2 k_B T): the whole condensate, not a
    single pair, pays the kinetic energy of a quantum number change.
    """
    if T <= 0.0:
        raise DomainError(f"temperature must be positive, got {T}")
    if T >= mat.T_c:
        raise NoCondensateError(f"no condensate at T={T} K (T_c={mat.T_c} K)")
    n_pairs = geom.volume * pair_density(mat, T)
    return n_pairs * HBAR**2 / (2.0 * mat.m * geom.r**2 * K_B * T)


def _state_numbers(phi: float, n_max: int) -> np.ndarray:
    """Truncated state set, symmetric about phi.

    All n with |n - phi| <= n_max + 1/2: 2*n_max + 1 states generically,
    one extra at an exact half-integer so the degenerate pair and all its
    mirrors are retained symmetrically.
    """
    lo = math.ceil(phi - n_max - 0.5)
    hi = math.floor(phi + n_max + 0.5)
    return np.arange(lo, hi + 1)


@dataclass(frozen=True)
class ThermalEnsemble:
    """Boltzmann weights over the truncated permitted-state set."""

    T: float
    phi: float
    N_max: int
    ns: np.ndarray             # quantum numbers, ascending
    weights: np.ndarray        # probabilities, sum to 1
    beta: float                # exponent scale
    truncation_ok: bool
    # Folded first moment sum(P_n * (n - phi)); exactly 0.0 for spectra
    # symmetric about phi (integer and half-integer flux).
    delta_mean: float
    delta_sq_mean: float

    def probability(self, n: int) -> float:
        idx = int(n - self.ns[0])
        if idx < 0 or idx >= len(self.ns):
            return 0.0
        return float(self.weights[idx])


def build_ensemble(
    phi,
    T: float,
    geom: RingGeometry,
    mat: Material,
    N_max: int = DEFAULT_N_MAX,
    auto_escalate: bool = True,
) -> ThermalEnsemble:
    """Boltzmann ensemble at normalized flux phi and temperature T.

    Weights are exponentiated after subtracting the minimum energy, so the
    peak weight is exactly 1 before normalization.  If the boundary states
    carry more than TRUNCATION_RESIDUAL of the peak, N_max is doubled
    (auto_escalate) up to N_MAX_CEILING; past the ceiling a TruncationError
    is raised.
    """
    if N_max < 1:
        raise DomainError(f"N_max must be >= 1, got {N_max}")
    p = as_phi(phi)
    beta = boltzmann_exponent_scale(geom, mat, T)

    n_max = N_max
    while True:
        ns = _state_numbers(p, n_max)
        delta = ns - p
        z, s1, s2, edge = kernels.boltzmann_reduce(np.ascontiguousarray(delta, dtype=float), beta)
        ok = edge < TRUNCATION_RESIDUAL
        if ok or not auto_escalate:
            break
        if n_max >= N_MAX_CEILING:
            raise TruncationError(
                f"boundary weight {edge:.3e} above {TRUNCATION_RESIDUAL} even at"
                f" N_max={n_max}; T={T} K is too close to T_c for this truncation"
            )
        n_max = min(2 * n_max, N_MAX_CEILING)

    weights = np.exp(-beta * (delta * delta - np.min(delta * delta))) / z
    return ThermalEnsemble(
        T=T,
        phi=p,
        N_max=n_max,
        ns=ns,
        weights=weights,
        beta=beta,
        truncation_ok=ok,
        delta_mean=s1 / z,
        delta_sq_mean=s2 / z,
    )


class EnsembleAverages(NamedTuple):
    n_bar: float          # mean quantum number
    mean_current: float   # A
    mean_v2: float        # mean (n - phi)^2, dimensionless


def current_per_quantum(geom: RingGeometry, mat: Material, T: float) -> float:
    """Current carried per unit of (n - phi): s*q*n_s*2*pi*hbar/(l*m)."""
    return (
        geom.s
        * mat.q
        * pair_density(mat, T)
        * TWO_PI
        * HBAR
        / (geom.l * mat.m)
    )


def ensemble_averages(
    ens: ThermalEnsemble, geom: RingGeometry, mat: Material
) -> EnsembleAverages:
    """Thermal averages: mean n, mean persistent current, mean (n - phi)^2.

    The mean current is proportional to (n_bar - phi), which vanishes
    exactly at integer and half-integer flux by the symmetric construction
    of the ensemble.
    """
    mean_current = current_per_quantum(geom, mat, ens.T) * ens.delta_mean
    return EnsembleAverages(
        n_bar=ens.phi + ens.delta_mean,
        mean_current=mean_current,
        mean_v2=ens.delta_sq_mean,
    )


def mean_quantum_number(
    phi, T: float, geom: RingGeometry, mat: Material, N_max: int = DEFAULT_N_MAX
) -> float:
    """Shorthand for the thermal mean quantum number at (phi, T)."""
    ens = build_ensemble(phi, T, geom, mat, N_max=N_max)
    return ens.phi + ens.delta_mean


@dataclass(frozen=True)
class LittleParksCurve:
    """Flux sweep of the thermal observables.

    delta_R = c_R * mean_v2 models the resistance oscillation near the
    transition, which tracks the mean square of the quantized velocity.
    """

    grid: np.ndarray           # phi values
    mean_current: np.ndarray   # A
    mean_v2: np.ndarray        # dimensionless
    delta_R: np.ndarray        # ohm
    c_R: float                 # ohm, resistance scale

    def __post_init__(self):
        n = len(self.grid)
        if not (len(self.mean_current) == len(self.mean_v2) == len(self.delta_R) == n):
            raise DomainError("curve arrays must have equal length")


def default_resistance_scale(geom: RingGeometry, mat: Material) -> float:
    """c_R normalizing the oscillation maximum to 1 ohm at T = 0.99*T_c.

    The maximum of mean_v2 over flux sits at half-integer phi, where the two
    lowest states are degenerate.
    """
    ens = build_ensemble(0.5, 0.99 * mat.T_c, geom, mat)
    return 1.0 / ens.delta_sq_mean


def little_parks_sweep(
    T: float,
    phi_grid,
    geom: RingGeometry,
    mat: Material,
    c_R: float | None = None,
    N_max: int = DEFAULT_N_MAX,
) -> LittleParksCurve:
    """Evaluate the ensemble observables over a monotone flux grid."""
    grid = np.asarray(phi_grid, dtype=float)
    if grid.size == 0:
        raise DomainError("flux grid must be non-empty")
    if grid.size > 1 and not (np.all(np.diff(grid) > 0) or np.all(np.diff(grid) < 0)):
        raise DomainError("flux grid must be strictly monotone")
    if c_R is None:
        c_R = default_resistance_scale(geom, mat)

    current = np.empty_like(grid)
    v2 = np.empty_like(grid)
    for i, p in enumerate(grid):
        ens = build_ensemble(p, T, geom, mat, N_max=N_max)
        avg = ensemble_averages(ens, geom, mat)
        current[i] = avg.mean_current
        v2[i] = avg.mean_v2
    return LittleParksCurve(
        grid=grid,
        mean_current=current,
        mean_v2=v2,
        delta_R=c_R * v2,
        c_R=c_R,
    )
