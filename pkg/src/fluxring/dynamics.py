"""Time-domain model of connectivity switching in a superconducting loop.

One loop segment is driven normal at a rate omega_sw and superconducts
again after a fraction `duty` of each cycle.  While the wave function is
closed the current is pinned at the quantized ensemble value; while it is
open the current decays through the normal segment with tau = L_tot/R_B
and the segment carries the voltage R_B*I(t).  Averaged over many cycles
the segment develops a rectified dc voltage that oscillates with flux,
balanced by the momentum the condensate regains at each closing.

Re-closing resets the current to the quantized value instantaneously: the
quantum force is modeled as an event, its rate-form line integral being
2*pi*hbar*(n_bar - phi)*omega_sw.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import ConfigError, DomainError
from .quantities import HBAR, K_B, PAIR_CHARGE, TWO_PI, as_phi, flux_quantum
from .ring import (
    Material,
    RingGeometry,
    ground_state_number,
    total_inductance,
)
from .ensemble import build_ensemble, current_per_quantum

MODES = ("deterministic", "poisson", "thermal")

# Below this many expected closings the time averages are statistically
# meaningless; simulate_switching warns.
MIN_EXPECTED_CLOSINGS = 10.0


def relaxation_time(L_tot: float, R_B: float) -> float:
    """RL decay time L_tot / R_B of the current through the normal segment."""
    if not (L_tot > 0.0 and R_B > 0.0):
        raise DomainError(
            f"inductance and resistance must be positive, got {L_tot}, {R_B}"
        )
    return L_tot / R_B


def decay_current(t: float, I_p0: float, t_on: float, tau: float) -> float:
    """Current I_p0 * exp(-(t - t_on)/tau) after the segment opens at t_on."""
    if t < t_on:
        raise DomainError(f"t={t} precedes the switching instant t_on={t_on}")
    if not tau > 0.0:
        raise DomainError(f"decay time must be positive, got {tau}")
    return I_p0 * math.exp(-(t - t_on) / tau)


def segment_voltage(
    t: float, I_p0: float, t_on: float, tau: float, R_B: float
) -> float:
    """Voltage R_B * I(t) across the normal segment during the decay."""
    return R_B * decay_current(t, I_p0, t_on, tau)


def quantum_force_emf(
    n_bar: float, phi, omega_sw: float, q: float = PAIR_CHARGE
) -> tuple[float, float]:
    """Momentum restored to the condensate per unit time, and as an EMF.

    Returns (momentum_rate, emf): the closed-path force integral equals
    2*pi*hbar*(n_bar - phi)*omega_sw per pair; divided by the carrier
    charge it is Phi0*(n_bar - phi)*omega_sw, the EMF sustaining the
    average current against dissipation.
    """
    if omega_sw < 0.0:
        raise DomainError(f"switching rate must be non-negative, got {omega_sw}")
    delta = n_bar - as_phi(phi)
    momentum_rate = TWO_PI * HBAR * delta * omega_sw
    return momentum_rate, momentum_rate / q


def dc_voltage_asymptotic(
    omega_sw: float,
    tau: float,
    I_p_closed: float,
    L_tot: float,
    R_B: float,
    duty: float,
) -> float:
    """Rectified dc voltage across the switched segment.

    Slow switching (omega_sw*tau < 0.1): every cycle dumps the full loop
    flux L_tot*I_p into the segment, V_dc = L_tot*omega_sw*I_p.  Fast
    switching (omega_sw*tau > 10): the current barely decays and the
    segment averages duty*R_B*I_p.  In between, the exact per-cycle
    average for deterministic switching:

        V_dc = L_tot*omega_sw*I_p * (1 - exp(-duty/(omega_sw*tau)))
    """
    if not (omega_sw > 0.0 and tau > 0.0 and L_tot > 0.0 and R_B > 0.0):
        raise DomainError("omega_sw, tau, L_tot and R_B must be positive")
    if not 0.0 < duty < 1.0:
        raise DomainError(f"duty must lie in (0, 1), got {duty}")
    x = omega_sw * tau
    if x < 0.1:
        return L_tot * omega_sw * I_p_closed
    if x > 10.0:
        return duty * R_B * I_p_closed
    return L_tot * omega_sw * I_p_closed * -math.expm1(-duty / x)


def poisson_expected_dc_voltage(
    omega_sw: float, tau: float, I_p_closed: float, L_tot: float, duty: float
) -> float:
    """Expectation of V_dc for Poisson switching.

    Open intervals are exponential with mean duty/omega_sw, so
    E[1 - exp(-D/tau)] = duty / (omega_sw*tau + duty).
    """
    x = omega_sw * tau
    return L_tot * omega_sw * I_p_closed * duty / (x + duty)


@dataclass(frozen=True)
class SwitchingConfig:
    """Run parameters for the switching simulation.

    omega_sw is the closing rate (closings per unit time), duty the
    fraction of a cycle the segment spends normal.  Modes: 'deterministic'
    (fixed periods), 'poisson' (exponential closed/open intervals with the
    same means), 'thermal' (activation attempts at attempt_rate succeeding
    with probability min(1, exp(-delta_f/(k_B T)))).
    """

    omega_sw: float            # 1/s
    R_B: float                 # ohm
    theta: float               # s, total simulated time
    duty: float = 0.5
    mode: str = "deterministic"
    seed: int = 0
    dt: float | None = None    # s, output sampling step (default theta/1000)
    delta_f: float | None = None       # J, barrier for thermal mode
    attempt_rate: float | None = None  # 1/s, attempt frequency for thermal mode

    def __post_init__(self):
        if not (self.omega_sw > 0.0 and self.R_B > 0.0 and self.theta > 0.0):
            raise ConfigError("omega_sw, R_B and theta must be positive")
        if not 0.0 < self.duty < 1.0:
            raise ConfigError(f"duty must lie in (0, 1), got {self.duty}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.dt is not None and not self.dt > 0.0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if self.mode == "thermal" and (
            self.delta_f is None or self.attempt_rate is None
        ):
            raise ConfigError("thermal mode needs delta_f and attempt_rate")


@dataclass(frozen=True)
class SwitchingRun:
    """Sampled trajectory and exact time averages of one switching run."""

    times: np.ndarray            # s
    current: np.ndarray          # A
    segment_voltage: np.ndarray  # V
    V_dc: float                  # V, (1/theta) * integral of V_B
    V_dc_stderr: float           # V, Monte Carlo error estimate (0 if exact)
    I_bar: float                 # A, trajectory-average current
    I_closed: float              # A, pinned current while closed
    n_bar_used: float
    omega_effective: float       # 1/s, realized closing rate
    force_emf: float             # V, Phi0*(n_bar - phi)*omega_effective
    balance_residual: float      # |V_dc - force_emf| / max(|V_dc|, eps)
    dissipated_energy: float     # J, integral of I^2 R_B
    cycles: int


def _draw_intervals(cfg: SwitchingConfig, T: float, rng: np.random.Generator):
    """Alternating (closed, open) durations covering at least cfg.theta."""
    period = 1.0 / cfg.omega_sw
    if cfg.mode == "deterministic":
        n_cycles = max(1, math.ceil(cfg.theta / period - 1e-12))
        closed = np.full(n_cycles, (1.0 - cfg.duty) * period)
        opened = np.full(n_cycles, cfg.duty * period)
        return closed, opened
    if cfg.mode == "poisson":
        mean_closed = (1.0 - cfg.duty) * period
        mean_open = cfg.duty * period
        batch = max(16, int(1.5 * cfg.theta / period) + 16)
        closed_parts, open_parts, covered = [], [], 0.0
        while covered < 2.0 * cfg.theta:
            c = rng.exponential(mean_closed, size=batch)
            o = rng.exponential(mean_open, size=batch)
            closed_parts.append(c)
            open_parts.append(o)
            covered += float(np.sum(c) + np.sum(o))
        return np.concatenate(closed_parts), np.concatenate(open_parts)
    # thermal: activation attempts at attempt_rate, each succeeding with
    # probability min(1, exp(-delta_f / k_B T)); the same barrier is used
    # for both directions of the transition.
    p = min(1.0, math.exp(-cfg.delta_f / (K_B * T))) if T > 0.0 else 0.0
    if p <= 0.0:
        raise ConfigError("thermal switching probability is zero at this temperature")
    step = 1.0 / cfg.attempt_rate
    batch = max(16, int(cfg.theta * cfg.attempt_rate * p) + 16)
    closed_parts, open_parts, covered = [], [], 0.0
    while covered < 2.0 * cfg.theta:
        c = rng.geometric(p, size=batch) * step
        o = rng.geometric(p, size=batch) * step
        closed_parts.append(c)
        open_parts.append(o)
        covered += float(np.sum(c) + np.sum(o))
    return np.concatenate(closed_parts), np.concatenate(open_parts)


def _truncate_to_theta(closed: np.ndarray, opened: np.ndarray, theta: float):
    """Clip the alternating sequence at total time theta.

    Returns (closed, opened, n_closings).  The run starts with a closing at
    t = 0 and every clipped closed interval begins with one, so n_closings
    is the number of closed intervals kept.
    """
    edges = np.empty(2 * len(closed), dtype=float)
    edges[0::2] = closed
    edges[1::2] = opened
    cumulative = np.cumsum(edges)
    last = int(np.searchsorted(cumulative, theta, side="left"))
    last = min(last, len(edges) - 1)
    edges = edges[: last + 1].copy()
    overshoot = cumulative[last] - theta
    if overshoot > 0.0:
        edges[-1] -= overshoot
    closed_out = np.ascontiguousarray(edges[0::2])
    opened_out = edges[1::2]
    if len(opened_out) < len(closed_out):
        opened_out = np.append(opened_out, 0.0)
    return closed_out, np.ascontiguousarray(opened_out), len(closed_out)


def simulate_switching(
    cfg: SwitchingConfig,
    phi,
    T: float,
    geom: RingGeometry,
    mat: Material,
) -> SwitchingRun:
    """Run the switching trajectory and return samples plus exact averages.

    The closed-interval current is the thermal ensemble value
    I_p(n_bar, phi); at T = 0 the ground state is used.  All time averages
    come from the piecewise-exponential trajectory in closed form, so
    deterministic runs carry no quadrature error.  Poisson and thermal runs
    are reproducible from cfg.seed (NumPy PCG64).
    """
    p = as_phi(phi)
    if cfg.omega_sw * cfg.theta < MIN_EXPECTED_CLOSINGS:
        warnings.warn(
            f"omega_sw*theta = {cfg.omega_sw * cfg.theta:.3g} <"
            f" {MIN_EXPECTED_CLOSINGS}; time averages will be noisy",
            stacklevel=2,
        )
    if T > 0.0:
        ens = build_ensemble(p, T, geom, mat)
        n_bar = ens.phi + ens.delta_mean
        delta_bar = ens.delta_mean
    else:
        n_bar = float(ground_state_number(p))
        delta_bar = n_bar - p
    i_closed = current_per_quantum(geom, mat, T) * delta_bar
    l_tot = total_inductance(geom, mat, T)
    tau = relaxation_time(l_tot, cfg.R_B)

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(cfg.seed)))
    closed, opened = _draw_intervals(cfg, T, rng)
    closed, opened, n_closings = _truncate_to_theta(closed, opened, cfg.theta)

    int_vb, int_i, int_diss, sum_vb_sq = kernels.decay_cycle_sums(
        closed, opened, i_closed, tau, cfg.R_B
    )
    n_cycles = len(opened)
    v_dc = int_vb / cfg.theta
    if cfg.mode == "deterministic":
        stderr = 0.0
    else:
        var_sum = max(sum_vb_sq - int_vb**2 / n_cycles, 0.0)
        stderr = math.sqrt(var_sum) / cfg.theta

    omega_eff = n_closings / cfg.theta
    emf = flux_quantum(mat.q) * delta_bar * omega_eff
    if v_dc == 0.0 and emf == 0.0:
        residual = 0.0
    else:
        residual = abs(v_dc - emf) / max(abs(v_dc), 1e-300)

    dt = cfg.dt if cfg.dt is not None else cfg.theta / 1000.0
    times = np.arange(0.0, cfg.theta + 0.5 * dt, dt)
    times = np.ascontiguousarray(times[times <= cfg.theta])
    bounds = np.empty(2 * len(closed), dtype=float)
    bounds[0::2] = closed
    bounds[1::2] = opened
    bounds = np.ascontiguousarray(
        np.concatenate(([0.0], np.cumsum(bounds)[:-1]))
    )
    current = np.asarray(
        kernels.sample_piecewise_decay(times, bounds, i_closed, tau)
    )
    open_mask = (np.searchsorted(bounds, times, side="right") - 1) % 2 == 1
    voltage = np.where(open_mask, cfg.R_B * current, 0.0)

    return SwitchingRun(
        times=times,
        current=current,
        segment_voltage=voltage,
        V_dc=v_dc,
        V_dc_stderr=stderr,
        I_bar=int_i / cfg.theta,
        I_closed=i_closed,
        n_bar_used=n_bar,
        omega_effective=omega_eff,
        force_emf=emf,
        balance_residual=residual,
        dissipated_energy=int_diss,
        cycles=n_cycles,
    )


@dataclass(frozen=True)
class VdcCurve:
    """Flux sweep of the rectified dc voltage."""

    grid: np.ndarray               # phi values
    V_dc: np.ndarray               # V
    V_dc_stderr: np.ndarray        # V
    I_bar: np.ndarray              # A
    balance_residual: np.ndarray


def vdc_sweep(
    cfg: SwitchingConfig,
    phi_grid,
    T: float,
    geom: RingGeometry,
    mat: Material,
) -> VdcCurve:
    """simulate_switching over a flux grid with per-point seed substreams.

    Point i uses the substream SeedSequence((cfg.seed, i)), so results are
    independent of evaluation order and reproducible across runs.
    """
    grid = np.asarray(phi_grid, dtype=float)
    if grid.size == 0:
        raise DomainError("flux grid must be non-empty")
    if grid.size > 1 and not (np.all(np.diff(grid) > 0) or np.all(np.diff(grid) < 0)):
        raise DomainError("flux grid must be strictly monotone")
    v = np.empty_like(grid)
    se = np.empty_like(grid)
    ib = np.empty_like(grid)
    res = np.empty_like(grid)
    for i, p in enumerate(grid):
        run = simulate_switching(_with_substream(cfg, i), p, T, geom, mat)
        v[i] = run.V_dc
        se[i] = run.V_dc_stderr
        ib[i] = run.I_bar
        res[i] = run.balance_residual
    return VdcCurve(grid=grid, V_dc=v, V_dc_stderr=se, I_bar=ib, balance_residual=res)


def _with_substream(cfg: SwitchingConfig, index: int) -> SwitchingConfig:
    """Per-point config whose seed keys the point's substream."""
    seq = np.random.SeedSequence((cfg.seed, index))
    return dataclasses.replace(cfg, seed=int(seq.generate_state(1, dtype=np.uint64)[0]))
