"""Quantized states, persistent currents and switching dynamics of
superconducting loops, plus observability bounds for quantum behaviour of
large particles.

Layout: `quantities` (constants, normalized flux), `ring` (permitted
states, fluxoid regimes, critical currents), `ensemble` (thermal averages
and resistance oscillations), `dynamics` (connectivity switching and the
rectified dc voltage), `feasibility` (size/temperature bounds, two-slit
pattern, uncertainty estimator), `cli` (the `fluxring` command).
"""

__version__ = "0.1.0"

from ._backend import backend_name
from .errors import (
    ConfigError,
    DomainError,
    FluxringError,
    NoCondensateError,
    TruncationError,
)
from .quantities import (
    CODATA,
    Constants,
    FluxPoint,
    denormalize_flux,
    flux_quantum,
    normalize_flux,
)
from .ring import (
    FluxoidRegime,
    Material,
    PermittedState,
    RingGeometry,
    angular_momentum_transfer,
    condensate_momentum_transfer,
    critical_current,
    fluxoid_balance,
    ground_persistent_current,
    ground_state_degenerate,
    ground_state_number,
    kinetic_inductance,
    london_depth,
    pair_density,
    permitted_state,
    permitted_velocity,
    persistent_current_state,
    screening_current_density,
    self_consistent_flux,
    state_energy,
    total_inductance,
)
from .ensemble import (
    LittleParksCurve,
    ThermalEnsemble,
    build_ensemble,
    default_resistance_scale,
    ensemble_averages,
    little_parks_sweep,
)
from .dynamics import (
    SwitchingConfig,
    SwitchingRun,
    VdcCurve,
    dc_voltage_asymptotic,
    decay_current,
    poisson_expected_dc_voltage,
    quantum_force_emf,
    relaxation_time,
    segment_voltage,
    simulate_switching,
    vdc_sweep,
)
from .feasibility import (
    MomentDifference,
    ParticleSpec,
    TwoSlitSetup,
    UncertaintyCheck,
    bohr_temperature_bound,
    de_broglie_wavelength,
    interference_time_bound,
    moment_difference,
    orbit_gap,
    two_slit_pattern,
    two_slit_transmission,
    uncertainty_product,
)
from .presets import Preset, load_preset, preset_names

__all__ = [name for name in dir() if not name.startswith("_")]
