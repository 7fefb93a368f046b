"""Shipped presets reproducing the standard experimental scales.

aluminum-ring: a 1 um narrow-wall aluminium loop.  The pair density is the
one implied by a 50 nm zero-temperature penetration depth, and the wall
cross-section is calibrated so the ground state carries exactly 0.5 uA at
a quarter flux quantum and T = 0 (the flux-qubit current scale).  With
that choice the penetration depth stored on the material and the one
implied by the pair density coincide, so the kinetic inductance
(about 1 nH, two orders above the 1e-11 H geometric term) satisfies
L_k * I_p = Phi0 * (n - phi) identically.

fullerene-C70: the 840 amu molecule of the uncertainty-relation
experiments, at its typical 100 m/s beam velocity.

virus-60nm: a 60 nm, 1e3 kg/m^3 particle, the classic not-quite-feasible
interference candidate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .feasibility import ParticleSpec
from .quantities import AMU, HBAR, MU_0, TWO_PI
from .ring import Material, RingGeometry


@dataclass(frozen=True)
class Preset:
    name: str
    geometry: RingGeometry | None = None
    material: Material | None = None
    particle: ParticleSpec | None = None


def _aluminum_ring() -> Preset:
    t_c = 1.2            # K
    lambda_l0 = 50e-9    # m
    radius = 1e-6        # m
    l_geo = 1e-11        # H
    rho_n = 3e-8         # ohm m
    wall_width = 4e-9    # m, well inside the narrow regime (< lambda/3)
    target_current = 0.5e-6  # A, ground-state |I_p| at phi = 1/4, T = 0

    mat_kwargs = dict(T_c=t_c, lambda_L0=lambda_l0, rho_n=rho_n)
    probe = Material(n_s0=1.0, **mat_kwargs)
    n_s0 = probe.m / (MU_0 * probe.q**2 * lambda_l0**2)
    v_quarter = TWO_PI * HBAR * 0.25 / (TWO_PI * radius * probe.m)
    section = target_current / (probe.q * n_s0 * v_quarter)

    geometry = RingGeometry(
        r=radius, s=section, w=wall_width, h=section / wall_width, L_geo=l_geo
    )
    material = Material(n_s0=n_s0, **mat_kwargs)
    return Preset(name="aluminum-ring", geometry=geometry, material=material)


def _fullerene_c70() -> Preset:
    mass = 840.0 * AMU
    density = 1e3
    size = (mass / density) ** (1.0 / 3.0)
    return Preset(
        name="fullerene-C70",
        particle=ParticleSpec(a=size, g=density, v=100.0, m=mass),
    )


def _virus_60nm() -> Preset:
    return Preset(
        name="virus-60nm",
        particle=ParticleSpec(a=60e-9, g=1e3, v=100.0),
    )


_BUILDERS = {
    "aluminum-ring": _aluminum_ring,
    "fullerene-C70": _fullerene_c70,
    "virus-60nm": _virus_60nm,
}


def preset_names() -> list[str]:
    return sorted(_BUILDERS)


def load_preset(name: str) -> Preset:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        ) from None
    return builder()
