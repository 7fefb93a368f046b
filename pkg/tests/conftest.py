import math

import pytest

from fluxring.presets import load_preset


def close_to(value, reference, tol):
    """Relative closeness against the larger magnitude.

    Published anchor values are rounded to 1-2 significant figures, so the
    comparison must not depend on which side carries the rounding.
    """
    scale = max(abs(value), abs(reference))
    return abs(value - reference) <= tol * scale


def rel_err(value, reference):
    return abs(value - reference) / abs(reference)


@pytest.fixture(scope="session")
def aluminum():
    preset = load_preset("aluminum-ring")
    return preset.geometry, preset.material


@pytest.fixture(scope="session")
def geom(aluminum):
    return aluminum[0]


@pytest.fixture(scope="session")
def mat(aluminum):
    return aluminum[1]


def boltzmann_oracle(phi, T, geom, mat, n_half=1000):
    """Independent brute-force thermal averages.

    Direct summation over n in [round(phi) - n_half, round(phi) + n_half]
    with exact (fsum) accumulation; exponent shifted by its maximum so the
    largest weight is exactly 1.
    """
    from fluxring.quantities import HBAR, K_B

    n_pairs = geom.volume * mat.n_s0 * (1.0 - T / mat.T_c)
    beta = n_pairs * HBAR**2 / (2.0 * mat.m * geom.r**2 * K_B * T)
    center = round(phi)
    ns = range(center - n_half, center + n_half + 1)
    exponents = [-beta * (n - phi) ** 2 for n in ns]
    shift = max(exponents)
    weights = [math.exp(x - shift) for x in exponents]
    z = math.fsum(weights)
    n_bar = math.fsum(w * n for w, n in zip(weights, ns)) / z
    v2 = math.fsum(w * (n - phi) ** 2 for w, n in zip(weights, ns)) / z
    return n_bar, v2
