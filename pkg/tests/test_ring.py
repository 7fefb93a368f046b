import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fluxring.errors import ConfigError, DomainError, NoCondensateError
from fluxring.quantities import HBAR, MU_0, flux_quantum
from fluxring.ring import (
    FluxoidRegime,
    Material,
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
    screening_depth,
    self_consistent_flux,
    state_energy,
    total_inductance,
    validate_regime,
)

from conftest import close_to


class TestGeometryMaterial:
    def test_derived_circumference_and_volume(self, geom):
        assert geom.l == 2.0 * math.pi * geom.r
        assert geom.volume == geom.s * geom.l

    def test_cross_section_consistency_enforced(self):
        with pytest.raises(DomainError):
            RingGeometry(r=1e-6, s=1e-15, w=1e-8, h=2e-8, L_geo=1e-11)

    def test_positive_fields_enforced(self):
        with pytest.raises(DomainError):
            RingGeometry(r=-1e-6, s=2e-16, w=1e-8, h=2e-8, L_geo=1e-11)
        with pytest.raises(DomainError):
            Material(T_c=0.0, n_s0=1e27, lambda_L0=5e-8, rho_n=3e-8)

    def test_preset_is_lambda_consistent(self, geom, mat):
        assert screening_depth(mat, 0.0) == pytest.approx(mat.lambda_L0, rel=1e-12)
        assert mat.n_s0 == pytest.approx(
            mat.m / (MU_0 * mat.q**2 * mat.lambda_L0**2), rel=1e-12
        )


class TestPairDensity:
    def test_zero_temperature(self, mat):
        assert pair_density(mat, 0.0) == mat.n_s0

    def test_transition_point(self, mat):
        assert pair_density(mat, mat.T_c) == 0.0

    def test_linear_midpoint(self, mat):
        assert pair_density(mat, mat.T_c / 2.0) == pytest.approx(mat.n_s0 / 2.0, rel=1e-14)

    def test_negative_temperature_rejected(self, mat):
        with pytest.raises(DomainError):
            pair_density(mat, -0.1)


class TestLondonDepth:
    def test_zero_temperature_is_50nm_for_preset(self, mat):
        assert london_depth(mat, 0.0) == pytest.approx(50e-9, rel=1e-12)

    def test_three_quarters_tc_doubles(self, mat):
        assert london_depth(mat, 0.75 * mat.T_c) == pytest.approx(
            2.0 * mat.lambda_L0, rel=1e-12
        )

    def test_099_tc_is_ten_times(self, mat):
        assert london_depth(mat, 0.99 * mat.T_c) == pytest.approx(
            10.0 * mat.lambda_L0, rel=1e-12
        )

    def test_divergence_is_an_error(self, mat):
        with pytest.raises(NoCondensateError):
            london_depth(mat, mat.T_c)


class TestPermittedVelocity:
    def test_zero_case(self, geom, mat):
        assert permitted_velocity(0, 0.0, geom, mat) == 0.0

    def test_quarter_flux_ground_state(self, geom, mat):
        # v = -2*pi*hbar / (l*m*4) in the n = 0 state at phi = 1/4
        expected = -2.0 * math.pi * HBAR / (geom.l * mat.m * 4.0)
        assert permitted_velocity(0, 0.25, geom, mat) == pytest.approx(expected, rel=1e-14)

    def test_excited_state_value(self, geom, mat):
        # direct CODATA evaluation for n=1, phi=0.25, r=1um, m=2m_e
        assert permitted_velocity(1, 0.25, geom, mat) == pytest.approx(
            43.41286351895362, rel=1e-12
        )

    @given(st.integers(min_value=-5, max_value=5),
           st.floats(min_value=1e-6, max_value=0.499))
    def test_antisymmetry_about_own_state(self, n, delta):
        from fluxring.presets import load_preset

        preset = load_preset("aluminum-ring")
        geom, mat = preset.geometry, preset.material
        plus = permitted_velocity(n, n + delta, geom, mat)
        minus = permitted_velocity(n, n - delta, geom, mat)
        assert plus == pytest.approx(-minus, rel=1e-12)


class TestStateEnergy:
    def test_ground_state_at_integer_flux_is_zero(self, geom, mat):
        assert state_energy(0, 0.0, geom, mat, 0.0) == 0.0

    def test_level_difference_matches_condensate_scaling(self, geom, mat):
        # E_{n+1} - E_n at phi = 0 equals N_s*(hbar^2/2mr^2)*(2n+1)
        n_s = pair_density(mat, 0.3)
        n_pairs = geom.volume * n_s
        unit = n_pairs * HBAR**2 / (2.0 * mat.m * geom.r**2)
        for n in range(0, 6):
            gap = state_energy(n + 1, 0.0, geom, mat, 0.3) - state_energy(n, 0.0, geom, mat, 0.3)
            assert gap == pytest.approx(unit * (2 * n + 1), rel=1e-12)

    def test_spectrum_ordering(self, geom, mat):
        energies = [state_energy(n, 0.3, geom, mat, 0.0) for n in range(-3, 5)]
        distances = [abs(n - 0.3) for n in range(-3, 5)]
        order = np.argsort(distances)
        assert all(
            energies[order[i]] < energies[order[i + 1]] for i in range(len(order) - 1)
        )

    def test_half_integer_degeneracy_is_exact(self, geom, mat):
        assert state_energy(0, 0.5, geom, mat, 0.0) == state_energy(1, 0.5, geom, mat, 0.0)

    def test_above_tc_rejected(self, geom, mat):
        with pytest.raises(NoCondensateError):
            state_energy(0, 0.25, geom, mat, mat.T_c)

    def test_single_pair_limit_reproduces_orbit_gap(self):
        # A condensate of exactly one pair on an atomic-scale orbit: the
        # generic level difference collapses to the single-particle gap.
        from fluxring.feasibility import orbit_gap
        from fluxring.quantities import E_CHARGE, M_E

        r = 5e-11
        geom = RingGeometry.from_wall(r=r, w=1e-12, h=1e-12, L_geo=1e-15)
        mat = Material(
            T_c=10.0, n_s0=1.0 / geom.volume, lambda_L0=1e-9, rho_n=1e-8,
            m=M_E, q=E_CHARGE,
        )
        gap = state_energy(1, 0.0, geom, mat, 0.0) - state_energy(0, 0.0, geom, mat, 0.0)
        single, kelvin = orbit_gap(M_E, r, 0)
        assert gap == pytest.approx(single, rel=1e-12)
        assert kelvin == pytest.approx(176852.0, rel=1e-4)


class TestPersistentCurrent:
    def test_zero_at_own_state(self, geom, mat):
        for n in (-2, 0, 3):
            assert persistent_current_state(n, float(n), geom, mat, 0.0) == 0.0

    def test_sign_follows_n_minus_phi(self, geom, mat):
        assert persistent_current_state(1, 0.25, geom, mat, 0.0) > 0.0
        assert persistent_current_state(0, 0.25, geom, mat, 0.0) < 0.0

    def test_preset_quarter_flux_current_is_half_microamp(self, geom, mat):
        assert abs(ground_persistent_current(0.25, geom, mat, 0.0)) == pytest.approx(
            0.5e-6, rel=1e-12
        )

    def test_flux_qubit_moment_scale(self, geom, mat):
        # Opposite-current states +/-0.5 uA around 1 um^2 split by ~1e5 mu_B.
        from fluxring.feasibility import moment_difference

        i_p = abs(ground_persistent_current(0.25, geom, mat, 0.0))
        diff = moment_difference(1e-12, i_p)
        assert close_to(diff.magnetic_mu_B, 1e5, 0.5)

    def test_periodicity_in_state_index(self, geom, mat):
        for n, phi in [(0, 0.3), (2, -0.7), (-1, 0.1)]:
            a = permitted_state(n, phi, geom, mat, 0.4)
            b = permitted_state(n + 1, phi + 1.0, geom, mat, 0.4)
            assert a.v_n == pytest.approx(b.v_n, rel=1e-12)
            assert a.E_n == pytest.approx(b.E_n, rel=1e-12)
            assert a.I_n == pytest.approx(b.I_n, rel=1e-12)


class TestGroundStateNumber:
    @pytest.mark.parametrize(
        "phi,expected", [(0.25, 0), (3.0, 3), (0.74, 1), (-0.4, 0), (-0.6, -1), (2.2, 2)]
    )
    def test_rounding(self, phi, expected):
        assert ground_state_number(phi) == expected

    def test_half_integer_tie_takes_lower_and_flags(self):
        assert ground_state_number(0.5) == 0
        assert ground_state_number(1.5) == 1
        assert ground_state_number(-0.5) == -1
        assert ground_state_degenerate(0.5)
        assert ground_state_degenerate(1.5)
        assert not ground_state_degenerate(0.4999)


class TestFluxoid:
    def test_wide_wall_with_hole_is_integer_flux(self, geom, mat):
        phi0 = flux_quantum(mat.q)
        for n in (0, 1, 3, -2):
            enclosed = fluxoid_balance(
                0.3, n, geom, mat, 0.0, FluxoidRegime.WIDE_WALL_WITH_HOLE,
                check_regime=False,
            )
            assert enclosed == n * phi0

    def test_no_hole_expels_completely(self, geom, mat):
        enclosed = fluxoid_balance(
            0.3, 0, geom, mat, 0.0, FluxoidRegime.WIDE_WALL_NO_HOLE, check_regime=False
        )
        assert enclosed == 0.0

    def test_no_hole_forbids_winding(self, geom, mat):
        with pytest.raises(DomainError):
            fluxoid_balance(
                0.3, 1, geom, mat, 0.0, FluxoidRegime.WIDE_WALL_NO_HOLE,
                check_regime=False,
            )

    def test_narrow_wall_self_consistent_solution(self, geom, mat):
        # Analytic solution of Phi = Phi_app + L_geo*I with the fluxoid
        # constraint: I = (n*Phi0 - Phi_app)/L_tot.
        enclosed = fluxoid_balance(0.25, 0, geom, mat, 0.0, FluxoidRegime.NARROW_WALL)
        assert enclosed == pytest.approx(5.120063583304097e-16, rel=1e-10)
        assert enclosed / flux_quantum(mat.q) == pytest.approx(
            0.2476051734161137, rel=1e-10
        )

    def test_narrow_wall_fluxoid_identity(self, geom, mat):
        # n*Phi0 - L_k*I_n(enclosed) reproduces the enclosed flux.
        phi0 = flux_quantum(mat.q)
        for n, phi in [(0, 0.25), (1, 0.6), (-1, -0.8)]:
            enclosed = self_consistent_flux(phi, n, geom, mat, 0.0)
            l_k = kinetic_inductance(geom, mat, 0.0)
            i_n = persistent_current_state(n, enclosed / phi0, geom, mat, 0.0)
            assert n * phi0 - l_k * i_n == pytest.approx(enclosed, rel=1e-10, abs=1e-28)

    def test_regime_validation(self, geom, mat):
        validate_regime(FluxoidRegime.NARROW_WALL, geom, mat, 0.0)
        with pytest.raises(ConfigError):
            validate_regime(FluxoidRegime.WIDE_WALL_WITH_HOLE, geom, mat, 0.0)
        wide = RingGeometry.from_wall(r=1e-6, w=1e-6, h=1e-6, L_geo=1e-11)
        with pytest.raises(ConfigError):
            validate_regime(FluxoidRegime.NARROW_WALL, wide, mat, 0.0)
        validate_regime(FluxoidRegime.WIDE_WALL_WITH_HOLE, wide, mat, 0.0)

    def test_regime_warning_zone(self, mat):
        # Between lambda/3 and 3*lambda: accepted with a warning.
        between = RingGeometry.from_wall(r=1e-6, w=60e-9, h=60e-9, L_geo=1e-11)
        with pytest.warns(UserWarning, match="narrow"):
            validate_regime(FluxoidRegime.NARROW_WALL, between, mat, 0.0)
        with pytest.warns(UserWarning, match="wide"):
            validate_regime(FluxoidRegime.WIDE_WALL_WITH_HOLE, between, mat, 0.0)

    def test_self_consistency_needs_kinetic_dominance(self, geom, mat):
        # A geometric inductance far above L_k makes the fixed point repel.
        heavy = RingGeometry(r=geom.r, s=geom.s, w=geom.w, h=geom.h, L_geo=1e-7)
        with pytest.raises(ConfigError, match="converge"):
            self_consistent_flux(0.25, 0, heavy, mat, 0.0)

    def test_kinetic_inductance_value(self, geom, mat):
        # mu_0 * lambda_L^2 * l / s with the preset's consistent depth
        expected = MU_0 * mat.lambda_L0**2 * geom.l / geom.s
        assert kinetic_inductance(geom, mat, 0.0) == pytest.approx(expected, rel=1e-12)
        assert total_inductance(geom, mat, 0.0) == pytest.approx(
            geom.L_geo + expected, rel=1e-12
        )


class TestScreening:
    def test_surface_value(self):
        assert screening_current_density(0.0, 2.5e9, 5e-8) == 2.5e9

    def test_one_depth_decay(self):
        assert screening_current_density(5e-8, 1.0, 5e-8) == pytest.approx(
            1.0 / math.e, rel=1e-14
        )

    def test_five_depths(self):
        assert screening_current_density(2.5e-7, 1.0, 5e-8) == pytest.approx(
            0.006737946999085467, rel=1e-12
        )

    def test_negative_depth_rejected(self):
        with pytest.raises(DomainError):
            screening_current_density(-1e-9, 1.0, 5e-8)


class TestAngularMomentum:
    def test_zero_case(self):
        assert angular_momentum_transfer(0, 0.0) == 0.0

    def test_quarter_flux_bound(self):
        transfer = angular_momentum_transfer(0, 0.25)
        assert abs(transfer) == pytest.approx(2.0 * math.pi * HBAR * 0.25, rel=1e-14)
        assert abs(transfer) < 2.0 * math.pi * HBAR * 0.5

    def test_meissner_scale(self):
        # B = 0.1 T over r = 1 m: the per-pair change is ~1e15 hbar.
        phi_norm = 0.1 * math.pi * 1.0**2 / flux_quantum()
        transfer = angular_momentum_transfer(0, phi_norm)
        assert close_to(abs(transfer) / HBAR, 1e15, 0.5)

    def test_condensate_aggregate(self, geom, mat):
        per_pair = angular_momentum_transfer(0, 0.25)
        total = condensate_momentum_transfer(0, 0.25, geom, mat, 0.0)
        n_pairs = geom.volume * mat.n_s0
        assert total == pytest.approx(per_pair * n_pairs, rel=1e-12)


class TestCriticalCurrent:
    IC0 = 5e-6

    def test_symmetric_direction_independence(self, geom, mat):
        for phi in np.linspace(-1.0, 2.0, 61):
            plus = critical_current(phi, self.IC0, geom, mat, 0.0, "plus")
            minus = critical_current(phi, self.IC0, geom, mat, 0.0, "minus")
            assert plus == minus

    def test_symmetric_extrema(self, geom, mat):
        grid = np.linspace(0.0, 2.0, 401)
        values = np.array(
            [critical_current(p, self.IC0, geom, mat, 0.0) for p in grid]
        )
        maxima = set(grid[values == values.max()])
        minima = set(grid[values == values.min()])
        assert maxima == {0.0, 1.0, 2.0}
        assert minima == {0.5, 1.5}
        assert values.max() == self.IC0

    def test_shift_model_half_period_relation(self, geom, mat):
        # With the largest observed shift the two directions are half a
        # period apart: I_c+(phi) = I_c-(phi + 0.5).
        for phi in np.linspace(-0.5, 1.5, 81):
            plus = critical_current(
                phi, self.IC0, geom, mat, 0.0, "plus", "shift", 0.5
            )
            minus = critical_current(
                phi + 0.5, self.IC0, geom, mat, 0.0, "minus", "shift", 0.5
            )
            assert plus == pytest.approx(minus, rel=1e-12, abs=1e-18)

    def test_shift_bound_enforced(self, geom, mat):
        with pytest.raises(DomainError):
            critical_current(0.1, self.IC0, geom, mat, 0.0, "plus", "shift", 0.51)

    def test_backaction_precondition(self, geom, mat):
        with pytest.raises(DomainError):
            critical_current(0.1, 1e-6, geom, mat, 0.0)
