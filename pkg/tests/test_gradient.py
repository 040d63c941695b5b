"""Solid-fraction gradients, droplet forces, and quasi-static transport.

Force-chain reference numbers were frozen from an independent high-precision
evaluation of the closed forms (see the cosine/footprint constants below).
"""

import math

import pytest

from lotuskit.gradient import (
    FootprintError,
    GradientDesign,
    GradientSpec,
    Measure,
    SimulationTrace,
    TerminalReason,
    design_linear_gradient,
    fraction_for_wall,
    local_apparent_angle,
    net_driving_force,
    retention_force,
    simulate_droplet,
    trace_to_csv,
    wall_for_fraction,
)
from lotuskit.lattice import DesignRules
from lotuskit.wetting import Droplet, Material, spherical_cap_footprint_radius

WATER = Material(name="water", theta_flat=81.0)

# Frozen oracles.
ORACLE_ANGLE_F010 = 152.17244227349166  # apparent angle at f=0.10, theta=81
ORACLE_ANGLE_F025 = 135.30748711240016  # apparent angle at f=0.25, theta=81
ORACLE_DELTA_COS = 0.17346516975603463  # cos(135.307...) - cos(152.172...)
ORACLE_RETENTION = 2.0476956269470325e-5  # f=1, dtheta=10, theta=90, 1.1 ul


def reference_gradient(measure=Measure.LINEAR_RATIO) -> GradientDesign:
    """10 mm ramp, f 0.10 -> 0.25, pitch 4 um, 2 mm wide."""
    spec = GradientSpec(
        length=10_000_000,
        lateral_width=2_000_000,
        pitch=4000,
        f_start=0.10,
        f_end=0.25,
        measure=measure,
    )
    return design_linear_gradient(spec)


class TestWallForFraction:
    def test_linear_endpoints(self):
        assert wall_for_fraction(0.10, 4000, Measure.LINEAR_RATIO) == 400
        assert wall_for_fraction(0.25, 4000, Measure.LINEAR_RATIO) == 1000

    def test_area_endpoints(self):
        # w = p(1 - sqrt(1 - f)): exact at 0.4375 -> 1000 and 0.19 -> 400.
        assert wall_for_fraction(0.4375, 4000, Measure.AREA_FRACTION) == 1000
        assert wall_for_fraction(0.19, 4000, Measure.AREA_FRACTION) == 400

    def test_snaps_to_fabrication_grid(self):
        assert wall_for_fraction(0.1003, 4000, Measure.LINEAR_RATIO) == 400
        assert wall_for_fraction(0.1013, 4000, Measure.LINEAR_RATIO) == 410

    def test_degenerate_fraction_rejected(self):
        with pytest.raises(ValueError):
            wall_for_fraction(0.0004, 4000, Measure.LINEAR_RATIO)

    def test_round_trip_on_grid_points(self):
        for wall in range(400, 1001, 10):
            for measure in Measure:
                fraction = fraction_for_wall(wall, 4000, measure)
                assert wall_for_fraction(fraction, 4000, measure) == wall


class TestDesignLinearGradient:
    def test_column_census_and_endpoints(self):
        design = reference_gradient()
        assert design.n_columns == 2500
        assert design.columns[0] == (0, 400)
        assert design.columns[-1] == (2499 * 4000, 1000)
        assert design.length_nm == 10_000_000

    def test_walls_monotone_for_monotone_ramp(self):
        design = reference_gradient()
        walls = [wall for _, wall in design.columns]
        assert all(b >= a for a, b in zip(walls, walls[1:]))

    def test_single_column_design(self):
        spec = GradientSpec(
            length=4000, lateral_width=100_000, pitch=4000,
            f_start=0.25, f_end=0.25, measure=Measure.LINEAR_RATIO,
        )
        design = design_linear_gradient(spec)
        assert design.n_columns == 1
        assert design.columns[0] == (0, 1000)

    def test_rule_violations_rejected_exhaustively(self):
        spec = GradientSpec(
            length=400_000, lateral_width=100_000, pitch=4000,
            f_start=0.05, f_end=0.25, measure=Measure.LINEAR_RATIO,
        )
        with pytest.raises(ValueError, match="min_wall"):
            design_linear_gradient(spec)

    def test_custom_rules_admit_thin_walls(self):
        spec = GradientSpec(
            length=400_000, lateral_width=100_000, pitch=4000,
            f_start=0.05, f_end=0.25, measure=Measure.LINEAR_RATIO,
        )
        lax = DesignRules(min_wall=100, max_aspect_ratio=50.0)
        design = design_linear_gradient(spec, lax)
        assert design.columns[0][1] == 200

    def test_manual_columns_validated(self):
        spec = GradientSpec(
            length=8000, lateral_width=100_000, pitch=4000,
            f_start=0.1, f_end=0.2, measure=Measure.LINEAR_RATIO,
        )
        with pytest.raises(ValueError, match="column 1"):
            GradientDesign(columns=((0, 400), (4001, 800)), spec=spec)
        with pytest.raises(ValueError, match="non-decreasing"):
            GradientDesign(columns=((0, 800), (4000, 400)), spec=spec)


class TestColumnLookup:
    def test_index_quantization(self):
        design = reference_gradient()
        assert design.column_index(0.0) == 0
        assert design.column_index(3999e-9) == 0
        assert design.column_index(4000e-9) == 1
        assert design.column_index(design.length_m) == 2499

    def test_out_of_range_rejected(self):
        design = reference_gradient()
        with pytest.raises(ValueError):
            design.column_index(-1e-9)
        with pytest.raises(ValueError):
            design.column_index(design.length_m + 1e-9)

    def test_local_angle_endpoints(self):
        design = reference_gradient()
        assert local_apparent_angle(design, 0.0, WATER) == pytest.approx(
            ORACLE_ANGLE_F010, abs=1e-9
        )
        assert local_apparent_angle(design, design.length_m, WATER) == pytest.approx(
            ORACLE_ANGLE_F025, abs=1e-9
        )

    def test_local_angle_monotone_non_increasing(self):
        design = reference_gradient()
        xs = [k * 1e-4 for k in range(101)]
        angles = [local_apparent_angle(design, x, WATER) for x in xs]
        assert all(b <= a for a, b in zip(angles, angles[1:]))

    def test_uniform_design_has_constant_angle(self):
        spec = GradientSpec(
            length=100_000, lateral_width=100_000, pitch=4000,
            f_start=0.25, f_end=0.25, measure=Measure.LINEAR_RATIO,
        )
        design = design_linear_gradient(spec)
        angles = {local_apparent_angle(design, k * 1e-5, WATER) for k in range(10)}
        assert len(angles) == 1


class TestNetDrivingForce:
    def test_uniform_design_gives_zero(self):
        spec = GradientSpec(
            length=4_000_000, lateral_width=100_000, pitch=4000,
            f_start=0.25, f_end=0.25, measure=Measure.LINEAR_RATIO,
        )
        design = design_linear_gradient(spec)
        droplet = Droplet(volume=1.1e-9, position=2e-3)
        assert net_driving_force(design, droplet, WATER) == 0.0

    def test_positive_toward_rising_fraction(self):
        design = reference_gradient()
        droplet = Droplet(volume=1.1e-9, position=5e-3)
        assert net_driving_force(design, droplet, WATER) > 0.0

    def test_antisymmetric_under_column_reversal(self):
        design = reference_gradient()
        reversed_spec = GradientSpec(
            length=design.spec.length,
            lateral_width=design.spec.lateral_width,
            pitch=design.spec.pitch,
            f_start=design.spec.f_end,
            f_end=design.spec.f_start,
            measure=design.spec.measure,
        )
        mirrored = GradientDesign(
            columns=tuple(
                (k * design.spec.pitch, wall)
                for k, (_, wall) in enumerate(reversed(design.columns))
            ),
            spec=reversed_spec,
        )
        droplet = Droplet(volume=1.1e-9, position=3.0001e-3)
        twin = Droplet(volume=1.1e-9, position=design.length_m - 3.0001e-3)
        forward = net_driving_force(design, droplet, WATER)
        backward = net_driving_force(mirrored, twin, WATER)
        assert backward == pytest.approx(-forward, rel=1e-9)

    def test_footprint_overhang_rejected(self):
        design = reference_gradient()
        with pytest.raises(FootprintError):
            net_driving_force(design, Droplet(volume=1.1e-9, position=1e-4), WATER)

    def test_self_consistent_footprint_radius(self):
        # The solved radius must satisfy r = cap_radius(V, mean angle) with
        # the front/rear angles sampled at x +/- r; verify via the recorded
        # trace thetas of a one-evaluation simulation.
        design = reference_gradient()
        droplet = Droplet(volume=1.1e-9, position=5e-3)
        trace = simulate_droplet(design, droplet, WATER, max_steps=1)
        record = trace.steps[0]
        radius = spherical_cap_footprint_radius(
            1.1e-9, 0.5 * (record.theta_front + record.theta_rear)
        )
        expected = (
            WATER.surface_tension
            * 2.0
            * radius
            * (
                math.cos(math.radians(record.theta_front))
                - math.cos(math.radians(record.theta_rear))
            )
        )
        assert record.net_force == pytest.approx(expected, rel=1e-9)
        front = local_apparent_angle(design, droplet.position + radius, WATER)
        rear = local_apparent_angle(design, droplet.position - radius, WATER)
        assert record.theta_front == pytest.approx(front, abs=1e-9)
        assert record.theta_rear == pytest.approx(rear, abs=1e-9)


class TestRetentionForce:
    def test_zero_hysteresis_is_zero(self):
        droplet = Droplet(volume=1.1e-9)
        assert retention_force(droplet, WATER, 0.25) == 0.0

    def test_frozen_oracle_chain(self):
        # f=1, hysteresis 10 deg, flat angle 90: advancing 95, receding 85,
        # footprint from the cap relation at their 90-degree mean.
        material = Material(name="x", theta_flat=90.0, hysteresis=10.0)
        droplet = Droplet(volume=1.1e-9)
        assert retention_force(droplet, material, 1.0) == pytest.approx(
            ORACLE_RETENTION, rel=1e-9
        )

    def test_monotone_in_hysteresis(self):
        droplet = Droplet(volume=1.1e-9)
        previous = 0.0
        for hysteresis in (0.0, 2.0, 5.0, 10.0, 20.0):
            material = Material(name="x", theta_flat=90.0, hysteresis=hysteresis)
            value = retention_force(droplet, material, 0.25)
            assert value >= previous
            previous = value

    def test_never_negative(self):
        for hysteresis in (0.0, 1.0, 15.0):
            material = Material(name="x", theta_flat=81.0, hysteresis=hysteresis)
            assert retention_force(Droplet(volume=1.1e-9), material, 0.19) >= 0.0


class TestSimulateDroplet:
    def test_uniform_design_balances_immediately(self):
        spec = GradientSpec(
            length=4_000_000, lateral_width=100_000, pitch=4000,
            f_start=0.25, f_end=0.25, measure=Measure.LINEAR_RATIO,
        )
        design = design_linear_gradient(spec)
        droplet = Droplet(volume=1.1e-9, position=2e-3)
        trace = simulate_droplet(design, droplet, WATER)
        assert trace.terminal_reason is TerminalReason.FORCE_BALANCE
        assert len(trace.steps) == 1
        assert trace.steps[0].moved is False
        assert trace.final_position == 2e-3

    def test_monotone_gradient_reaches_end(self):
        design = reference_gradient()
        droplet = Droplet(volume=1.1e-9, position=1e-3)
        trace = simulate_droplet(design, droplet, WATER)
        assert trace.terminal_reason is TerminalReason.REACHED_END
        positions = trace.positions
        assert all(b > a for a, b in zip(positions, positions[1:]))
        assert trace.final_position > 9e-3

    def test_inflated_retention_balances_at_step_zero(self):
        design = reference_gradient()
        sticky = Material(name="sticky", theta_flat=81.0, hysteresis=30.0)
        droplet = Droplet(volume=1.1e-9, position=1e-3)
        trace = simulate_droplet(design, droplet, sticky)
        assert trace.terminal_reason is TerminalReason.FORCE_BALANCE
        assert len(trace.steps) == 1
        assert trace.steps[0].moved is False

    def test_max_steps_exhaustion(self):
        design = reference_gradient()
        droplet = Droplet(volume=1.1e-9, position=1e-3)
        trace = simulate_droplet(design, droplet, WATER, max_steps=10)
        assert trace.terminal_reason is TerminalReason.MAX_STEPS
        assert len(trace.steps) == 10
        assert trace.steps[-1].moved is True

    def test_unfit_initial_position_raises(self):
        design = reference_gradient()
        with pytest.raises(FootprintError):
            simulate_droplet(design, Droplet(volume=1.1e-9, position=1e-4), WATER)

    def test_step_halving_terminal_stability(self):
        spec = GradientSpec(
            length=2_000_000, lateral_width=100_000, pitch=4000,
            f_start=0.10, f_end=0.25, measure=Measure.LINEAR_RATIO,
        )
        design = design_linear_gradient(spec)
        droplet = Droplet(volume=1.1e-9, position=1e-3)
        coarse = simulate_droplet(design, droplet, WATER, step=4e-6)
        fine = simulate_droplet(design, droplet, WATER, step=2e-6)
        assert abs(coarse.final_position - fine.final_position) < 2 * 4e-6

    def test_step_validation(self):
        design = reference_gradient()
        droplet = Droplet(volume=1.1e-9, position=1e-3)
        with pytest.raises(ValueError):
            simulate_droplet(design, droplet, WATER, step=0.0)
        with pytest.raises(ValueError):
            simulate_droplet(design, droplet, WATER, max_steps=0)


class TestTraceCsv:
    def test_header_and_shape(self):
        design = reference_gradient()
        droplet = Droplet(volume=1.1e-9, position=1e-3)
        trace = simulate_droplet(design, droplet, WATER, max_steps=5)
        text = trace_to_csv(trace)
        lines = text.splitlines()
        assert lines[0] == "position_m,theta_front_deg,theta_rear_deg,net_force_N,moved"
        assert len(lines) == 1 + len(trace.steps)
        first = lines[1].split(",")
        assert float(first[0]) == trace.steps[0].position
        assert first[4] == "1"
        assert text.endswith("\n")

    def test_round_trip_floats(self):
        design = reference_gradient()
        droplet = Droplet(volume=1.1e-9, position=1e-3)
        trace = simulate_droplet(design, droplet, WATER, max_steps=3)
        lines = trace_to_csv(trace).splitlines()[1:]
        for line, step in zip(lines, trace.steps):
            parts = line.split(",")
            assert float(parts[1]) == step.theta_front
            assert float(parts[2]) == step.theta_rear
            assert float(parts[3]) == step.net_force

    def test_empty_trace_is_header_only(self):
        trace = SimulationTrace(steps=(), terminal_reason=TerminalReason.MAX_STEPS)
        assert trace_to_csv(trace) == (
            "position_m,theta_front_deg,theta_rear_deg,net_force_N,moved\n"
        )
