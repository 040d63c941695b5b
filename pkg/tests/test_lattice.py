"""Honeycomb lattice geometry, fractions, tiling census, and design rules.

Closed-form fraction values and cell counts are checked against independent
arithmetic (exact rationals, hand-derived counting), and the Monte Carlo
estimator is treated as an oracle sharing no code with the closed forms.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from lotuskit.lattice import (
    DEFAULT_RULES,
    DesignRules,
    HoneycombSpec,
    Layout,
    PillarSpec,
    Rect,
    Zone,
    aspect_ratio,
    build_two_zone_layout,
    cell_counts,
    check_design_rules,
    hexagon_offsets,
    honeycomb_area_fraction,
    honeycomb_linear_ratio,
    monte_carlo_fraction,
    polygon_area,
    row_pitch,
    snap_to_grid,
    square_pillar_fraction,
    tile_zone,
)

WIDE = HoneycombSpec(pitch=4000, wall=1000, height=4000)
FINE = HoneycombSpec(pitch=4000, wall=400, height=4000)


class TestSpecs:
    def test_comb_diameter_derived(self):
        assert WIDE.comb_diameter == 3000
        assert FINE.comb_diameter == 3600

    def test_explicit_comb_diameter_must_satisfy_identity(self):
        spec = HoneycombSpec(pitch=4000, wall=1000, height=4000, comb_diameter=3000)
        assert spec.comb_diameter == 3000
        with pytest.raises(ValueError):
            HoneycombSpec(pitch=4000, wall=1000, height=4000, comb_diameter=2999)

    def test_rejects_wall_not_smaller_than_pitch(self):
        with pytest.raises(ValueError):
            HoneycombSpec(pitch=4000, wall=4000, height=4000)

    def test_rejects_fractional_nanometers(self):
        with pytest.raises(ValueError):
            HoneycombSpec(pitch=4000.5, wall=1000, height=4000)

    def test_accepts_integral_floats(self):
        spec = HoneycombSpec(pitch=4000.0, wall=1000, height=4000)
        assert spec.pitch == 4000 and isinstance(spec.pitch, int)

    def test_rect_overlap_is_strict_interior(self):
        a = Rect(0, 0, 10, 10)
        touching = Rect(10, 0, 10, 10)
        overlapping = Rect(9, 0, 10, 10)
        assert not a.overlaps(touching)
        assert a.overlaps(overlapping)

    def test_layout_rejects_overlapping_zones(self):
        zone = Zone(spec=WIDE, extent=Rect(0, 0, 100, 100))
        bad = Zone(spec=FINE, extent=Rect(50, 50, 100, 100))
        with pytest.raises(ValueError, match="overlap"):
            Layout(zones=(zone, bad))

    def test_empty_layout_allowed(self):
        assert Layout(zones=()).zones == ()


class TestFractions:
    def test_linear_ratio_exact(self):
        assert honeycomb_linear_ratio(WIDE) == 0.25
        assert honeycomb_linear_ratio(FINE) == 0.10

    def test_area_fraction_exact_rational(self):
        # 1 - (1 - w/p)^2, evaluated with exact rationals independently.
        for spec in (WIDE, FINE):
            q = Fraction(spec.wall, spec.pitch)
            expected = float(1 - (1 - q) ** 2)
            assert honeycomb_area_fraction(spec) == expected

    def test_reference_area_fractions(self):
        assert honeycomb_area_fraction(WIDE) == pytest.approx(0.4375, abs=1e-12)
        assert honeycomb_area_fraction(FINE) == pytest.approx(0.19, abs=1e-12)

    def test_square_pillar_fraction(self):
        spec = PillarSpec(width_a=1000, spacing_b=1000, height=4000)
        assert square_pillar_fraction(spec) == 0.25
        solid = PillarSpec(width_a=1000, spacing_b=0, height=4000)
        assert square_pillar_fraction(solid) == 1.0

    def test_aspect_ratio(self):
        assert aspect_ratio(WIDE) == 4.0
        assert aspect_ratio(FINE) == 10.0


class TestMonteCarlo:
    def test_matches_closed_form_within_3_sigma(self):
        for spec, exact in ((WIDE, 0.4375), (FINE, 0.19)):
            estimate, stderr = monte_carlo_fraction(spec, samples=200_000, seed=11)
            assert abs(estimate - exact) < 3.0 * stderr

    def test_seed_determinism_across_workers(self):
        results = {
            workers: monte_carlo_fraction(WIDE, samples=600_000, seed=5, workers=workers)
            for workers in (1, 2, 8)
        }
        assert results[1] == results[2] == results[8]

    def test_different_seeds_differ(self):
        a, _ = monte_carlo_fraction(WIDE, samples=100_000, seed=1)
        b, _ = monte_carlo_fraction(WIDE, samples=100_000, seed=2)
        assert a != b

    def test_many_seeds_stay_within_5_sigma(self):
        # Distributional sanity: repeated estimates bracket the closed form.
        exact = honeycomb_area_fraction(WIDE)
        for seed in range(30):
            estimate, stderr = monte_carlo_fraction(WIDE, samples=50_000, seed=seed)
            assert abs(estimate - exact) < 5.0 * stderr

    def test_rejects_tiny_sample_counts(self):
        with pytest.raises(ValueError):
            monte_carlo_fraction(WIDE, samples=999, seed=0)


class TestCounting:
    def test_row_pitch_snaps_to_grid(self):
        assert row_pitch(4000, 10) == 3460  # snap(4000 * sqrt(3)/2 = 3464.1)
        assert snap_to_grid(3464.1, 10) == 3460
        assert snap_to_grid(3465.0, 10) == 3470  # round-half-up

    def test_two_cell_example(self):
        zone = Zone(spec=WIDE, extent=Rect(0, 0, 4000, 3464))
        counts = cell_counts(zone)
        assert counts.total == 2
        grid = tile_zone(zone)
        assert grid.count == 2
        centers = grid.centers()
        assert centers.shape == (2, 2)
        # Base row cell at the origin; offset row at (pitch/2, row_pitch).
        assert centers.tolist() == [[0.0, 0.0], [2000.0, 3460.0]]

    def test_full_zone_census(self):
        zone = Zone(spec=WIDE, extent=Rect(0, 0, 10_000_000, 10_000_000))
        counts = cell_counts(zone)
        assert counts.levels == 2891
        assert counts.base_columns == 2500
        assert counts.total == 7_227_500

    def test_crop_census(self):
        zone = Zone(spec=WIDE, extent=Rect(0, 0, 100_000, 100_000))
        counts = cell_counts(zone)
        assert counts.levels == 29
        assert counts.base_columns == 25
        assert counts.total == 725

    def test_census_matches_brute_force(self):
        # Independent O(n^2) enumeration over a small irregular extent.
        spec = HoneycombSpec(pitch=4000, wall=400, height=4000)
        extent = Rect(0, 0, 37_130, 21_890)
        spacing = row_pitch(spec.pitch, 10)
        brute = 0
        level = 0
        while level * spacing < extent.height:
            offset = (spec.pitch // 2) if level % 2 else 0
            x = offset
            while x < extent.width:
                brute += 1
                x += spec.pitch
            level += 1
        zone = Zone(spec=spec, extent=extent)
        assert cell_counts(zone).total == brute
        assert tile_zone(zone).count == brute

    def test_offset_origin_preserves_census(self):
        base = Zone(spec=WIDE, extent=Rect(0, 0, 100_000, 100_000))
        moved = Zone(spec=WIDE, extent=Rect(10_000_000, 0, 100_000, 100_000))
        assert cell_counts(base).total == cell_counts(moved).total
        shifted = tile_zone(moved).centers()
        assert shifted[0].tolist() == [10_000_000.0, 0.0]


class TestHexagonGeometry:
    def test_vertex_set(self):
        offsets = hexagon_offsets(3000)
        assert offsets.shape == (6, 2)
        xs = sorted(offsets[:, 0].tolist())
        # Flat sides face +/-x: extreme x = +/- comb/2 (two vertices each).
        assert xs[0] == xs[1] == -1500.0
        assert xs[4] == xs[5] == 1500.0
        # Extreme y = +/- comb/sqrt(3) (single vertices).
        ys = sorted(offsets[:, 1].tolist())
        assert ys[0] == pytest.approx(-3000 / math.sqrt(3.0))
        assert ys[-1] == pytest.approx(3000 / math.sqrt(3.0))

    def test_hexagon_area_closed_form(self):
        # Area of a flat-to-flat width c hexagon: c^2 * sqrt(3)/2.
        area = polygon_area(hexagon_offsets(3000))
        assert area == pytest.approx(3000.0**2 * math.sqrt(3.0) / 2.0, rel=1e-12)

    def test_neighbor_openings_are_disjoint(self):
        # Openings of adjacent cells must be separated by a positive wall:
        # check minimum vertex-pair distance across all three neighbor
        # directions stays below pitch but polygons never intersect.
        spec = WIDE
        spacing = spec.pitch * math.sqrt(3.0) / 2.0
        hexagon = hexagon_offsets(spec.comb_diameter)
        neighbors = [
            (spec.pitch, 0.0),
            (spec.pitch / 2.0, spacing),
            (-spec.pitch / 2.0, spacing),
        ]
        for dx, dy in neighbors:
            shifted = hexagon + (dx, dy)
            # Separating-axis check on x and on the two hexagon edge normals.
            gap_found = False
            for nx, ny in ((1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0), (0.5, -math.sqrt(3.0) / 2.0)):
                a = hexagon[:, 0] * nx + hexagon[:, 1] * ny
                b = shifted[:, 0] * nx + shifted[:, 1] * ny
                if a.max() < b.min() or b.max() < a.min():
                    gap_found = True
            assert gap_found, f"openings toward ({dx},{dy}) are not separated"


class TestTiling:
    def test_interior_polygons_are_whole_hexagons(self):
        zone = Zone(spec=WIDE, extent=Rect(0, 0, 20_000, 20_000))
        polygons = list(tile_zone(zone).polygons())
        assert len(polygons) == cell_counts(zone).total
        interior = [p for p in polygons if len(p) == 6]
        assert interior, "expected at least one unclipped hexagon"
        full_area = polygon_area(hexagon_offsets(WIDE.comb_diameter))
        for polygon in interior:
            assert polygon_area(polygon) == pytest.approx(full_area, rel=2e-3)

    def test_boundary_polygons_clipped_to_extent(self):
        zone = Zone(spec=WIDE, extent=Rect(0, 0, 10_000, 10_000))
        for polygon in tile_zone(zone).polygons():
            assert polygon[:, 0].min() >= 0
            assert polygon[:, 1].min() >= 0
            assert polygon[:, 0].max() <= 10_000
            assert polygon[:, 1].max() <= 10_000

    def test_minimal_extent_still_covers(self):
        zone = Zone(spec=WIDE, extent=Rect(0, 0, 100, 100))
        polygons = list(tile_zone(zone).polygons())
        assert len(polygons) >= 1

    def test_area_ratio_approaches_area_fraction(self):
        # Opening area over extent area ~ 1 - area_fraction on a large crop.
        zone = Zone(spec=WIDE, extent=Rect(0, 0, 200_000, 200_000))
        opening_area = sum(polygon_area(p) for p in tile_zone(zone).polygons())
        extent_area = 200_000.0**2
        expected_open = 1.0 - honeycomb_area_fraction(WIDE)
        assert opening_area / extent_area == pytest.approx(expected_open, rel=0.01)

    def test_row_major_ordering(self):
        zone = Zone(spec=WIDE, extent=Rect(0, 0, 30_000, 30_000))
        centers = tile_zone(zone).centers()
        ys = centers[:, 1]
        assert (np.diff(ys) >= 0).all()
        for y in np.unique(ys):
            xs = centers[ys == y][:, 0]
            assert (np.diff(xs) > 0).all()


class TestTwoZoneLayout:
    def test_reference_arrangement(self):
        layout = build_two_zone_layout(WIDE, FINE)
        assert len(layout.zones) == 2
        a, b = layout.zones
        assert (a.extent.x, a.extent.y) == (0, 0)
        assert (b.extent.x, b.extent.y) == (10_000_000, 0)
        assert a.extent.width == a.extent.height == 10_000_000
        # Abutting, not overlapping: shared edge only.
        assert not a.extent.overlaps(b.extent)
        assert a.extent.x_max == b.extent.x

    def test_identical_specs_still_two_zones(self):
        layout = build_two_zone_layout(WIDE, WIDE)
        assert len(layout.zones) == 2

    def test_mismatched_pitch_rejected(self):
        other = HoneycombSpec(pitch=5000, wall=1000, height=4000)
        with pytest.raises(ValueError, match="pitch"):
            build_two_zone_layout(WIDE, other)


class TestDesignRules:
    def test_reference_designs_pass(self):
        assert check_design_rules(WIDE) == []
        assert check_design_rules(FINE) == []
        assert check_design_rules(build_two_zone_layout(WIDE, FINE)) == []

    def test_aspect_limit_is_boundary_inclusive(self):
        # wall 400, height 4000 -> ratio exactly 10 with limit 10: passes.
        assert aspect_ratio(FINE) == DEFAULT_RULES.max_aspect_ratio
        assert check_design_rules(FINE) == []

    def test_thin_wall_flagged(self):
        thin = HoneycombSpec(pitch=4000, wall=300, height=3000)
        violations = check_design_rules(thin)
        assert [v.rule for v in violations] == ["min_wall"]
        assert violations[0].value == 300
        assert violations[0].limit == 400

    def test_tall_thin_structure_flags_aspect(self):
        tall = HoneycombSpec(pitch=4000, wall=400, height=10_000)
        rules = {v.rule for v in check_design_rules(tall)}
        assert "max_aspect_ratio" in rules
        assert "max_height" in rules

    def test_off_grid_dimensions_flagged(self):
        off = HoneycombSpec(pitch=4004, wall=401, height=4000)
        rules = [v.rule for v in check_design_rules(off)]
        assert "fabrication_grid(pitch)" in rules
        assert "fabrication_grid(wall)" in rules

    def test_layout_violations_name_the_zone(self):
        thin = HoneycombSpec(pitch=4000, wall=300, height=3000)
        layout = build_two_zone_layout(WIDE, thin)
        violations = check_design_rules(layout)
        assert len(violations) == 1
        assert violations[0].subject == "zone@(10000000,0)nm"
        assert "min_wall" in str(violations[0])

    def test_custom_rules(self):
        lax = DesignRules(min_wall=100, max_aspect_ratio=50.0, max_height=20_000)
        tall = HoneycombSpec(pitch=4000, wall=400, height=10_000)
        assert check_design_rules(tall, lax) == []
