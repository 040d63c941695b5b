"""Honeycomb / pillar pattern geometry, surface fractions, and design rules.

The patterns handled here are hexagonal-cell ("honeycomb") lattices: a
triangular grid of hexagonal openings separated by thin solid walls, plus a
simpler square-pillar pattern used for fraction comparisons.  All lengths at
this module's boundaries are integer nanometers, which keeps the geometric
identities (``comb_diameter + wall == pitch``) exact.

Lattice conventions
-------------------
* Hexagonal openings have their flat sides facing left/right (vertices at
  top and bottom); ``comb_diameter`` is the flat-to-flat width, so walls
  between same-row neighbors are exactly ``pitch - comb_diameter`` thick.
* Cell centers form a triangular lattice: column spacing = ``pitch`` along
  x, row spacing = ``pitch * sqrt(3)/2`` along y (snapped to the fabrication
  grid), and every other row shifted by ``pitch / 2``.
* A cell belongs to a zone iff its center lies in the half-open extent
  ``[x, x+width) x [y, y+height)``; its opening polygon is clipped to the
  extent rectangle.

Two independent routes to the solid area fraction are provided: the closed
form ``1 - (1 - wall/pitch)^2`` and a seeded Monte Carlo estimator with an
exact point-in-hexagon test.  They deliberately share no geometry code.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction as _Rational
from typing import Iterator, Union

import numpy as np

__all__ = [
    "HoneycombSpec",
    "PillarSpec",
    "Rect",
    "Zone",
    "Layout",
    "DesignRules",
    "RuleViolation",
    "CellGrid",
    "CellCounts",
    "DEFAULT_RULES",
    "ZONE_SIDE_NM",
    "square_pillar_fraction",
    "honeycomb_linear_ratio",
    "honeycomb_area_fraction",
    "monte_carlo_fraction",
    "snap_to_grid",
    "row_pitch",
    "hexagon_offsets",
    "cell_counts",
    "tile_zone",
    "build_two_zone_layout",
    "check_design_rules",
    "aspect_ratio",
    "polygon_area",
]

#: Side length of one layout zone in the standard two-zone arrangement: 10 mm.
ZONE_SIDE_NM = 10_000_000

#: Monte Carlo work unit.  Fixed so that the estimate for a given
#: (samples, seed) is bitwise identical no matter how many workers run.
_MC_CHUNK = 1 << 18


def _as_int_nm(value: object, name: str, minimum: int = 1) -> int:
    """Coerce a length to integer nanometers, rejecting fractional values."""
    if isinstance(value, bool) or not isinstance(value, (int, float, np.integer)):
        raise TypeError(f"{name} must be a number in integer nanometers, got {value!r}")
    as_int = int(value)
    if as_int != value:
        raise ValueError(f"{name} must be an integer nanometer count, got {value!r}")
    if as_int < minimum:
        raise ValueError(f"{name} must be >= {minimum} nm, got {value!r}")
    return as_int


@dataclass(frozen=True)
class HoneycombSpec:
    """Unit-cell geometry of a honeycomb pattern, in integer nanometers.

    Attributes
    ----------
    pitch:
        Flat-to-flat period of the cell lattice (center-to-center distance
        of same-row neighbors), > 0.
    wall:
        Thickness of the solid wall separating neighboring openings,
        0 < wall < pitch.
    height:
        Structure height (metadata for aspect-ratio rules; the lattice
        itself is 2D), > 0.
    comb_diameter:
        Flat-to-flat width of the hexagonal opening.  Derived as
        ``pitch - wall`` when omitted; if given it must satisfy
        ``comb_diameter + wall == pitch`` exactly.
    """

    pitch: int
    wall: int
    height: int
    comb_diameter: int = None  # type: ignore[assignment]  # derived when omitted

    def __post_init__(self) -> None:
        object.__setattr__(self, "pitch", _as_int_nm(self.pitch, "pitch"))
        object.__setattr__(self, "wall", _as_int_nm(self.wall, "wall"))
        object.__setattr__(self, "height", _as_int_nm(self.height, "height"))
        if self.wall >= self.pitch:
            raise ValueError(
                f"wall ({self.wall} nm) must be thinner than pitch ({self.pitch} nm)"
            )
        if self.comb_diameter is None:
            object.__setattr__(self, "comb_diameter", self.pitch - self.wall)
        else:
            object.__setattr__(
                self, "comb_diameter", _as_int_nm(self.comb_diameter, "comb_diameter")
            )
        if self.comb_diameter + self.wall != self.pitch:
            raise ValueError(
                f"comb_diameter + wall must equal pitch exactly: "
                f"{self.comb_diameter} + {self.wall} != {self.pitch}"
            )


@dataclass(frozen=True)
class PillarSpec:
    """Square-pillar pattern geometry, in integer nanometers.

    Pillars of width ``width_a`` on a square grid with gaps of
    ``spacing_b`` between pillar edges; period = ``width_a + spacing_b``.
    """

    width_a: int
    spacing_b: int
    height: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "width_a", _as_int_nm(self.width_a, "width_a"))
        object.__setattr__(
            self, "spacing_b", _as_int_nm(self.spacing_b, "spacing_b", minimum=0)
        )
        object.__setattr__(self, "height", _as_int_nm(self.height, "height"))


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in integer nanometers (origin + size)."""

    x: int
    y: int
    width: int
    height: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _as_int_nm(self.x, "x", minimum=-(2**62)))
        object.__setattr__(self, "y", _as_int_nm(self.y, "y", minimum=-(2**62)))
        object.__setattr__(self, "width", _as_int_nm(self.width, "width"))
        object.__setattr__(self, "height", _as_int_nm(self.height, "height"))

    @property
    def x_max(self) -> int:
        return self.x + self.width

    @property
    def y_max(self) -> int:
        return self.y + self.height

    def overlaps(self, other: "Rect") -> bool:
        """True if the two rectangles share interior area (edges may touch)."""
        return (
            self.x < other.x_max
            and other.x < self.x_max
            and self.y < other.y_max
            and other.y < self.y_max
        )


@dataclass(frozen=True)
class Zone:
    """One honeycomb pattern placed over a rectangular extent."""

    spec: HoneycombSpec
    extent: Rect


@dataclass(frozen=True)
class Layout:
    """An ordered set of pattern zones with pairwise non-overlapping extents."""

    zones: tuple[Zone, ...]
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "zones", tuple(self.zones))
        for i, a in enumerate(self.zones):
            for b in self.zones[i + 1 :]:
                if a.extent.overlaps(b.extent):
                    raise ValueError(
                        f"zone extents overlap: {a.extent} and {b.extent}"
                    )


@dataclass(frozen=True)
class DesignRules:
    """Fabrication limits a pattern must satisfy.

    Attributes
    ----------
    min_wall:
        Thinnest wall that survives fabrication, nm.
    max_aspect_ratio:
        Largest allowed height/wall ratio (demolding limit); boundary
        inclusive — a ratio exactly at the limit passes.
    max_height:
        Tallest allowed structure, nm.
    fabrication_grid:
        Writing-address grid, nm; wall, pitch, and height must be multiples.
    """

    min_wall: int = 400
    max_aspect_ratio: float = 10.0
    max_height: int = 4000
    fabrication_grid: int = 10

    def __post_init__(self) -> None:
        object.__setattr__(self, "min_wall", _as_int_nm(self.min_wall, "min_wall"))
        object.__setattr__(self, "max_height", _as_int_nm(self.max_height, "max_height"))
        object.__setattr__(
            self, "fabrication_grid", _as_int_nm(self.fabrication_grid, "fabrication_grid")
        )
        if not self.max_aspect_ratio > 0:
            raise ValueError(
                f"max_aspect_ratio must be > 0, got {self.max_aspect_ratio!r}"
            )


#: Default rules: 400 nm minimum wall, aspect ratio up to 10, structures up
#: to 4 um tall, 10 nm writing grid.
DEFAULT_RULES = DesignRules()


@dataclass(frozen=True)
class RuleViolation:
    """One failed design-rule check.  Violations are data, not exceptions."""

    rule: str
    value: float
    limit: float
    subject: str

    def __str__(self) -> str:
        return f"{self.subject}: {self.rule}: value {self.value} violates limit {self.limit}"


def square_pillar_fraction(spec: PillarSpec) -> float:
    """Solid fraction of a square-pillar pattern: ``a^2 / (a + b)^2``.

    ``a`` is the pillar width, ``b`` the edge-to-edge spacing; the liquid in
    the composite state touches only the pillar tops, one ``a x a`` square
    per ``(a+b) x (a+b)`` period.
    """
    ratio = _Rational(spec.width_a, spec.width_a + spec.spacing_b)
    return float(ratio * ratio)


def honeycomb_linear_ratio(spec: HoneycombSpec) -> float:
    """Wall thickness over pitch: the one-dimensional solid ratio.

    This is the "opening ratio" convention used when a honeycomb design is
    characterized by a single cut across the lattice; it understates the
    true solid *area* fraction (see :func:`honeycomb_area_fraction`).
    """
    return float(_Rational(spec.wall, spec.pitch))


def honeycomb_area_fraction(spec: HoneycombSpec) -> float:
    """Solid area fraction of the honeycomb: ``1 - (1 - wall/pitch)^2``.

    The hexagonal openings have flat-to-flat size ``pitch - wall`` on a
    lattice of period ``pitch``; openings cover ``(comb/pitch)^2`` of the
    plane regardless of hexagon orientation, so the solid remainder is
    ``1 - (1 - q)^2 = 2q - q^2`` with ``q = wall/pitch``.  Evaluated in
    exact rational arithmetic, rounded once to float.
    """
    q = _Rational(spec.wall, spec.pitch)
    return float(2 * q - q * q)


def aspect_ratio(spec: HoneycombSpec) -> float:
    """Structure height over wall thickness (the demolding-risk number)."""
    return spec.height / spec.wall


def snap_to_grid(value_nm: float, grid_nm: int) -> int:
    """Round a length to the nearest fabrication-grid multiple, half up."""
    if grid_nm <= 0:
        raise ValueError(f"grid_nm must be > 0, got {grid_nm!r}")
    return int(math.floor(value_nm / grid_nm + 0.5)) * grid_nm


# --------------------------------------------------------------------------
# Monte Carlo area fraction (independent oracle for the closed form)
# --------------------------------------------------------------------------

def _mc_chunk_solid_count(
    spec: HoneycombSpec, chunk_index: int, chunk_samples: int, seed: int
) -> int:
    """Classify one chunk of random points; returns the solid-point count.

    Each chunk derives its own generator from (seed, chunk_index), so the
    full stream is independent of how chunks are distributed over workers.
    """
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,))
    )
    pitch = float(spec.pitch)
    row_spacing = pitch * math.sqrt(3.0) / 2.0
    points = rng.random((chunk_samples, 2))
    xs = points[:, 0] * pitch
    ys = points[:, 1] * (2.0 * row_spacing)  # one full two-row period

    half_comb = spec.comb_diameter / 2.0
    sqrt3_half = math.sqrt(3.0) / 2.0
    inside_opening = np.zeros(chunk_samples, dtype=bool)

    # Nearest candidate openings: the two bracketing rows, and within each
    # row the two bracketing columns (rows alternate a half-pitch shift).
    base_row = np.floor(ys / row_spacing).astype(np.int64)
    for row_step in (0, 1):
        row = base_row + row_step
        center_y = row * row_spacing
        offset_x = np.where(row % 2 == 0, 0.0, pitch / 2.0)
        base_col = np.floor((xs - offset_x) / pitch)
        for col_step in (0, 1):
            center_x = offset_x + (base_col + col_step) * pitch
            dx = xs - center_x
            dy = ys - center_y
            proj_a = np.abs(dx)
            proj_b = np.abs(0.5 * dx + sqrt3_half * dy)
            proj_c = np.abs(0.5 * dx - sqrt3_half * dy)
            inside_opening |= (
                np.maximum(proj_a, np.maximum(proj_b, proj_c)) <= half_comb
            )
    return int(chunk_samples - np.count_nonzero(inside_opening))


def monte_carlo_fraction(
    spec: HoneycombSpec, samples: int, seed: int, workers: int = 1
) -> tuple[float, float]:
    """Estimate the solid area fraction by uniform random sampling.

    Points are drawn uniformly over one lattice period (pitch wide, two
    rows tall) and classified by an exact point-in-hexagon test against the
    nearby openings; a point is solid iff it lies in no opening.  This
    shares no code with :func:`honeycomb_area_fraction` and serves as its
    independent check.

    Parameters
    ----------
    spec:
        Pattern geometry.
    samples:
        Number of random points, >= 1000.
    seed:
        Non-negative 64-bit seed.  Results for a given (samples, seed) are
        bitwise identical regardless of ``workers``: work is split into
        fixed-size chunks, each with a generator derived from
        (seed, chunk_index), and chunk counts are summed in index order.
    workers:
        Number of worker threads classifying chunks concurrently.

    Returns
    -------
    tuple[float, float]
        (solid fraction estimate, binomial standard error).
    """
    if samples < 1000:
        raise ValueError(f"samples must be >= 1000, got {samples!r}")
    if seed < 0:
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers!r}")

    chunk_sizes = [
        min(_MC_CHUNK, samples - start) for start in range(0, samples, _MC_CHUNK)
    ]
    if workers == 1:
        counts = [
            _mc_chunk_solid_count(spec, index, size, seed)
            for index, size in enumerate(chunk_sizes)
        ]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(
                pool.map(
                    lambda item: _mc_chunk_solid_count(spec, item[0], item[1], seed),
                    enumerate(chunk_sizes),
                )
            )
    solid = sum(counts)
    estimate = solid / samples
    std_error = math.sqrt(estimate * (1.0 - estimate) / samples)
    return estimate, std_error


# --------------------------------------------------------------------------
# Tiling
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CellCounts:
    """Closed-form cell census of a tiled zone."""

    levels: int
    base_columns: int
    offset_columns: int

    @property
    def total(self) -> int:
        base_rows = (self.levels + 1) // 2
        offset_rows = self.levels // 2
        return base_rows * self.base_columns + offset_rows * self.offset_columns


def row_pitch(pitch: int, fabrication_grid: int = 10) -> int:
    """Vertical lattice row spacing: ``pitch * sqrt(3)/2`` snapped to the grid."""
    spacing = snap_to_grid(pitch * math.sqrt(3.0) / 2.0, fabrication_grid)
    if spacing <= 0:
        raise ValueError(
            f"row pitch collapses to zero on a {fabrication_grid} nm grid "
            f"(pitch {pitch} nm is too small)"
        )
    return spacing


def cell_counts(zone: Zone, fabrication_grid: int = 10) -> CellCounts:
    """Cell census of a zone without materializing any geometry.

    Rows sit at ``y = extent.y + level * row_pitch`` for levels 0, 1, ...;
    even levels start at ``extent.x``, odd levels are shifted half a pitch.
    A cell is counted iff its center lies inside the half-open extent.
    """
    pitch = zone.spec.pitch
    extent = zone.extent
    row_spacing = row_pitch(pitch, fabrication_grid)
    levels = -(-extent.height // row_spacing)
    base_columns = -(-extent.width // pitch)
    if 2 * extent.width > pitch:
        offset_columns = -(-(2 * extent.width - pitch) // (2 * pitch))
    else:
        offset_columns = 0
    return CellCounts(levels=levels, base_columns=base_columns, offset_columns=offset_columns)


def hexagon_offsets(comb_diameter: int) -> np.ndarray:
    """Vertex offsets of a flat-to-flat ``comb_diameter`` hexagon, CCW.

    Flat sides face +/-x; vertices sit at the top and bottom.
    """
    half_width = comb_diameter / 2.0
    edge_y = comb_diameter * math.sqrt(3.0) / 6.0
    apex_y = comb_diameter * math.sqrt(3.0) / 3.0
    return np.array(
        [
            (half_width, -edge_y),
            (half_width, edge_y),
            (0.0, apex_y),
            (-half_width, edge_y),
            (-half_width, -edge_y),
            (0.0, -apex_y),
        ]
    )


def _clip_convex_to_rect(points: list[tuple[float, float]], rect: Rect) -> list[tuple[float, float]]:
    """Sutherland-Hodgman clip of a convex polygon to a rectangle."""

    def clip_half_plane(poly, inside, intersect):
        result = []
        for index, current in enumerate(poly):
            previous = poly[index - 1]
            current_in = inside(current)
            if inside(previous) != current_in:
                result.append(intersect(previous, current))
            if current_in:
                result.append(current)
        return result

    def crossing_at_x(boundary_x):
        def intersect(a, b):
            t = (boundary_x - a[0]) / (b[0] - a[0])
            return (boundary_x, a[1] + t * (b[1] - a[1]))

        return intersect

    def crossing_at_y(boundary_y):
        def intersect(a, b):
            t = (boundary_y - a[1]) / (b[1] - a[1])
            return (a[0] + t * (b[0] - a[0]), boundary_y)

        return intersect

    poly = points
    for inside, intersect in (
        (lambda p: p[0] >= rect.x, crossing_at_x(rect.x)),
        (lambda p: p[0] <= rect.x_max, crossing_at_x(rect.x_max)),
        (lambda p: p[1] >= rect.y, crossing_at_y(rect.y)),
        (lambda p: p[1] <= rect.y_max, crossing_at_y(rect.y_max)),
    ):
        poly = clip_half_plane(poly, inside, intersect)
        if not poly:
            return []
    return poly


def _dedupe_consecutive(points: np.ndarray) -> np.ndarray:
    if len(points) < 2:
        return points
    keep = np.ones(len(points), dtype=bool)
    keep[1:] = np.any(points[1:] != points[:-1], axis=1)
    if np.array_equal(points[0], points[-1]) and len(points) > 1:
        keep[-1] = False
    return points[keep]


@dataclass(frozen=True)
class CellGrid:
    """Lazy view of a zone's cell lattice.

    Holds the counting data only; centers and polygons are generated on
    demand in row-major order (bottom row first, left to right).  This keeps
    multi-million-cell zones cheap until geometry is actually needed.
    """

    zone: Zone
    fabrication_grid: int
    row_pitch: int
    counts: CellCounts

    @property
    def count(self) -> int:
        return self.counts.total

    def _row_centers_x(self, level: int) -> np.ndarray:
        extent = self.zone.extent
        pitch = self.zone.spec.pitch
        if level % 2 == 0:
            columns, shift = self.counts.base_columns, 0.0
        else:
            columns, shift = self.counts.offset_columns, pitch / 2.0
        return extent.x + shift + pitch * np.arange(columns, dtype=np.float64)

    def iter_rows(self) -> Iterator[tuple[int, np.ndarray]]:
        """Yield (center_y, center_xs) per lattice row, bottom to top."""
        extent = self.zone.extent
        for level in range(self.counts.levels):
            yield extent.y + level * self.row_pitch, self._row_centers_x(level)

    def centers(self) -> np.ndarray:
        """All cell centers as an (N, 2) float array in nm, row-major."""
        rows = []
        for center_y, center_xs in self.iter_rows():
            row = np.empty((center_xs.size, 2), dtype=np.float64)
            row[:, 0] = center_xs
            row[:, 1] = center_y
            rows.append(row)
        if not rows:
            return np.empty((0, 2), dtype=np.float64)
        return np.vstack(rows)

    def polygons(self) -> Iterator[np.ndarray]:
        """Opening polygons as integer-nm (k, 2) arrays, clipped to the extent.

        Interior hexagons keep all six vertices; cells whose hexagon crosses
        the zone boundary are clipped and may have 3..7 vertices.  Vertices
        are snapped to the 1 nm database grid after clipping.
        """
        extent = self.zone.extent
        comb = self.zone.spec.comb_diameter
        offsets = hexagon_offsets(comb)
        int_offsets = np.rint(offsets).astype(np.int64)
        half_width = comb / 2.0
        apex_y = comb * math.sqrt(3.0) / 3.0
        for center_y, center_xs in self.iter_rows():
            clear_above = center_y + apex_y <= extent.y_max
            clear_below = center_y - apex_y >= extent.y
            for center_x in center_xs:
                if (
                    clear_above
                    and clear_below
                    and center_x - half_width >= extent.x
                    and center_x + half_width <= extent.x_max
                ):
                    yield int_offsets + np.array(
                        [round(center_x), round(center_y)], dtype=np.int64
                    )
                    continue
                shifted = [
                    (center_x + dx, center_y + dy) for dx, dy in offsets
                ]
                clipped = _clip_convex_to_rect(shifted, extent)
                if len(clipped) < 3:
                    continue
                snapped = _dedupe_consecutive(
                    np.rint(np.asarray(clipped)).astype(np.int64)
                )
                if len(snapped) >= 3:
                    yield snapped


def tile_zone(zone: Zone, fabrication_grid: int = 10) -> CellGrid:
    """Tile a zone with its honeycomb lattice.

    Returns a :class:`CellGrid` exposing the closed-form cell count plus
    lazy row-major generators for cell centers and boundary-clipped opening
    polygons.  The lattice anchors at the extent origin: the first cell
    center sits exactly on ``(extent.x, extent.y)``.

    The row spacing ``pitch * sqrt(3)/2`` is snapped to the fabrication
    grid so every feature lands on a writable address.
    """
    return CellGrid(
        zone=zone,
        fabrication_grid=fabrication_grid,
        row_pitch=row_pitch(zone.spec.pitch, fabrication_grid),
        counts=cell_counts(zone, fabrication_grid),
    )


def build_two_zone_layout(
    spec_a: HoneycombSpec, spec_b: HoneycombSpec, label: str = "two-zone"
) -> Layout:
    """Two same-pitch patterns side by side on one substrate, zero gap.

    Zone A occupies the left 10x10 mm square with its origin at (0, 0),
    zone B the right one; they share the x = 10 mm edge, forming a 20x10 mm
    patterned area overall.
    """
    if spec_a.pitch != spec_b.pitch:
        raise ValueError(
            f"both zones must share one lattice pitch, got "
            f"{spec_a.pitch} nm and {spec_b.pitch} nm"
        )
    zone_a = Zone(spec=spec_a, extent=Rect(0, 0, ZONE_SIDE_NM, ZONE_SIDE_NM))
    zone_b = Zone(spec=spec_b, extent=Rect(ZONE_SIDE_NM, 0, ZONE_SIDE_NM, ZONE_SIDE_NM))
    return Layout(zones=(zone_a, zone_b), label=label)


def _check_spec(
    spec: HoneycombSpec, rules: DesignRules, subject: str
) -> list[RuleViolation]:
    violations = []
    if spec.wall < rules.min_wall:
        violations.append(
            RuleViolation("min_wall", spec.wall, rules.min_wall, subject)
        )
    ratio = aspect_ratio(spec)
    if ratio > rules.max_aspect_ratio:
        violations.append(
            RuleViolation("max_aspect_ratio", ratio, rules.max_aspect_ratio, subject)
        )
    if spec.height > rules.max_height:
        violations.append(
            RuleViolation("max_height", spec.height, rules.max_height, subject)
        )
    grid = rules.fabrication_grid
    for name, value in (("wall", spec.wall), ("pitch", spec.pitch), ("height", spec.height)):
        if value % grid != 0:
            violations.append(
                RuleViolation(f"fabrication_grid({name})", value, grid, subject)
            )
    return violations


def check_design_rules(
    target: Union[HoneycombSpec, Zone, Layout], rules: DesignRules = DEFAULT_RULES
) -> list[RuleViolation]:
    """Check a spec, zone, or whole layout against fabrication rules.

    Returns a list of violations (empty = pass), sorted by (subject, rule)
    so the result is independent of zone ordering.  Limits are boundary
    inclusive: a value exactly at its limit passes.
    """
    if isinstance(target, HoneycombSpec):
        violations = _check_spec(target, rules, "spec")
    elif isinstance(target, Zone):
        violations = _check_spec(
            target.spec, rules, f"zone@({target.extent.x},{target.extent.y})nm"
        )
    elif isinstance(target, Layout):
        violations = []
        for zone in target.zones:
            violations.extend(
                _check_spec(
                    zone.spec, rules, f"zone@({zone.extent.x},{zone.extent.y})nm"
                )
            )
    else:
        raise TypeError(
            f"expected HoneycombSpec, Zone, or Layout, got {type(target).__name__}"
        )
    return sorted(violations, key=lambda v: (v.subject, v.rule))


def polygon_area(points: np.ndarray) -> float:
    """Unsigned polygon area by the shoelace formula (vertices as (k, 2))."""
    coords = np.asarray(points, dtype=np.float64)
    x = coords[:, 0]
    y = coords[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))
