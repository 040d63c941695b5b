"""Mask export and inspection: GDSII streams, SVG previews, layout stats.

Writes honeycomb layouts and gradient designs as standards-conformant GDSII
stream files, reads them back for round-trip verification, renders SVG
previews, and summarizes layouts numerically.

Conventions
-----------
* Geometry source coordinates are integer nanometers; the default database
  unit is 1 nm, so quantization is exact.  Other database units must divide
  1 nm evenly.
* Mask hexagons are emitted whole (never clipped): a cell belongs to the
  zone or column containing its center, so abutting zones tile seamlessly
  without double-drawing, and edge hexagons may protrude up to half a comb
  diameter past the extent.  SVG previews of zones use boundary-clipped
  polygons instead, which keeps drawn areas exact.
* ``arrayed`` mode writes one hexagon structure per distinct opening size
  plus two array references per zone or column (even rows and the
  half-pitch-shifted odd rows); GDSII arrays are rectangular, and the
  triangular lattice is exactly two interleaved rectangular grids.  ``flat``
  mode writes every hexagon as an explicit boundary — fine for crops,
  enormous for full zones.
* Output bytes depend only on inputs and options: structure timestamps are
  zeroed unless an explicit timestamp option is set.
* Resist polarity: by default the hexagonal *openings* are the drawn
  regions.  ``polarity="walls"`` instead marks the solid field: each extent
  is drawn as a background rectangle on the base datatype with the openings
  on datatype + 1, for downstream XOR.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Union

import numpy as np

from lotuskit.gdsii import (
    AREF,
    BGNLIB,
    BGNSTR,
    BOUNDARY,
    COLROW,
    DATA_ASCII,
    DATA_INT16,
    DATA_INT32,
    DATA_NONE,
    DATA_REAL8,
    DATATYPE,
    ENDEL,
    ENDLIB,
    ENDSTR,
    HEADER,
    LAYER,
    LIBNAME,
    SNAME,
    SREF,
    STRNAME,
    UNITS,
    XY,
    GdsParseError,
    Record,
    encode_ascii,
    encode_real8,
    iter_records,
    pack_record,
    record_name,
    validate_cell_name,
)
from lotuskit.gradient import GradientDesign
from lotuskit.lattice import (
    Layout,
    Zone,
    aspect_ratio,
    cell_counts,
    hexagon_offsets,
    honeycomb_area_fraction,
    honeycomb_linear_ratio,
    row_pitch,
)
from lotuskit.wetting import WATER_ON_PMMA, Material, cassie_apparent_angle

__all__ = [
    "GdsMode",
    "GdsOptions",
    "MaskBoundary",
    "CellRef",
    "CellArray",
    "MaskCell",
    "MaskGeometry",
    "write_gdsii",
    "read_gdsii",
    "write_svg",
    "layout_stats",
]

_GDS_VERSION = 600
_MAX_BOUNDARY_POINTS = 8191  # coordinate pairs per boundary, closure included
_INT16_MAX = 32767

Target = Union[Layout, Zone, GradientDesign]


class GdsMode(Enum):
    """How geometry is laid down in the stream."""

    FLAT = "flat"
    ARRAYED = "arrayed"


@dataclass(frozen=True)
class GdsOptions:
    """Knobs of the GDSII writer.

    Attributes
    ----------
    database_unit:
        Physical size of one database unit in meters (default 1 nm).  Must
        divide 1 nm evenly, since source geometry is integer nanometers.
    user_unit_in_db_units:
        Database units per user unit (default 1000: user unit = 1 um).
    layer, datatype:
        Layer/datatype pair for drawn polygons, each 0..255.
    mode:
        ``arrayed`` (compact, hierarchical) or ``flat`` (explicit polygons).
    library_name, top_cell_name:
        ASCII names written to LIBNAME / the top structure.
    timestamp:
        Optional (year, month, day, hour, minute, second) stamped into
        BGNLIB/BGNSTR; None (default) writes zeros so output is
        byte-reproducible.
    """

    database_unit: float = 1e-9
    user_unit_in_db_units: float = 1000.0
    layer: int = 1
    datatype: int = 0
    mode: GdsMode = GdsMode.ARRAYED
    library_name: str = "LOTUS"
    top_cell_name: str = "TOP"
    timestamp: tuple[int, int, int, int, int, int] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", GdsMode(self.mode))
        if not self.database_unit > 0.0:
            raise ValueError(f"database_unit must be > 0 m, got {self.database_unit!r}")
        if not self.user_unit_in_db_units > 0.0:
            raise ValueError(
                f"user_unit_in_db_units must be > 0, got {self.user_unit_in_db_units!r}"
            )
        for name in ("layer", "datatype"):
            value = getattr(self, name)
            if not isinstance(value, int) or not 0 <= value <= 255:
                raise ValueError(f"{name} must be an integer in 0..255, got {value!r}")
        if not self.library_name:
            raise ValueError("library_name must be non-empty")
        try:
            self.library_name.encode("ascii")
        except UnicodeEncodeError as exc:
            raise ValueError(
                f"library_name must be ASCII, got {self.library_name!r}"
            ) from exc
        validate_cell_name(self.top_cell_name)
        if self.timestamp is not None:
            stamp = tuple(self.timestamp)
            if len(stamp) != 6 or not all(isinstance(part, int) for part in stamp):
                raise ValueError(
                    f"timestamp must be six integers (y, m, d, h, m, s), got "
                    f"{self.timestamp!r}"
                )
            object.__setattr__(self, "timestamp", stamp)


# --------------------------------------------------------------------------
# Parsed-geometry model
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MaskBoundary:
    """One polygon: layer, datatype, open vertex list in database units."""

    layer: int
    datatype: int
    points: np.ndarray  # (k, 2) int64, closure vertex not repeated

    def translated(self, dx: int, dy: int) -> "MaskBoundary":
        return MaskBoundary(self.layer, self.datatype, self.points + (dx, dy))


@dataclass(frozen=True)
class CellRef:
    """Single placement of a named cell."""

    cell: str
    origin: tuple[int, int]


@dataclass(frozen=True)
class CellArray:
    """Rectangular array placement of a named cell.

    Instance (i, j) for 0 <= i < cols, 0 <= j < rows sits at
    ``origin + i * col_vector + j * row_vector``.
    """

    cell: str
    origin: tuple[int, int]
    cols: int
    rows: int
    col_vector: tuple[int, int]
    row_vector: tuple[int, int]


@dataclass
class MaskCell:
    """One structure: its polygons and the references it places."""

    name: str
    boundaries: list[MaskBoundary] = field(default_factory=list)
    srefs: list[CellRef] = field(default_factory=list)
    arefs: list[CellArray] = field(default_factory=list)


@dataclass
class MaskGeometry:
    """A parsed GDSII library: named cells plus unit metadata."""

    library_name: str
    db_unit_in_user_units: float
    database_unit: float
    cells: dict[str, MaskCell]

    def top_cell_names(self) -> list[str]:
        """Cells never referenced by another cell, in definition order."""
        referenced = {
            ref.cell
            for cell in self.cells.values()
            for ref in (*cell.srefs, *cell.arefs)
        }
        return [name for name in self.cells if name not in referenced]

    def expand(self, cell_name: str | None = None) -> list[MaskBoundary]:
        """Flatten a cell (default: the sole top cell) to absolute polygons.

        Array references are unrolled instance by instance; nested
        references are followed recursively with cycle detection.
        """
        if cell_name is None:
            tops = self.top_cell_names()
            if len(tops) != 1:
                raise ValueError(
                    f"library has {len(tops)} top cells {tops!r}; "
                    f"pass cell_name explicitly"
                )
            cell_name = tops[0]
        flattened: list[MaskBoundary] = []

        def walk(name: str, dx: int, dy: int, stack: frozenset[str]) -> None:
            if name not in self.cells:
                raise ValueError(f"reference to undefined cell {name!r}")
            if name in stack:
                raise ValueError(f"reference cycle through cell {name!r}")
            below = stack | {name}
            cell = self.cells[name]
            for boundary in cell.boundaries:
                flattened.append(boundary.translated(dx, dy))
            for ref in cell.srefs:
                walk(ref.cell, dx + ref.origin[0], dy + ref.origin[1], below)
            for array in cell.arefs:
                for i in range(array.cols):
                    for j in range(array.rows):
                        walk(
                            array.cell,
                            dx
                            + array.origin[0]
                            + i * array.col_vector[0]
                            + j * array.row_vector[0],
                            dy
                            + array.origin[1]
                            + i * array.col_vector[1]
                            + j * array.row_vector[1],
                            below,
                        )

        walk(cell_name, 0, 0, frozenset())
        return flattened


# --------------------------------------------------------------------------
# Geometry enumeration shared by the writers
# --------------------------------------------------------------------------

def _classify(target: Target) -> tuple[str, Union[Layout, GradientDesign]]:
    if isinstance(target, Zone):
        return "layout", Layout(zones=(target,), label="zone")
    if isinstance(target, Layout):
        return "layout", target
    if isinstance(target, GradientDesign):
        return "design", target
    raise TypeError(
        f"expected Layout, Zone, or GradientDesign, got {type(target).__name__}"
    )


def _design_levels(design: GradientDesign) -> tuple[int, int]:
    """(row spacing nm, number of lattice rows) across the channel width."""
    spacing = row_pitch(design.spec.pitch, design.fabrication_grid)
    levels = -(-design.spec.lateral_width // spacing)
    return spacing, levels


def _total_cells(kind: str, obj: Union[Layout, GradientDesign], grid: int) -> int:
    if kind == "layout":
        return sum(cell_counts(zone, grid).total for zone in obj.zones)
    _, levels = _design_levels(obj)
    return obj.n_columns * levels


@dataclass(frozen=True)
class _ArraySpec:
    """One rectangular sub-grid of hexagon centers (arrayed-mode AREF)."""

    comb: int
    origin: tuple[int, int]
    cols: int
    rows: int
    col_vector: tuple[int, int]
    row_vector: tuple[int, int]


def _zone_arrays(zone: Zone, grid: int) -> list[_ArraySpec]:
    """A zone's triangular lattice as two rectangular arrays.

    Even lattice rows anchor at the extent origin, odd rows are shifted half
    a pitch right and one row spacing up; each sub-grid has twice the row
    spacing vertically.
    """
    pitch = zone.spec.pitch
    comb = zone.spec.comb_diameter
    extent = zone.extent
    spacing = row_pitch(pitch, grid)
    counts = cell_counts(zone, grid)
    even_rows = (counts.levels + 1) // 2
    odd_rows = counts.levels // 2
    arrays = []
    if counts.base_columns > 0 and even_rows > 0:
        arrays.append(
            _ArraySpec(
                comb=comb,
                origin=(extent.x, extent.y),
                cols=counts.base_columns,
                rows=even_rows,
                col_vector=(pitch, 0),
                row_vector=(0, 2 * spacing),
            )
        )
    if counts.offset_columns > 0 and odd_rows > 0:
        if pitch % 2:
            raise ValueError(
                f"arrayed mode needs an even pitch (half-pitch row offset must "
                f"land on the 1 nm database grid), got {pitch} nm; use flat mode"
            )
        arrays.append(
            _ArraySpec(
                comb=comb,
                origin=(extent.x + pitch // 2, extent.y + spacing),
                cols=counts.offset_columns,
                rows=odd_rows,
                col_vector=(pitch, 0),
                row_vector=(0, 2 * spacing),
            )
        )
    return arrays


def _design_arrays(design: GradientDesign) -> list[_ArraySpec]:
    """A gradient's lattice as two single-column arrays per design column."""
    pitch = design.spec.pitch
    spacing, levels = _design_levels(design)
    even_rows = (levels + 1) // 2
    odd_rows = levels // 2
    arrays = []
    for x_nm, wall in design.columns:
        comb = pitch - wall
        if even_rows > 0:
            arrays.append(
                _ArraySpec(
                    comb=comb,
                    origin=(x_nm, 0),
                    cols=1,
                    rows=even_rows,
                    col_vector=(pitch, 0),
                    row_vector=(0, 2 * spacing),
                )
            )
        if odd_rows > 0:
            if pitch % 2:
                raise ValueError(
                    f"arrayed mode needs an even pitch, got {pitch} nm; "
                    f"use flat mode"
                )
            arrays.append(
                _ArraySpec(
                    comb=comb,
                    origin=(x_nm + pitch // 2, spacing),
                    cols=1,
                    rows=odd_rows,
                    col_vector=(pitch, 0),
                    row_vector=(0, 2 * spacing),
                )
            )
    return arrays


def _target_arrays(kind: str, obj: Union[Layout, GradientDesign], grid: int) -> list[_ArraySpec]:
    if kind == "layout":
        arrays: list[_ArraySpec] = []
        for zone in obj.zones:
            arrays.extend(_zone_arrays(zone, grid))
        return arrays
    return _design_arrays(obj)


def _iter_flat_cells(
    kind: str, obj: Union[Layout, GradientDesign], grid: int
) -> Iterator[tuple[int, int, int]]:
    """Yield (comb, center_x, center_y) for every cell, deterministically.

    Equivalent to unrolling :func:`_target_arrays` — flat and arrayed modes
    expand to identical geometry by construction.
    """
    for array in _target_arrays(kind, obj, grid):
        for j in range(array.rows):
            for i in range(array.cols):
                yield (
                    array.comb,
                    array.origin[0] + i * array.col_vector[0] + j * array.row_vector[0],
                    array.origin[1] + i * array.col_vector[1] + j * array.row_vector[1],
                )


def _background_rects(kind: str, obj: Union[Layout, GradientDesign]) -> list[tuple[int, int, int, int]]:
    """Extent rectangles (x, y, x_max, y_max) for walls-polarity output."""
    if kind == "layout":
        return [
            (z.extent.x, z.extent.y, z.extent.x_max, z.extent.y_max)
            for z in obj.zones
        ]
    return [(0, 0, obj.length_nm, obj.spec.lateral_width)]


# --------------------------------------------------------------------------
# Writer
# --------------------------------------------------------------------------

def _db_scale(database_unit: float) -> int:
    """Integer database units per nanometer (source geometry is integer nm)."""
    ratio = 1e-9 / database_unit
    scale = round(ratio)
    if scale < 1 or abs(ratio - scale) > 1e-6 * scale:
        raise ValueError(
            f"database_unit {database_unit!r} m must evenly divide 1 nm"
        )
    return scale


def _xy_payload(points: list[tuple[int, int]]) -> bytes:
    flat: list[int] = []
    for x, y in points:
        flat.append(x)
        flat.append(y)
    try:
        return struct.pack(f">{len(flat)}i", *flat)
    except struct.error as exc:
        raise ValueError(
            f"coordinate overflow: XY values must fit signed 32-bit database "
            f"units ({exc})"
        ) from None


def _boundary_bytes(layer: int, datatype: int, points: list[tuple[int, int]]) -> bytes:
    closed = [*points, points[0]]
    if len(closed) > _MAX_BOUNDARY_POINTS:
        raise ValueError(
            f"boundary with {len(closed)} points exceeds the "
            f"{_MAX_BOUNDARY_POINTS}-point record limit"
        )
    return (
        pack_record(BOUNDARY, DATA_NONE)
        + pack_record(LAYER, DATA_INT16, struct.pack(">h", layer))
        + pack_record(DATATYPE, DATA_INT16, struct.pack(">h", datatype))
        + pack_record(XY, DATA_INT32, _xy_payload(closed))
        + pack_record(ENDEL, DATA_NONE)
    )


def _aref_bytes(array: _ArraySpec, cell_name: str, scale: int) -> bytes:
    if array.cols > _INT16_MAX or array.rows > _INT16_MAX:
        raise ValueError(
            f"array of {array.cols} x {array.rows} exceeds the 16-bit "
            f"column/row limit; split the extent"
        )
    origin = (array.origin[0] * scale, array.origin[1] * scale)
    col_end = (
        origin[0] + array.cols * array.col_vector[0] * scale,
        origin[1] + array.cols * array.col_vector[1] * scale,
    )
    row_end = (
        origin[0] + array.rows * array.row_vector[0] * scale,
        origin[1] + array.rows * array.row_vector[1] * scale,
    )
    return (
        pack_record(AREF, DATA_NONE)
        + pack_record(SNAME, DATA_ASCII, encode_ascii(cell_name))
        + pack_record(COLROW, DATA_INT16, struct.pack(">2h", array.cols, array.rows))
        + pack_record(XY, DATA_INT32, _xy_payload([origin, col_end, row_end]))
        + pack_record(ENDEL, DATA_NONE)
    )


def _hexagon_cell_points(comb: int, scale: int) -> list[tuple[int, int]]:
    offsets = np.rint(hexagon_offsets(comb)).astype(np.int64) * scale
    return [(int(x), int(y)) for x, y in offsets]


def write_gdsii(
    target: Target, options: GdsOptions | None = None, polarity: str = "openings"
) -> bytes:
    """Emit a layout or gradient design as a GDSII stream.

    Parameters
    ----------
    target:
        A :class:`Layout`, single :class:`Zone`, or :class:`GradientDesign`.
    options:
        Units, layer, mode, and naming; see :class:`GdsOptions`.
    polarity:
        ``"openings"`` (default) draws the hexagonal openings;
        ``"walls"`` additionally draws each extent as a background rectangle
        on the base datatype and moves the openings to datatype + 1.

    Returns
    -------
    bytes
        The complete stream, byte-reproducible for identical inputs.
    """
    if options is None:
        options = GdsOptions()
    if polarity not in ("openings", "walls"):
        raise ValueError(f"polarity must be 'openings' or 'walls', got {polarity!r}")
    kind, obj = _classify(target)
    scale = _db_scale(options.database_unit)
    grid = getattr(obj, "fabrication_grid", 10)

    opening_datatype = options.datatype + (1 if polarity == "walls" else 0)
    if opening_datatype > 255:
        raise ValueError(
            f"walls polarity places openings on datatype {opening_datatype}, "
            f"beyond 255; pick a lower base datatype"
        )

    stamp = options.timestamp if options.timestamp is not None else (0, 0, 0, 0, 0, 0)
    begin_payload = struct.pack(">12h", *(stamp * 2))  # modification + access

    out = bytearray()
    out += pack_record(HEADER, DATA_INT16, struct.pack(">h", _GDS_VERSION))
    out += pack_record(BGNLIB, DATA_INT16, begin_payload)
    out += pack_record(LIBNAME, DATA_ASCII, encode_ascii(options.library_name))
    out += pack_record(
        UNITS,
        DATA_REAL8,
        encode_real8(1.0 / options.user_unit_in_db_units)
        + encode_real8(options.database_unit),
    )

    def open_structure(name: str) -> None:
        out.extend(pack_record(BGNSTR, DATA_INT16, begin_payload))
        out.extend(pack_record(STRNAME, DATA_ASCII, encode_ascii(validate_cell_name(name))))

    def close_structure() -> None:
        out.extend(pack_record(ENDSTR, DATA_NONE))

    background = _background_rects(kind, obj) if polarity == "walls" else []

    if options.mode is GdsMode.ARRAYED:
        arrays = _target_arrays(kind, obj, grid)
        for comb in sorted({array.comb for array in arrays}):
            open_structure(f"HEX_{comb}")
            out += _boundary_bytes(
                options.layer, opening_datatype, _hexagon_cell_points(comb, scale)
            )
            close_structure()
        open_structure(options.top_cell_name)
        for x0, y0, x1, y1 in background:
            out += _boundary_bytes(
                options.layer,
                options.datatype,
                [(x0 * scale, y0 * scale), (x1 * scale, y0 * scale),
                 (x1 * scale, y1 * scale), (x0 * scale, y1 * scale)],
            )
        for array in arrays:
            out += _aref_bytes(array, f"HEX_{array.comb}", scale)
        close_structure()
    else:
        open_structure(options.top_cell_name)
        for x0, y0, x1, y1 in background:
            out += _boundary_bytes(
                options.layer,
                options.datatype,
                [(x0 * scale, y0 * scale), (x1 * scale, y0 * scale),
                 (x1 * scale, y1 * scale), (x0 * scale, y1 * scale)],
            )
        hexagon_cache: dict[int, list[tuple[int, int]]] = {}
        for comb, center_x, center_y in _iter_flat_cells(kind, obj, grid):
            if comb not in hexagon_cache:
                hexagon_cache[comb] = _hexagon_cell_points(comb, scale)
            out += _boundary_bytes(
                options.layer,
                opening_datatype,
                [
                    (x + center_x * scale, y + center_y * scale)
                    for x, y in hexagon_cache[comb]
                ],
            )
        close_structure()

    out += pack_record(ENDLIB, DATA_NONE)
    return bytes(out)


# --------------------------------------------------------------------------
# Reader
# --------------------------------------------------------------------------

def _expect(record: Record, wanted: int) -> Record:
    if record.record_type != wanted:
        raise GdsParseError(
            f"expected {record_name(wanted)}, found {record.name}",
            record.offset,
            record.record_type,
        )
    return record


def read_gdsii(data: bytes) -> MaskGeometry:
    """Parse a GDSII stream into cells, references, and unit metadata.

    Array references are kept unexpanded; use :meth:`MaskGeometry.expand`
    to flatten.  Malformed streams raise :class:`GdsParseError` naming the
    byte offset and record type.
    """
    stream = iter_records(data)

    def next_record(context: str) -> Record:
        try:
            return next(stream)
        except StopIteration:
            raise GdsParseError(
                f"unexpected end of stream while reading {context}", len(data)
            ) from None

    header = _expect(next_record("HEADER"), HEADER)
    if not header.int16s():
        raise GdsParseError("HEADER carries no version", header.offset, HEADER)
    _expect(next_record("BGNLIB"), BGNLIB)
    library_name = _expect(next_record("LIBNAME"), LIBNAME).text()
    units = _expect(next_record("UNITS"), UNITS).reals()
    if len(units) != 2:
        raise GdsParseError(
            f"UNITS must carry 2 reals, found {len(units)}", header.offset, UNITS
        )

    cells: dict[str, MaskCell] = {}
    while True:
        record = next_record("BGNSTR or ENDLIB")
        if record.record_type == ENDLIB:
            try:
                extra = next(stream)
            except StopIteration:
                break
            raise GdsParseError(
                "records after ENDLIB", extra.offset, extra.record_type
            )
        _expect(record, BGNSTR)
        name_record = _expect(next_record("STRNAME"), STRNAME)
        name = name_record.text()
        if name in cells:
            raise GdsParseError(
                f"duplicate structure {name!r}", name_record.offset, STRNAME
            )
        cell = MaskCell(name=name)
        while True:
            element = next_record(f"element in structure {name!r}")
            if element.record_type == ENDSTR:
                break
            if element.record_type == BOUNDARY:
                cell.boundaries.append(_parse_boundary(element, next_record))
            elif element.record_type == SREF:
                cell.srefs.append(_parse_sref(next_record))
            elif element.record_type == AREF:
                cell.arefs.append(_parse_aref(next_record))
            else:
                raise GdsParseError(
                    f"unexpected {element.name} inside structure {name!r}",
                    element.offset,
                    element.record_type,
                )
        cells[name] = cell

    return MaskGeometry(
        library_name=library_name,
        db_unit_in_user_units=units[0],
        database_unit=units[1],
        cells=cells,
    )


def _parse_xy_pairs(record: Record) -> np.ndarray:
    values = record.int32s()
    if len(values) % 2:
        raise GdsParseError(
            "XY carries an odd number of coordinates", record.offset, XY
        )
    return np.asarray(values, dtype=np.int64).reshape(-1, 2)


def _parse_boundary(start: Record, next_record) -> MaskBoundary:
    layer_record = _expect(next_record("LAYER"), LAYER)
    layer = layer_record.int16s()
    if not layer:
        raise GdsParseError("LAYER carries no value", layer_record.offset, LAYER)
    datatype_record = _expect(next_record("DATATYPE"), DATATYPE)
    datatype = datatype_record.int16s()
    if not datatype:
        raise GdsParseError(
            "DATATYPE carries no value", datatype_record.offset, DATATYPE
        )
    xy = _expect(next_record("XY"), XY)
    points = _parse_xy_pairs(xy)
    if len(points) < 4:
        raise GdsParseError(
            f"boundary needs at least 4 points (closed triangle), got {len(points)}",
            xy.offset,
            XY,
        )
    if len(points) > _MAX_BOUNDARY_POINTS:
        raise GdsParseError(
            f"boundary with {len(points)} points exceeds the "
            f"{_MAX_BOUNDARY_POINTS}-point limit",
            xy.offset,
            XY,
        )
    if not np.array_equal(points[0], points[-1]):
        raise GdsParseError(
            "boundary is not closed (first point must repeat last)", xy.offset, XY
        )
    _expect(next_record("ENDEL"), ENDEL)
    return MaskBoundary(layer=layer[0], datatype=datatype[0], points=points[:-1])


def _parse_sref(next_record) -> CellRef:
    name = _expect(next_record("SNAME"), SNAME).text()
    xy = _expect(next_record("XY"), XY)
    points = _parse_xy_pairs(xy)
    if len(points) != 1:
        raise GdsParseError(
            f"SREF XY must carry exactly 1 point, got {len(points)}", xy.offset, XY
        )
    _expect(next_record("ENDEL"), ENDEL)
    return CellRef(cell=name, origin=(int(points[0, 0]), int(points[0, 1])))


def _parse_aref(next_record) -> CellArray:
    name = _expect(next_record("SNAME"), SNAME).text()
    colrow = _expect(next_record("COLROW"), COLROW)
    counts = colrow.int16s()
    if len(counts) != 2 or counts[0] < 1 or counts[1] < 1:
        raise GdsParseError(
            f"COLROW must carry two positive counts, got {counts!r}",
            colrow.offset,
            COLROW,
        )
    cols, rows = counts
    xy = _expect(next_record("XY"), XY)
    points = _parse_xy_pairs(xy)
    if len(points) != 3:
        raise GdsParseError(
            f"AREF XY must carry exactly 3 points, got {len(points)}", xy.offset, XY
        )
    origin = (int(points[0, 0]), int(points[0, 1]))
    col_span = (int(points[1, 0]) - origin[0], int(points[1, 1]) - origin[1])
    row_span = (int(points[2, 0]) - origin[0], int(points[2, 1]) - origin[1])
    if col_span[0] % cols or col_span[1] % cols or row_span[0] % rows or row_span[1] % rows:
        raise GdsParseError(
            "AREF spacing is not an integer number of database units",
            xy.offset,
            XY,
        )
    _expect(next_record("ENDEL"), ENDEL)
    return CellArray(
        cell=name,
        origin=origin,
        cols=cols,
        rows=rows,
        col_vector=(col_span[0] // cols, col_span[1] // cols),
        row_vector=(row_span[0] // rows, row_span[1] // rows),
    )


# --------------------------------------------------------------------------
# SVG preview
# --------------------------------------------------------------------------

_SVG_BACKGROUND = "#3b4252"  # solid structure tops
_SVG_OPENING = "#a3d5ff"  # air-filled openings


def write_svg(
    target: Target, scale: float | None = None, max_cells: int = 20000
) -> str:
    """Render a layout or gradient design as an SVG 1.1 document.

    One ``<path>`` element per opening over a solid background rectangle
    per extent.  Openings are drawn as whole hexagons — exactly the
    polygons :func:`write_gdsii` emits — so the preview shows the mask
    content faithfully (including cells straddling zone boundaries);
    the viewBox crops the visual at the extents.

    Parameters
    ----------
    scale:
        Nanometers per pixel; default sizes the drawing to ~800 px wide.
    max_cells:
        Rendering guard: exceeding it raises with a suggestion to crop.
    """
    kind, obj = _classify(target)
    grid = getattr(obj, "fabrication_grid", 10)
    total = _total_cells(kind, obj, grid)
    if total > max_cells:
        raise ValueError(
            f"{total} cells exceed max_cells={max_cells}; render a cropped "
            f"extent or raise max_cells"
        )

    rects = _background_rects(kind, obj)
    if not rects:
        min_x = min_y = 0
        max_x = max_y = 1
    else:
        min_x = min(r[0] for r in rects)
        min_y = min(r[1] for r in rects)
        max_x = max(r[2] for r in rects)
        max_y = max(r[3] for r in rects)
    if scale is None:
        scale = max((max_x - min_x) / 800.0, 1.0)
    if not scale > 0:
        raise ValueError(f"scale must be > 0 nm per pixel, got {scale!r}")

    def px(x: float) -> float:
        return (x - min_x) / scale

    def py(y: float) -> float:
        return (max_y - y) / scale

    width = (max_x - min_x) / scale
    height = (max_y - min_y) / scale
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">',
    ]
    for x0, y0, x1, y1 in rects:
        parts.append(
            f'<rect x="{px(x0):.3f}" y="{py(y1):.3f}" '
            f'width="{(x1 - x0) / scale:.3f}" height="{(y1 - y0) / scale:.3f}" '
            f'fill="{_SVG_BACKGROUND}"/>'
        )

    def path_element(points) -> str:
        coords = " L ".join(f"{px(x):.3f},{py(y):.3f}" for x, y in points)
        return f'<path d="M {coords} Z" fill="{_SVG_OPENING}"/>'

    offset_cache: dict[int, np.ndarray] = {}
    for comb, center_x, center_y in _iter_flat_cells(kind, obj, grid):
        if comb not in offset_cache:
            offset_cache[comb] = np.rint(hexagon_offsets(comb)).astype(np.int64)
        parts.append(path_element(offset_cache[comb] + (center_x, center_y)))

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# --------------------------------------------------------------------------
# Stats
# --------------------------------------------------------------------------

def layout_stats(
    target: Target,
    material: Material = WATER_ON_PMMA,
    fabrication_grid: int = 10,
) -> dict:
    """Numeric summary of a layout or gradient design.

    For layouts: per-zone extents, cell counts (closed form), both fraction
    measures, aspect ratios, and predicted composite-state contact angles
    for the given material.  For gradient designs: the column census and
    endpoint geometry/fractions/angles.  Output is a plain JSON-ready dict.
    """
    kind, obj = _classify(target)
    theta = material.theta_flat
    if kind == "layout":
        zones = []
        for zone in obj.zones:
            spec = zone.spec
            linear = honeycomb_linear_ratio(spec)
            area = honeycomb_area_fraction(spec)
            zones.append(
                {
                    "origin_nm": [zone.extent.x, zone.extent.y],
                    "size_nm": [zone.extent.width, zone.extent.height],
                    "pitch_nm": spec.pitch,
                    "wall_nm": spec.wall,
                    "comb_diameter_nm": spec.comb_diameter,
                    "height_nm": spec.height,
                    "cell_count": cell_counts(zone, fabrication_grid).total,
                    "linear_ratio": linear,
                    "area_fraction": area,
                    "aspect_ratio": aspect_ratio(spec),
                    "cassie_angle_linear_deg": cassie_apparent_angle(linear, theta),
                    "cassie_angle_area_deg": cassie_apparent_angle(area, theta),
                }
            )
        return {
            "kind": "layout",
            "label": obj.label,
            "material": material.name,
            "theta_flat_deg": theta,
            "zone_count": len(zones),
            "total_cells": sum(z["cell_count"] for z in zones),
            "zones": zones,
        }

    design = obj
    spacing, levels = _design_levels(design)
    first_wall = design.columns[0][1]
    last_wall = design.columns[-1][1]
    return {
        "kind": "gradient",
        "material": material.name,
        "theta_flat_deg": theta,
        "measure": design.spec.measure.value,
        "columns": design.n_columns,
        "pitch_nm": design.spec.pitch,
        "length_nm": design.length_nm,
        "lateral_width_nm": design.spec.lateral_width,
        "height_nm": design.spec.height,
        "row_pitch_nm": spacing,
        "lattice_rows": levels,
        "total_cells": design.n_columns * levels,
        "wall_start_nm": first_wall,
        "wall_end_nm": last_wall,
        "fraction_start": design.fractions[0],
        "fraction_end": design.fractions[-1],
        "cassie_angle_start_deg": cassie_apparent_angle(design.fractions[0], theta),
        "cassie_angle_end_deg": cassie_apparent_angle(design.fractions[-1], theta),
    }
