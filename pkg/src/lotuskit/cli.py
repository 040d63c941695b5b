"""Command-line front end: a reproducible design pipeline.

Subcommands
-----------
angle
    Evaluate the composite-wetting apparent contact angle.
fraction
    Solid fractions from honeycomb or pillar geometry, with an optional
    Monte Carlo cross-check.
design two-zone / design gradient
    Build layouts and print their numeric summaries.
check
    Design-rule check; exits 1 when violations are found.
simulate
    Quasi-static droplet transport along a gradient, with CSV trace output.
export
    Write GDSII or SVG mask artifacts.
report
    Model predictions next to the built-in measured dataset.

Exit codes: 0 success, 1 domain/validation failure, 2 usage error.  All
numeric output carries units in its key names, and identical inputs
(argv + config + seed) produce byte-identical output.  Output files land
in --out if absolute, else under the config ``out_dir``, the
``LOTUS_OUT_DIR`` environment variable, or the working directory.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Sequence

from lotuskit.config import (
    ConfigError,
    ProjectConfig,
    default_config,
    load_config,
    resolve_out_dir,
)
from lotuskit.gradient import (
    GradientDesign,
    GradientSpec,
    Measure,
    design_linear_gradient,
    simulate_droplet,
    trace_to_csv,
)
from lotuskit.lattice import (
    HoneycombSpec,
    Layout,
    PillarSpec,
    Rect,
    Zone,
    build_two_zone_layout,
    check_design_rules,
    honeycomb_area_fraction,
    honeycomb_linear_ratio,
    monte_carlo_fraction,
    square_pillar_fraction,
)
from lotuskit.maskio import GdsMode, GdsOptions, layout_stats, write_gdsii, write_svg
from lotuskit.reference import ValidationReport, build_validation_report, reference_two_zone_layout
from lotuskit.wetting import Droplet, cassie_apparent_angle

__all__ = [
    "ProjectConfig",
    "ValidationReport",
    "load_config",
    "main",
    "run",
]

_UL_TO_M3 = 1e-9  # 1 microliter = 1e-9 cubic meters
_MM_TO_M = 1e-3
_NM_TO_M = 1e-9


class _UsageError(Exception):
    """Bad flag combination; reported on stderr with exit code 2."""


def _deg(value: float) -> str:
    return f"{value:.6f}"


def _frac(value: float) -> str:
    return f"{value:.9f}"


def _sci(value: float) -> str:
    return f"{value:.6e}"


def _resolve_out_path(value: str, config: ProjectConfig) -> Path:
    path = Path(value)
    if not path.is_absolute():
        path = resolve_out_dir(config) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


# --------------------------------------------------------------------------
# Shared target builders
# --------------------------------------------------------------------------

def _honeycomb(config: ProjectConfig, wall: int, pitch: int | None, height: int | None) -> HoneycombSpec:
    return HoneycombSpec(
        pitch=pitch if pitch is not None else config.pitch,
        wall=wall,
        height=height if height is not None else config.height,
    )


def _two_zone_from_args(args: argparse.Namespace, config: ProjectConfig) -> Layout:
    if args.reference:
        if args.wall_a is not None or args.wall_b is not None:
            raise _UsageError("--reference cannot be combined with --wall-a/--wall-b")
        return reference_two_zone_layout()
    if args.wall_a is None or args.wall_b is None:
        raise _UsageError("provide --reference, or both --wall-a and --wall-b")
    return build_two_zone_layout(
        _honeycomb(config, args.wall_a, args.pitch, args.height),
        _honeycomb(config, args.wall_b, args.pitch, args.height),
    )


def _add_gradient_flags(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument(
        "--length-nm", type=int, required=required,
        help="channel length along the transport axis, integer nm",
    )
    parser.add_argument(
        "--width-nm", type=int, default=1_000_000,
        help="channel width across the transport axis, integer nm (default 1 mm)",
    )
    parser.add_argument(
        "--f-start", type=float, required=required,
        help="solid fraction at x = 0, strictly inside (0, 1)",
    )
    parser.add_argument(
        "--f-end", type=float, required=required,
        help="solid fraction at the far end, strictly inside (0, 1)",
    )
    parser.add_argument(
        "--measure", choices=[m.value for m in Measure], default=None,
        help="fraction convention (default from config)",
    )


def _gradient_from_args(args: argparse.Namespace, config: ProjectConfig) -> GradientDesign:
    if args.length_nm is None or args.f_start is None or args.f_end is None:
        raise _UsageError("a gradient needs --length-nm, --f-start, and --f-end")
    spec = GradientSpec(
        length=args.length_nm,
        lateral_width=args.width_nm,
        pitch=args.pitch if args.pitch is not None else config.pitch,
        f_start=args.f_start,
        f_end=args.f_end,
        measure=Measure(args.measure) if args.measure else config.measure,
        height=args.height if args.height is not None else config.height,
    )
    return design_linear_gradient(spec, config.rules)


def _print_zone_stats(stats: dict) -> None:
    print(f"label={stats['label']}")
    print(f"material={stats['material']}")
    print(f"theta_flat_deg={_deg(stats['theta_flat_deg'])}")
    print(f"zone_count={stats['zone_count']}")
    print(f"total_cells={stats['total_cells']}")
    for index, zone in enumerate(stats["zones"]):
        prefix = f"zone{index}"
        origin = zone["origin_nm"]
        size = zone["size_nm"]
        print(f"{prefix}.origin_nm={origin[0]},{origin[1]}")
        print(f"{prefix}.size_nm={size[0]},{size[1]}")
        print(f"{prefix}.pitch_nm={zone['pitch_nm']}")
        print(f"{prefix}.wall_nm={zone['wall_nm']}")
        print(f"{prefix}.comb_diameter_nm={zone['comb_diameter_nm']}")
        print(f"{prefix}.height_nm={zone['height_nm']}")
        print(f"{prefix}.cell_count={zone['cell_count']}")
        print(f"{prefix}.linear_ratio={_frac(zone['linear_ratio'])}")
        print(f"{prefix}.area_fraction={_frac(zone['area_fraction'])}")
        print(f"{prefix}.aspect_ratio={_deg(zone['aspect_ratio'])}")
        print(f"{prefix}.cassie_angle_linear_deg={_deg(zone['cassie_angle_linear_deg'])}")
        print(f"{prefix}.cassie_angle_area_deg={_deg(zone['cassie_angle_area_deg'])}")


def _print_gradient_stats(stats: dict) -> None:
    print(f"material={stats['material']}")
    print(f"theta_flat_deg={_deg(stats['theta_flat_deg'])}")
    print(f"measure={stats['measure']}")
    print(f"columns={stats['columns']}")
    print(f"pitch_nm={stats['pitch_nm']}")
    print(f"length_nm={stats['length_nm']}")
    print(f"lateral_width_nm={stats['lateral_width_nm']}")
    print(f"height_nm={stats['height_nm']}")
    print(f"row_pitch_nm={stats['row_pitch_nm']}")
    print(f"lattice_rows={stats['lattice_rows']}")
    print(f"total_cells={stats['total_cells']}")
    print(f"wall_start_nm={stats['wall_start_nm']}")
    print(f"wall_end_nm={stats['wall_end_nm']}")
    print(f"fraction_start={_frac(stats['fraction_start'])}")
    print(f"fraction_end={_frac(stats['fraction_end'])}")
    print(f"cassie_angle_start_deg={_deg(stats['cassie_angle_start_deg'])}")
    print(f"cassie_angle_end_deg={_deg(stats['cassie_angle_end_deg'])}")


# --------------------------------------------------------------------------
# Subcommand handlers
# --------------------------------------------------------------------------

def _cmd_angle(args: argparse.Namespace, config: ProjectConfig) -> int:
    theta = args.theta if args.theta is not None else config.material.theta_flat
    apparent = cassie_apparent_angle(args.fraction, theta)
    print(f"solid_fraction={_frac(args.fraction)}")
    print(f"theta_flat_deg={_deg(theta)}")
    print(f"apparent_angle_deg={_deg(apparent)}")
    return 0


def _cmd_fraction(args: argparse.Namespace, config: ProjectConfig) -> int:
    pillar_flags = args.pillar_width is not None or args.pillar_spacing is not None
    if args.wall is not None and pillar_flags:
        raise _UsageError("choose either --wall (honeycomb) or --pillar-width/--pillar-spacing")
    if pillar_flags:
        if args.pillar_width is None or args.pillar_spacing is None:
            raise _UsageError("pillar patterns need both --pillar-width and --pillar-spacing")
        if args.mc_samples is not None:
            raise _UsageError("the Monte Carlo check supports honeycomb patterns only")
        spec = PillarSpec(
            width_a=args.pillar_width,
            spacing_b=args.pillar_spacing,
            height=args.height if args.height is not None else config.height,
        )
        print(f"pillar_width_nm={spec.width_a}")
        print(f"pillar_spacing_nm={spec.spacing_b}")
        print(f"solid_fraction={_frac(square_pillar_fraction(spec))}")
        return 0
    if args.wall is None:
        raise _UsageError("provide --wall (honeycomb) or --pillar-width/--pillar-spacing")
    spec = _honeycomb(config, args.wall, args.pitch, args.height)
    print(f"pitch_nm={spec.pitch}")
    print(f"wall_nm={spec.wall}")
    print(f"comb_diameter_nm={spec.comb_diameter}")
    print(f"linear_ratio={_frac(honeycomb_linear_ratio(spec))}")
    print(f"area_fraction={_frac(honeycomb_area_fraction(spec))}")
    if args.mc_samples is not None:
        estimate, std_error = monte_carlo_fraction(
            spec, args.mc_samples, args.seed, args.workers
        )
        print(f"mc_samples={args.mc_samples}")
        print(f"mc_seed={args.seed}")
        print(f"mc_fraction={_frac(estimate)}")
        print(f"mc_stderr={_sci(std_error)}")
    return 0


def _cmd_design_two_zone(args: argparse.Namespace, config: ProjectConfig) -> int:
    layout = _two_zone_from_args(args, config)
    _print_zone_stats(layout_stats(layout, config.material, config.rules.fabrication_grid))
    violations = check_design_rules(layout, config.rules)
    print(f"drc_violations={len(violations)}")
    for index, violation in enumerate(violations):
        print(f"drc{index}={violation}")
    return 0


def _cmd_design_gradient(args: argparse.Namespace, config: ProjectConfig) -> int:
    design = _gradient_from_args(args, config)
    _print_gradient_stats(
        layout_stats(design, config.material, config.rules.fabrication_grid)
    )
    return 0


def _cmd_check(args: argparse.Namespace, config: ProjectConfig) -> int:
    if args.reference and args.wall is not None:
        raise _UsageError("--reference cannot be combined with --wall")
    if args.reference:
        target: Layout | HoneycombSpec = reference_two_zone_layout()
    elif args.wall is not None:
        target = _honeycomb(config, args.wall, args.pitch, args.height)
    else:
        raise _UsageError("provide --reference or --wall")
    violations = check_design_rules(target, config.rules)
    print(f"violations={len(violations)}")
    for index, violation in enumerate(violations):
        print(f"violation{index}={violation}")
    if violations:
        return 1
    print("result=pass")
    return 0


def _cmd_simulate(args: argparse.Namespace, config: ProjectConfig) -> int:
    design = _gradient_from_args(args, config)
    material = config.material
    if args.hysteresis_deg is not None:
        material = dataclasses.replace(material, hysteresis=args.hysteresis_deg)
    droplet = Droplet(
        volume=args.volume_ul * _UL_TO_M3,
        position=args.start_mm * _MM_TO_M,
    )
    step = args.step_nm * _NM_TO_M if args.step_nm is not None else None
    trace = simulate_droplet(design, droplet, material, step=step, max_steps=args.max_steps)
    moves = sum(1 for record in trace.steps if record.moved)
    print(f"volume_ul={args.volume_ul:.3f}")
    print(f"hysteresis_deg={_deg(material.hysteresis)}")
    print(f"records={len(trace.steps)}")
    print(f"moves={moves}")
    print(f"terminal_reason={trace.terminal_reason.value}")
    print(f"start_position_mm={args.start_mm:.6f}")
    print(f"final_position_mm={trace.final_position / _MM_TO_M:.6f}")
    print(f"net_force_start_N={_sci(trace.steps[0].net_force)}")
    if args.csv:
        path = _resolve_out_path(args.csv, config)
        path.write_text(trace_to_csv(trace), encoding="utf-8")
        print(f"csv={path}")
    return 0


def _cmd_export(args: argparse.Namespace, config: ProjectConfig) -> int:
    wants_gradient = args.gradient
    wants_two_zone = args.reference or args.wall_a is not None or args.wall_b is not None
    if wants_gradient and wants_two_zone:
        raise _UsageError("--gradient cannot be combined with --reference/--wall-a/--wall-b")
    if wants_gradient:
        target: Layout | GradientDesign = _gradient_from_args(args, config)
    elif wants_two_zone:
        target = _two_zone_from_args(args, config)
    else:
        raise _UsageError("choose a target: --reference, --wall-a/--wall-b, or --gradient")

    if args.crop_um is not None:
        if wants_gradient:
            raise _UsageError("--crop-um applies to zone layouts only")
        if not args.crop_um > 0:
            raise _UsageError("--crop-um must be > 0")
        crop_nm = int(round(args.crop_um * 1000.0))
        target = Layout(
            zones=tuple(
                Zone(
                    spec=zone.spec,
                    extent=Rect(
                        zone.extent.x,
                        zone.extent.y,
                        min(zone.extent.width, crop_nm),
                        min(zone.extent.height, crop_nm),
                    ),
                )
                for zone in target.zones
            ),
            label=target.label,
        )

    default_name = "lotus_mask.gds" if args.format == "gdsii" else "lotus_mask.svg"
    path = _resolve_out_path(args.out if args.out else default_name, config)
    if args.format == "gdsii":
        options = GdsOptions(
            layer=args.layer,
            datatype=args.datatype,
            mode=GdsMode(args.mode),
        )
        payload = write_gdsii(target, options, polarity=args.polarity)
        path.write_bytes(payload)
        size = len(payload)
    else:
        text = write_svg(target, max_cells=args.max_cells)
        payload = text.encode("utf-8")
        path.write_bytes(payload)
        size = len(payload)
    print(f"format={args.format}")
    print(f"out={path}")
    print(f"bytes={size}")
    return 0


def _cmd_report(args: argparse.Namespace, config: ProjectConfig) -> int:
    report = build_validation_report(config.material, config.rules)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
        return 0
    print(f"material: {report.material_name} (flat contact angle {report.theta_flat_deg:.2f} deg)")
    label_width = max(len("sample"), *(len(row.label) for row in report.rows))
    header = (
        f"{'sample':<{label_width}} {'wall_nm':>7} {'measured_deg':>16} "
        f"{'pred_linear_deg':>15} {'pred_area_deg':>13} "
        f"{'dev_linear_deg':>14} {'dev_area_deg':>12}"
    )
    print(header)
    print("-" * len(header))
    for row in report.rows:
        wall = str(row.wall_nm) if row.wall_nm is not None else "-"
        measured = f"{row.measured_deg:.1f} +/- {row.uncertainty_deg:.1f}"
        print(
            f"{row.label:<{label_width}} {wall:>7} {measured:>16} "
            f"{row.predicted_linear_deg:>15.2f} {row.predicted_area_deg:>13.2f} "
            f"{row.deviation_linear_deg:>+14.2f} {row.deviation_area_deg:>+12.2f}"
        )
    print(f"drc={'pass' if not report.drc_violations else 'FAIL'}")
    for index, violation in enumerate(report.drc_violations):
        print(f"drc_violation{index}={violation}")
    print(
        "note: deviations are signed (predicted - measured); the model is "
        "not fitted to, and need not match, the measurements."
    )
    return 0


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def _add_lattice_defaults(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--pitch", type=int, default=None,
        help="lattice period in integer nm (default from config)",
    )
    parser.add_argument(
        "--height", type=int, default=None,
        help="structure height in integer nm (default from config)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lotus",
        description="Design tools for composite-wetting honeycomb surface textures.",
    )
    parser.add_argument(
        "--config", default=None, metavar="PATH",
        help="JSON project config (strict schema; unknown keys are errors)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("angle", help="apparent contact angle from a solid fraction")
    p.add_argument(
        "--f", "--fraction", dest="fraction", type=float, required=True,
        help="solid area fraction in [0, 1]",
    )
    p.add_argument(
        "--theta", type=float, default=None,
        help="flat-surface contact angle in degrees (default from config)",
    )
    p.set_defaults(handler=_cmd_angle)

    p = sub.add_parser("fraction", help="solid fractions from pattern geometry")
    p.add_argument("--wall", type=int, default=None, help="honeycomb wall thickness, integer nm")
    _add_lattice_defaults(p)
    p.add_argument("--pillar-width", type=int, default=None, help="square pillar width, integer nm")
    p.add_argument("--pillar-spacing", type=int, default=None, help="square pillar gap, integer nm")
    p.add_argument("--mc-samples", type=int, default=None, help="also run a Monte Carlo check with this many samples")
    p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed (default 0)")
    p.add_argument("--workers", type=int, default=1, help="Monte Carlo worker threads (result is identical)")
    p.set_defaults(handler=_cmd_fraction)

    p = sub.add_parser("design", help="build layouts and print their summaries")
    design_sub = p.add_subparsers(dest="design_kind", required=True)

    q = design_sub.add_parser("two-zone", help="two abutting patterned zones")
    q.add_argument("--reference", action="store_true", help="use the built-in reference designs")
    q.add_argument("--wall-a", type=int, default=None, help="zone A wall thickness, integer nm")
    q.add_argument("--wall-b", type=int, default=None, help="zone B wall thickness, integer nm")
    _add_lattice_defaults(q)
    q.set_defaults(handler=_cmd_design_two_zone)

    q = design_sub.add_parser("gradient", help="linear solid-fraction gradient")
    _add_gradient_flags(q, required=True)
    _add_lattice_defaults(q)
    q.set_defaults(handler=_cmd_design_gradient)

    p = sub.add_parser("check", help="design-rule check (exit 1 on violations)")
    p.add_argument("--reference", action="store_true", help="check the built-in reference designs")
    p.add_argument("--wall", type=int, default=None, help="honeycomb wall thickness, integer nm")
    _add_lattice_defaults(p)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("simulate", help="quasi-static droplet transport on a gradient")
    _add_gradient_flags(p, required=True)
    _add_lattice_defaults(p)
    p.add_argument("--volume-ul", type=float, default=1.1, help="droplet volume in microliters (default 1.1)")
    p.add_argument("--start-mm", type=float, default=1.0, help="initial droplet center, mm from x = 0 (default 1.0)")
    p.add_argument("--hysteresis-deg", type=float, default=None, help="flat-surface hysteresis override, degrees")
    p.add_argument("--step-nm", type=float, default=None, help="step length in nm (default: one pitch)")
    p.add_argument("--max-steps", type=int, default=1_000_000, help="step budget (default 1e6)")
    p.add_argument("--csv", default=None, metavar="PATH", help="write the trace as CSV")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("export", help="write GDSII or SVG mask artifacts")
    p.add_argument("--reference", action="store_true", help="export the built-in reference layout")
    p.add_argument("--wall-a", type=int, default=None, help="zone A wall thickness, integer nm")
    p.add_argument("--wall-b", type=int, default=None, help="zone B wall thickness, integer nm")
    p.add_argument("--gradient", action="store_true", help="export a gradient design instead of zones")
    _add_gradient_flags(p, required=False)
    _add_lattice_defaults(p)
    p.add_argument("--format", choices=("gdsii", "svg"), default="gdsii", help="artifact format (default gdsii)")
    p.add_argument("--mode", choices=[m.value for m in GdsMode], default="arrayed", help="GDSII geometry mode (default arrayed)")
    p.add_argument("--polarity", choices=("openings", "walls"), default="openings", help="GDSII drawn regions (default openings)")
    p.add_argument("--layer", type=int, default=1, help="GDSII layer number (default 1)")
    p.add_argument("--datatype", type=int, default=0, help="GDSII datatype number (default 0)")
    p.add_argument("--crop-um", type=float, default=None, help="crop each zone to this square size in um")
    p.add_argument("--max-cells", type=int, default=20000, help="SVG cell budget (default 20000)")
    p.add_argument("--out", default=None, metavar="PATH", help="output path (default under the output directory)")
    p.set_defaults(handler=_cmd_export)

    p = sub.add_parser("report", help="predictions vs the built-in measured dataset")
    p.add_argument(
        "--reference-designs", action="store_true",
        help="compare against the built-in reference dataset (the default and only dataset)",
    )
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.set_defaults(handler=_cmd_report)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv, dispatch, and map errors to exit codes (0/1/2)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        config = load_config(args.config) if args.config else default_config()
        return args.handler(args, config)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print("error: invalid configuration", file=sys.stderr)
        for problem in exc.problems:
            print(f"  - {problem}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
