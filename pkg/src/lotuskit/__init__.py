"""Design toolkit for super-hydrophobic honeycomb surface patterns.

Computes apparent wetting angles on micro-structured surfaces, inverse-designs
surface-fraction gradients that passively transport droplets, validates pattern
geometry against fabrication design rules, and emits lithography-ready GDSII
mask layouts with SVG previews.
"""

from lotuskit.wetting import (
    Material,
    Droplet,
    cassie_apparent_angle,
    invert_cassie_fraction,
    apparent_advancing_receding,
    spherical_cap_footprint_radius,
)
from lotuskit.lattice import (
    HoneycombSpec,
    PillarSpec,
    Rect,
    Zone,
    Layout,
    DesignRules,
    RuleViolation,
    DEFAULT_RULES,
    square_pillar_fraction,
    honeycomb_linear_ratio,
    honeycomb_area_fraction,
    monte_carlo_fraction,
    tile_zone,
    cell_counts,
    build_two_zone_layout,
    check_design_rules,
    aspect_ratio,
)
from lotuskit.gradient import (
    GradientSpec,
    GradientDesign,
    SimulationTrace,
    TraceStep,
    wall_for_fraction,
    design_linear_gradient,
    local_apparent_angle,
    net_driving_force,
    retention_force,
    simulate_droplet,
    trace_to_csv,
)
from lotuskit.maskio import (
    GdsOptions,
    MaskGeometry,
    write_gdsii,
    read_gdsii,
    write_svg,
    layout_stats,
)

__version__ = "0.1.0"

__all__ = [
    "Material",
    "Droplet",
    "cassie_apparent_angle",
    "invert_cassie_fraction",
    "apparent_advancing_receding",
    "spherical_cap_footprint_radius",
    "HoneycombSpec",
    "PillarSpec",
    "Rect",
    "Zone",
    "Layout",
    "DesignRules",
    "RuleViolation",
    "DEFAULT_RULES",
    "square_pillar_fraction",
    "honeycomb_linear_ratio",
    "honeycomb_area_fraction",
    "monte_carlo_fraction",
    "tile_zone",
    "cell_counts",
    "build_two_zone_layout",
    "check_design_rules",
    "aspect_ratio",
    "GradientSpec",
    "GradientDesign",
    "SimulationTrace",
    "TraceStep",
    "wall_for_fraction",
    "design_linear_gradient",
    "local_apparent_angle",
    "net_driving_force",
    "retention_force",
    "simulate_droplet",
    "trace_to_csv",
    "GdsOptions",
    "MaskGeometry",
    "write_gdsii",
    "read_gdsii",
    "write_svg",
    "layout_stats",
    "__version__",
]
