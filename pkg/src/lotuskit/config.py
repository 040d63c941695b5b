"""Project configuration: strict JSON, exhaustive validation, safe defaults.

The config format is deliberately rigid — unknown keys are errors, every
violation is reported (not just the first), and all physical values carry
their units in the key names' documented meaning.  A missing config or a
minimal one (for example only the material name) falls back to defaults:
distilled water on flat PMMA (81 degrees, 72.8e-3 N/m, zero hysteresis),
the standard design rules, and the reference 4000 nm pitch / 4000 nm height.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from lotuskit.gradient import Measure
from lotuskit.lattice import DEFAULT_RULES, DesignRules
from lotuskit.wetting import WATER_ON_PMMA, Material

__all__ = [
    "ConfigError",
    "ProjectConfig",
    "default_config",
    "load_config",
    "resolve_out_dir",
]

_TOP_KEYS = {"material", "rules", "pitch", "height", "measure", "out_dir"}
_MATERIAL_KEYS = {"name", "theta_flat", "hysteresis", "surface_tension"}
_RULES_KEYS = {"min_wall", "max_aspect_ratio", "max_height", "fabrication_grid"}


class ConfigError(ValueError):
    """Invalid configuration; ``problems`` lists every violation found."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__(
            "invalid configuration: " + "; ".join(self.problems)
        )


@dataclass(frozen=True)
class ProjectConfig:
    """Validated project settings shared by all CLI subcommands."""

    material: Material
    rules: DesignRules
    pitch: int = 4000
    height: int = 4000
    measure: Measure = Measure.AREA_FRACTION
    out_dir: str | None = None


def default_config() -> ProjectConfig:
    """The built-in preset: water on PMMA and the reference geometry."""
    return ProjectConfig(material=WATER_ON_PMMA, rules=DEFAULT_RULES)


def _is_number(value: object) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value: object) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def load_config(path: str | Path) -> ProjectConfig:
    """Load and validate a JSON config file.

    Raises
    ------
    ConfigError
        On JSON syntax errors (with line/column) or schema violations;
        ``problems`` enumerates every offending key, not only the first.
    OSError
        If the file cannot be read.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            [f"{path.name}:{exc.lineno}:{exc.colno}: {exc.msg}"]
        ) from None

    problems: list[str] = []
    if not isinstance(raw, dict):
        raise ConfigError(
            [f"top level must be a JSON object, got {type(raw).__name__}"]
        )
    for key in sorted(set(raw) - _TOP_KEYS):
        problems.append(f"unknown key {key!r} (allowed: {sorted(_TOP_KEYS)})")

    # -- material ----------------------------------------------------------
    material_raw = raw.get("material", {})
    name = WATER_ON_PMMA.name
    theta_flat = WATER_ON_PMMA.theta_flat
    hysteresis = WATER_ON_PMMA.hysteresis
    surface_tension = WATER_ON_PMMA.surface_tension
    if not isinstance(material_raw, dict):
        problems.append(
            f"material: must be an object, got {type(material_raw).__name__}"
        )
    else:
        for key in sorted(set(material_raw) - _MATERIAL_KEYS):
            problems.append(
                f"material: unknown key {key!r} (allowed: {sorted(_MATERIAL_KEYS)})"
            )
        if "name" in material_raw:
            if isinstance(material_raw["name"], str) and material_raw["name"]:
                name = material_raw["name"]
            else:
                problems.append("material.name: must be a non-empty string")
        if "theta_flat" in material_raw:
            value = material_raw["theta_flat"]
            if not _is_number(value) or not 0.0 < value < 180.0:
                problems.append(
                    f"material.theta_flat: must be a number strictly between "
                    f"0 and 180 degrees, got {value!r}"
                )
            else:
                theta_flat = float(value)
        if "hysteresis" in material_raw:
            value = material_raw["hysteresis"]
            if not _is_number(value) or value < 0.0:
                problems.append(
                    f"material.hysteresis: must be a number >= 0 degrees, got {value!r}"
                )
            else:
                hysteresis = float(value)
        if "surface_tension" in material_raw:
            value = material_raw["surface_tension"]
            if not _is_number(value) or value <= 0.0:
                problems.append(
                    f"material.surface_tension: must be a number > 0 N/m, got {value!r}"
                )
            else:
                surface_tension = float(value)
        if _is_number(material_raw.get("theta_flat", theta_flat)) and _is_number(
            material_raw.get("hysteresis", hysteresis)
        ):
            if theta_flat - hysteresis / 2.0 <= 0.0 or theta_flat + hysteresis / 2.0 >= 180.0:
                problems.append(
                    f"material: theta_flat {theta_flat} with hysteresis "
                    f"{hysteresis} pushes the advancing/receding band outside "
                    f"(0, 180) degrees"
                )

    # -- rules --------------------------------------------------------------
    rules_raw = raw.get("rules", {})
    min_wall = DEFAULT_RULES.min_wall
    max_aspect_ratio = DEFAULT_RULES.max_aspect_ratio
    max_height = DEFAULT_RULES.max_height
    fabrication_grid = DEFAULT_RULES.fabrication_grid
    if not isinstance(rules_raw, dict):
        problems.append(f"rules: must be an object, got {type(rules_raw).__name__}")
    else:
        for key in sorted(set(rules_raw) - _RULES_KEYS):
            problems.append(
                f"rules: unknown key {key!r} (allowed: {sorted(_RULES_KEYS)})"
            )
        for key in ("min_wall", "max_height", "fabrication_grid"):
            if key in rules_raw:
                value = rules_raw[key]
                if not _is_int(value) or value < 1:
                    problems.append(
                        f"rules.{key}: must be a positive integer (nm), got {value!r}"
                    )
                else:
                    if key == "min_wall":
                        min_wall = value
                    elif key == "max_height":
                        max_height = value
                    else:
                        fabrication_grid = value
        if "max_aspect_ratio" in rules_raw:
            value = rules_raw["max_aspect_ratio"]
            if not _is_number(value) or value <= 0.0:
                problems.append(
                    f"rules.max_aspect_ratio: must be a number > 0, got {value!r}"
                )
            else:
                max_aspect_ratio = float(value)

    # -- scalars ------------------------------------------------------------
    pitch = 4000
    height = 4000
    if "pitch" in raw:
        value = raw["pitch"]
        if not _is_int(value) or value < 2:
            problems.append(f"pitch: must be an integer >= 2 nm, got {value!r}")
        else:
            pitch = value
    if "height" in raw:
        value = raw["height"]
        if not _is_int(value) or value < 1:
            problems.append(f"height: must be a positive integer (nm), got {value!r}")
        else:
            height = value

    measure = Measure.AREA_FRACTION
    if "measure" in raw:
        value = raw["measure"]
        try:
            measure = Measure(value)
        except ValueError:
            problems.append(
                f"measure: must be one of "
                f"{[m.value for m in Measure]!r}, got {value!r}"
            )

    out_dir = None
    if "out_dir" in raw:
        value = raw["out_dir"]
        if not isinstance(value, str) or not value:
            problems.append(f"out_dir: must be a non-empty string, got {value!r}")
        else:
            out_dir = value

    if problems:
        raise ConfigError(problems)

    try:
        material = Material(
            name=name,
            theta_flat=theta_flat,
            hysteresis=hysteresis,
            surface_tension=surface_tension,
        )
        rules = DesignRules(
            min_wall=min_wall,
            max_aspect_ratio=max_aspect_ratio,
            max_height=max_height,
            fabrication_grid=fabrication_grid,
        )
    except ValueError as exc:  # safety net; the checks above should catch all
        raise ConfigError([str(exc)]) from None

    return ProjectConfig(
        material=material,
        rules=rules,
        pitch=pitch,
        height=height,
        measure=measure,
        out_dir=out_dir,
    )


def resolve_out_dir(config: ProjectConfig) -> Path:
    """Output directory: config value, else $LOTUS_OUT_DIR, else the cwd."""
    if config.out_dir:
        return Path(config.out_dir)
    env = os.environ.get("LOTUS_OUT_DIR")
    if env:
        return Path(env)
    return Path.cwd()
