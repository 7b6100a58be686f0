"""Scenario files: ``key = value`` lines under ``[scene]`` and ``[experiment]``.

Omitted keys take the running-example defaults of :class:`SceneConfig`.
Angle keys may be given in degrees with a ``_deg`` suffix
(``theta_t_deg = 90``). Vectors are comma separated.
"""

from __future__ import annotations

import configparser
import dataclasses
import enum
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import ConfigError, IrsError
from ..geometry import SceneConfig


class Scenario(enum.Enum):
    COND_VS_N = "cond-vs-n"
    RATE_VS_N = "rate-vs-n"
    RATE_CDF = "rate-cdf"
    RATE_VS_UE_Y = "rate-vs-ue-y"
    SINGLE = "single"


@dataclass(frozen=True)
class Sweep:
    variable: str
    values: tuple[float, ...]

    @classmethod
    def from_range(cls, variable: str, lo: float, hi: float, step: float) -> "Sweep":
        if not step > 0 or hi < lo:
            raise ValueError(f"bad sweep range lo={lo} hi={hi} step={step}")
        count = int(np.floor((hi - lo) / step + 1e-9)) + 1
        return cls(variable, tuple(round(lo + k * step, 12) for k in range(count)))


DEFAULT_SWEEPS = {
    Scenario.COND_VS_N: Sweep.from_range("n_y", 1, 100, 1),
    Scenario.RATE_VS_N: Sweep.from_range("n_y", 1, 100, 1),
    Scenario.RATE_VS_UE_Y: Sweep.from_range("y_u", -5.0, 2.0, 0.01),
}
DEFAULT_ELEMENTS = {Scenario.RATE_CDF: 50, Scenario.RATE_VS_UE_Y: 100}
SWEEP_VARIABLES = {
    Scenario.COND_VS_N: "n_y",
    Scenario.RATE_VS_N: "n_y",
    Scenario.RATE_VS_UE_Y: "y_u",
}


@dataclass(frozen=True)
class ExperimentSpec:
    scenario: Scenario = Scenario.SINGLE
    sweep: Sweep | None = None
    mc_draws: int = 1000
    seed: int = 0
    output_path: Path | None = None
    n_elements: int | None = None
    workers: int = 1

    def __post_init__(self):
        if self.scenario is Scenario.RATE_CDF and self.mc_draws < 1:
            raise ValueError("mc_draws must be >= 1")
        if self.sweep is not None and not self.sweep.values:
            raise ValueError("sweep is empty")
        if self.sweep is not None and self.scenario in SWEEP_VARIABLES:
            want = SWEEP_VARIABLES[self.scenario]
            if self.sweep.variable != want:
                raise ValueError(f"{self.scenario.value} sweeps {want}, not {self.sweep.variable}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def resolved_sweep(self) -> Sweep | None:
        return self.sweep if self.sweep is not None else DEFAULT_SWEEPS.get(self.scenario)

    def resolved_elements(self) -> int | None:
        return self.n_elements if self.n_elements is not None else DEFAULT_ELEMENTS.get(self.scenario)


_VECTOR_KEYS = {"bs_position", "ue_position"}
_INT_KEYS = {"n_y", "n_z"}
_ANGLE_KEYS = {"theta_t", "phi_t", "theta_r", "phi_r"}
_SCENE_KEYS = {f.name for f in dataclasses.fields(SceneConfig)}
_EXPERIMENT_KEYS = {
    "scenario", "sweep_variable", "sweep_lo", "sweep_hi", "sweep_step", "sweep_values",
    "mc_draws", "seed", "output", "n_elements", "workers",
}


def _line_numbers(text: str) -> dict[tuple[str, str], int]:
    lines = {}
    section = ""
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        m = re.match(r"^\[([^\]]+)\]", line)
        if m:
            section = m.group(1).strip()
            continue
        m = re.match(r"^([^=:#;\s][^=:]*?)\s*[=:]", line)
        if m:
            lines.setdefault((section, m.group(1).strip().lower()), k)
    return lines


def _parse_float(text: str) -> float:
    value = float(text)
    if not np.isfinite(value):
        raise ValueError(f"non-finite number {text!r}")
    return value


def _parse_int(text: str) -> int:
    value = _parse_float(text)
    if value != int(value):
        raise ValueError(f"expected an integer, got {text!r}")
    return int(value)


def _parse_vector(text: str) -> tuple[float, ...]:
    return tuple(_parse_float(p) for p in text.replace(";", ",").split(",") if p.strip())


def parse_config_text(text: str, source: str = "<config>") -> tuple[SceneConfig, ExperimentSpec]:
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";"), default_section="__defaults__"
    )
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    lines = _line_numbers(text)

    def where(section, key):
        line = lines.get((section, key))
        return f"{source}:{line}" if line else source

    for section in parser.sections():
        if section not in ("scene", "experiment"):
            raise ConfigError(f"{source}: unknown section [{section}]")

    scene_kwargs = {}
    if parser.has_section("scene"):
        for key, raw in parser.items("scene"):
            base = key[:-4] if key.endswith("_deg") else key
            try:
                if key.endswith("_deg") and base in _ANGLE_KEYS:
                    value = np.deg2rad(_parse_float(raw))
                elif key in _VECTOR_KEYS:
                    value = _parse_vector(raw)
                    if len(value) != 3:
                        raise ValueError(f"expected 3 components, got {len(value)}")
                elif key in _INT_KEYS:
                    value = _parse_int(raw)
                elif key in _SCENE_KEYS:
                    value = _parse_float(raw)
                else:
                    raise ConfigError(f"{where('scene', key)}: unknown key [scene] {key}")
            except ValueError as exc:
                raise ConfigError(f"{where('scene', key)}: [scene] {key} = {raw!r}: {exc}") from exc
            if base in scene_kwargs:
                raise ConfigError(f"{where('scene', key)}: [scene] {base} given twice")
            scene_kwargs[base] = value
    try:
        cfg = SceneConfig(**scene_kwargs)
    except (ValueError, IrsError) as exc:
        raise ConfigError(f"{source}: invalid [scene]: {exc}") from exc

    exp = {}
    if parser.has_section("experiment"):
        for key, raw in parser.items("experiment"):
            if key not in _EXPERIMENT_KEYS:
                raise ConfigError(f"{where('experiment', key)}: unknown key [experiment] {key}")
            exp[key] = raw
    try:
        spec = _build_experiment(exp)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"{source}: invalid [experiment]: {exc}") from exc
    return cfg, spec


def _build_experiment(exp: dict[str, str]) -> ExperimentSpec:
    scenario = Scenario(exp["scenario"].strip()) if "scenario" in exp else Scenario.SINGLE
    sweep = None
    if "sweep_values" in exp:
        variable = exp.get("sweep_variable", SWEEP_VARIABLES.get(scenario, "n_y")).strip()
        sweep = Sweep(variable, _parse_vector(exp["sweep_values"]))
    elif any(k in exp for k in ("sweep_lo", "sweep_hi", "sweep_step")):
        default = DEFAULT_SWEEPS.get(scenario)
        if default is None:
            raise ValueError(f"{scenario.value} takes no sweep")
        vals = default.values
        sweep = Sweep.from_range(
            exp.get("sweep_variable", default.variable).strip(),
            _parse_float(exp["sweep_lo"]) if "sweep_lo" in exp else vals[0],
            _parse_float(exp["sweep_hi"]) if "sweep_hi" in exp else vals[-1],
            _parse_float(exp["sweep_step"]) if "sweep_step" in exp else vals[1] - vals[0],
        )
    kwargs = dict(scenario=scenario, sweep=sweep)
    if "mc_draws" in exp:
        kwargs["mc_draws"] = _parse_int(exp["mc_draws"])
    if "seed" in exp:
        kwargs["seed"] = int(exp["seed"].strip(), 0)
    if "output" in exp:
        kwargs["output_path"] = Path(exp["output"].strip())
    if "n_elements" in exp:
        kwargs["n_elements"] = _parse_int(exp["n_elements"])
    if "workers" in exp:
        kwargs["workers"] = _parse_int(exp["workers"])
    return ExperimentSpec(**kwargs)


def parse_config(path) -> tuple[SceneConfig, ExperimentSpec]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_config_text(text, source=str(path))
