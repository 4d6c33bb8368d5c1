"""Experiment configuration: TOML files, canned presets, flag overrides.

A config is a nested mapping with sections [network], [experiment],
[realizations], [crossover], and [output]. Sources merge in a fixed
precedence: built-in defaults, then a named preset, then the config file,
then command-line flags. Validation reports the offending key by its
section-qualified name so a bad file fails loudly and specifically.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .graph import GeneratorConfig
from .load import CONVENTIONS
from .sweep import SweepSettings

__all__ = [
    "ExperimentConfig",
    "PRESETS",
    "beta_range",
    "parse_beta_grid",
    "load_config",
    "merge_config",
]


def beta_range(start: float, stop: float, step: float) -> tuple[float, ...]:
    """Inclusive arithmetic grid with decimal-friendly rounding."""
    if step <= 0:
        raise ValueError(f"beta_grid step must be positive, got {step}")
    count = int((stop - start) / step + 1e-9) + 1
    return tuple(round(start + i * step, 10) for i in range(count))


def parse_beta_grid(text: str) -> tuple[float, ...]:
    """Grid syntax: 'start:stop:step' or a comma-separated value list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"beta_grid range must be start:stop:step, got {text!r}")
        return beta_range(float(parts[0]), float(parts[1]), float(parts[2]))
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


@dataclass(frozen=True)
class ExperimentConfig:
    """A full sweep experiment: the network, the physics, the bookkeeping."""

    network: GeneratorConfig | str
    alpha: float
    beta_grid: tuple[float, ...]
    k_ca: int = 1
    network_realizations: int = 1
    attack_realizations: int = 1
    master_seed: int = 0
    load_convention: str = "count"
    capacity_floor: float = 0.0
    bracket: tuple[float, float] = (0.0, 3.0)
    tol: float = 0.01
    output: str = "results"
    workers: int = 0

    def validate(self) -> None:
        """Raise ValueError naming the bad field, section-qualified."""
        if isinstance(self.network, GeneratorConfig):
            try:
                self.network.validate()
            except ValueError as exc:
                raise ValueError(f"network: {exc}") from None
        elif isinstance(self.network, str):
            if not self.network:
                raise ValueError("network.path must not be empty")
            if self.network_realizations != 1:
                raise ValueError(
                    "realizations.network must be 1 when network.path is set"
                )
        else:
            raise ValueError("network must give either model settings or a path")
        if not self.alpha > 0:
            raise ValueError(f"experiment.alpha must be positive, got {self.alpha}")
        if not self.beta_grid:
            raise ValueError("experiment.beta_grid must not be empty")
        grid = self.beta_grid
        if any(b < 0 for b in grid):
            raise ValueError("experiment.beta_grid values must be non-negative")
        if any(b2 <= b1 for b1, b2 in zip(grid, grid[1:])):
            raise ValueError("experiment.beta_grid must be strictly ascending")
        if self.k_ca < 1:
            raise ValueError(f"experiment.k_ca must be at least 1, got {self.k_ca}")
        if self.network_realizations < 1:
            raise ValueError("realizations.network must be at least 1")
        if self.attack_realizations < 1:
            raise ValueError("realizations.attack must be at least 1")
        if self.load_convention not in CONVENTIONS:
            raise ValueError(
                f"experiment.load_convention must be one of {CONVENTIONS}, "
                f"got {self.load_convention!r}"
            )
        if self.capacity_floor < 0:
            raise ValueError("experiment.capacity_floor must be non-negative")
        if not self.bracket[0] < self.bracket[1]:
            raise ValueError(f"crossover.bracket must be increasing, got {self.bracket}")
        if self.bracket[0] < 0:
            raise ValueError("crossover.bracket must be non-negative")
        if not self.tol > 0:
            raise ValueError(f"crossover.tol must be positive, got {self.tol}")
        if not self.output:
            raise ValueError("output.directory must not be empty")
        if self.workers < 0:
            raise ValueError(f"output.workers must be non-negative, got {self.workers}")

    def resolved_workers(self) -> int:
        if self.workers > 0:
            return self.workers
        try:
            return len(os.sched_getaffinity(0))
        except AttributeError:
            return os.cpu_count() or 1

    def to_sweep_settings(self) -> SweepSettings:
        return SweepSettings(
            network=self.network,
            alpha=self.alpha,
            k_ca=self.k_ca,
            network_realizations=self.network_realizations,
            attack_realizations=self.attack_realizations,
            master_seed=self.master_seed,
            load_convention=self.load_convention,
            capacity_floor=self.capacity_floor,
            workers=self.resolved_workers(),
        )

    def to_dict(self) -> dict:
        """Echo form for the summary JSON: the full resolved configuration."""
        if isinstance(self.network, str):
            network: dict = {"path": self.network}
        else:
            network = {
                "model": self.network.model,
                "n": self.network.n,
                "mean_degree": self.network.mean_degree,
            }
        return {
            "network": network,
            "experiment": {
                "alpha": self.alpha,
                "beta_grid": list(self.beta_grid),
                "k_ca": self.k_ca,
                "master_seed": self.master_seed,
                "load_convention": self.load_convention,
                "capacity_floor": self.capacity_floor,
            },
            "realizations": {
                "network": self.network_realizations,
                "attack": self.attack_realizations,
            },
            "crossover": {"bracket": list(self.bracket), "tol": self.tol},
            "output": {"directory": self.output, "workers": self.workers},
        }


# Canned parameter sets reproducing the four study configurations. The
# real-network presets leave network.path unset; the caller must supply
# the dataset file. The model presets pin the endpoint load convention,
# which is the variant that reproduces the published crossover locations
# (see README).
PRESETS: dict[str, dict] = {
    "fig1": {
        "network": {"model": "ba", "n": 3000, "mean_degree": 4.0},
        "experiment": {
            "alpha": 0.3,
            "beta_grid": list(beta_range(0.0, 2.5, 0.1)),
            "k_ca": 1,
            "master_seed": 31,
            "load_convention": "endpoint",
        },
        "realizations": {"network": 50, "attack": 1},
        "output": {"directory": "results/fig1"},
    },
    "fig2": {
        "network": {"model": "ba", "n": 1000, "mean_degree": 4.0},
        "experiment": {
            "alpha": 0.3,
            "beta_grid": list(beta_range(0.0, 2.5, 0.25)),
            "k_ca": 1,
            "master_seed": 32,
            "load_convention": "endpoint",
        },
        "realizations": {"network": 20, "attack": 1},
        "output": {"directory": "results/fig2"},
    },
    "fig3": {
        "experiment": {
            "alpha": 0.3,
            "beta_grid": list(beta_range(0.0, 2.5, 0.1)),
            "k_ca": 10,
            "master_seed": 33,
            "load_convention": "endpoint",
        },
        "realizations": {"network": 1, "attack": 10},
        "output": {"directory": "results/fig3"},
    },
    "fig4": {
        "experiment": {
            "alpha": 0.3,
            "beta_grid": list(beta_range(0.0, 2.5, 0.1)),
            "k_ca": 10,
            "master_seed": 34,
            "load_convention": "endpoint",
        },
        "realizations": {"network": 1, "attack": 10},
        "output": {"directory": "results/fig4"},
    },
}


def merge_config(*layers: dict) -> dict:
    """Later layers win; section dicts merge key-by-key.

    The network section is special because a file path and generator
    settings are mutually exclusive alternatives: a layer that sets
    network.path replaces any accumulated generator keys, and a layer
    that sets generator keys drops an accumulated path.
    """
    merged: dict = {}
    for layer in layers:
        for section, content in layer.items():
            if not isinstance(content, dict):
                merged[section] = content
                continue
            target = merged.setdefault(section, {})
            if section == "network":
                if "path" in content:
                    target.clear()
                elif set(content) & {"model", "n", "mean_degree", "seed"}:
                    target.pop("path", None)
            target.update(content)
    return merged


def _build_network(section: dict) -> GeneratorConfig | str:
    if "path" in section:
        extra = sorted(set(section) - {"path"})
        if extra:
            raise ValueError(
                f"network.path excludes other network keys, found {extra}"
            )
        return str(section["path"])
    missing = sorted({"model", "n", "mean_degree"} - set(section))
    if missing:
        raise ValueError(f"network section is missing {missing} (or a path)")
    return GeneratorConfig(
        model=str(section["model"]),
        n=int(section["n"]),
        mean_degree=float(section["mean_degree"]),
        seed=int(section.get("seed", 0)),
    )


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a config from the nested mapping form; unknown keys rejected."""
    known = {"network", "experiment", "realizations", "crossover", "output"}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValueError(f"unknown config section(s): {unknown}")
    if "network" not in data:
        raise ValueError("network section is required")
    network = _build_network(dict(data["network"]))
    exp = dict(data.get("experiment", {}))
    real = dict(data.get("realizations", {}))
    cross = dict(data.get("crossover", {}))
    out = dict(data.get("output", {}))
    for section, content, allowed in (
        ("experiment", exp, {"alpha", "beta_grid", "k_ca", "master_seed",
                             "load_convention", "capacity_floor"}),
        ("realizations", real, {"network", "attack"}),
        ("crossover", cross, {"bracket", "tol"}),
        ("output", out, {"directory", "workers"}),
    ):
        bad = sorted(set(content) - allowed)
        if bad:
            raise ValueError(f"unknown key(s) in [{section}]: {bad}")
    if "alpha" not in exp:
        raise ValueError("experiment.alpha is required")
    if "beta_grid" not in exp:
        raise ValueError("experiment.beta_grid is required")
    grid = exp["beta_grid"]
    if isinstance(grid, str):
        grid = parse_beta_grid(grid)
    beta_grid = tuple(float(b) for b in grid)
    bracket = cross.get("bracket", (0.0, 3.0))
    return ExperimentConfig(
        network=network,
        alpha=float(exp["alpha"]),
        beta_grid=beta_grid,
        k_ca=int(exp.get("k_ca", 1)),
        network_realizations=int(real.get("network", 1)),
        attack_realizations=int(real.get("attack", 1)),
        master_seed=int(exp.get("master_seed", 0)),
        load_convention=str(exp.get("load_convention", "count")),
        capacity_floor=float(exp.get("capacity_floor", 0.0)),
        bracket=(float(bracket[0]), float(bracket[1])),
        tol=float(cross.get("tol", 0.01)),
        output=str(out.get("directory", "results")),
        workers=int(out.get("workers", 0)),
    )


def load_config(
    path: str | None = None,
    preset: str | None = None,
    overrides: dict | None = None,
    base: dict | None = None,
) -> ExperimentConfig:
    """Assemble a config from base, preset, file, and override layers, in
    that order (later layers win)."""
    layers: list[dict] = []
    if base:
        layers.append(base)
    if preset is not None:
        if preset not in PRESETS:
            raise ValueError(
                f"unknown preset {preset!r}; available: {sorted(PRESETS)}"
            )
        layers.append(PRESETS[preset])
    if path is not None:
        with open(path, "rb") as fh:
            layers.append(tomllib.load(fh))
    if overrides:
        layers.append(overrides)
    if not layers:
        raise ValueError("no configuration given: need a config file or a preset")
    return config_from_dict(merge_config(*layers))
