"""Experiment configuration files.

A configuration is a JSON object::

    {
      "domain": {"type": "ball", "center": [0, 0], "radius": 1},
      "base_points": [[0.5, 0]],
      "radii": [0.25, 0.5, 1, 2],
      "samples": 10000,
      "seed": 42,
      "out": "out/ball",
      "tau_decay": {"boundary_point": [1, 0], "t": [0.1, 0.01]},
      "projection": {"directions": [128, 512]},
      "slice": {"radius": 1, "grid": 256},
      "sharpness": {"eps": [0.01, 0.001], "t": [2, 10, 100]},
      "metric": {"triples": 1000000, "base_points": 20, "step": 1e-6}
    }

Instead of ``base_points`` a rule ``{"rule": "random_interior", "count": k}``
may be given under ``points``. Domain descriptions follow
``kobayashi_balls.domains.grammar``. Only the sections a suite needs are read.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ..domains import Domain, DomainError, sample_interior
from ..domains.grammar import parse_cvector, parse_domain


class ConfigError(ValueError):
    """Malformed or inconsistent experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    domain: dict | None = None
    base_points: tuple = ()
    point_rule: dict | None = None
    radii: tuple = (0.25, 0.5, 1.0, 2.0)
    samples: int = 10_000
    seed: int = 0
    out: str = "out"
    sections: dict = field(default_factory=dict)

    def __post_init__(self):
        if int(self.samples) <= 0:
            raise ConfigError("samples must be positive")
        if any(not float(r) > 0 for r in self.radii):
            raise ConfigError("radii must be positive")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")

    def section(self, name: str) -> dict:
        return dict(self.sections.get(name) or {})

    def build_domain(self) -> Domain:
        if self.domain is None:
            raise ConfigError("configuration has no domain")
        try:
            return parse_domain(self.domain)
        except (DomainError, ValueError, TypeError) as exc:
            raise ConfigError(f"bad domain description: {exc}") from exc

    def points(self, d: Domain) -> list[np.ndarray]:
        """Base points given explicitly or generated by the point rule."""
        if self.base_points:
            pts = [parse_cvector(p) for p in self.base_points]
            for p in pts:
                if p.size != d.n:
                    raise ConfigError(f"base point {p} does not match dimension {d.n}")
                if not d.contains(p):
                    raise ConfigError(f"base point {p} is not in the domain")
            return pts
        rule = self.point_rule or {"rule": "interior_point"}
        kind = rule.get("rule")
        if kind == "interior_point":
            return [d.interior_point()]
        if kind == "random_interior":
            count = int(rule.get("count", 1))
            rng = np.random.default_rng([int(self.seed), 2 ** 31 - 1])
            pts = sample_interior(d, 4 * count, rng)[:count]
            return list(pts)
        raise ConfigError(f"unknown point rule {kind!r}")

    def with_overrides(self, seed=None, samples=None, out=None) -> "ExperimentConfig":
        kw = {}
        if seed is not None:
            kw["seed"] = int(seed)
        if samples is not None:
            kw["samples"] = int(samples)
        if out is not None:
            kw["out"] = str(out)
        return replace(self, **kw)


SECTIONS = ("tau_decay", "projection", "slice", "sharpness", "metric")


def config_from_dict(raw: dict) -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    pts = raw.get("base_points")
    if pts is None and "base_point" in raw:
        pts = [raw["base_point"]]
    rule = raw.get("points")
    if rule is not None and not isinstance(rule, dict):
        raise ConfigError("'points' must be an object with a 'rule'")
    try:
        return ExperimentConfig(
            domain=raw.get("domain"),
            base_points=tuple(pts or ()),
            point_rule=rule,
            radii=tuple(float(r) for r in raw.get("radii", (0.25, 0.5, 1.0, 2.0))),
            samples=int(raw.get("samples", 10_000)),
            seed=int(raw.get("seed", 0)),
            out=str(raw.get("out", "out")),
            sections={k: raw[k] for k in SECTIONS if k in raw},
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def load_config(path) -> ExperimentConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return config_from_dict(raw)
