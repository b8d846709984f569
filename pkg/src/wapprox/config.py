"""Experiment configuration: JSON file to validated dataclass."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import functions as F
from . import weights as W
from .geometry import ZSet
from .verify import POLY_WEIGHTS, SUITES, Grids


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    weight: dict
    zset: list
    function: dict
    r: list = field(default_factory=lambda: [2])
    A: float = 1.0
    B: float = 1.0
    c1: float = 1.0
    c2: float = 1.0
    n_ladder: list = field(default_factory=lambda: [4, 8, 16, 32, 64])
    grids: dict = field(default_factory=dict)
    suites: list = field(default_factory=lambda: list(SUITES))
    seed: int = 0
    output_dir: str = "results"
    trials: int = 20
    poly_weights: list = field(default_factory=lambda: list(POLY_WEIGHTS))
    poly_ladder: list = field(default_factory=lambda: [8, 16, 32, 64])
    t: float = 0.125
    near_best: dict = field(default_factory=lambda: {"z": 0.0, "count": 10, "weight": None})

    def __post_init__(self):
        if isinstance(self.r, int):
            self.r = [self.r]
        self.validate()

    def validate(self):
        if not self.suites:
            raise ConfigError("suites must be nonempty")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites {unknown}; known: {list(SUITES)}")
        for name, lad in (("n_ladder", self.n_ladder), ("poly_ladder", self.poly_ladder)):
            if not lad or any(int(b) <= int(a) for a, b in zip(lad, lad[1:])) or int(lad[0]) < 1:
                raise ConfigError(f"{name} must be a strictly increasing list of positive integers")
        if not self.r or any(int(k) < 1 for k in self.r):
            raise ConfigError("r must be a list of integers >= 1")
        if not (self.A > 0 and self.B > 0 and self.t > 0):
            raise ConfigError("A, B and t must be positive")
        if not self.c2 >= self.c1 > 0:
            raise ConfigError("need c2 >= c1 > 0")
        if self.trials < 20:
            raise ConfigError("trials must be >= 20")
        bad = [p for p in self.poly_weights if p not in POLY_WEIGHTS]
        if bad:
            raise ConfigError(f"unknown poly_weights {bad}; known: {sorted(POLY_WEIGHTS)}")
        try:
            self.make_zset()
            self.make_weight()
            self.make_function()
            g = self.make_grids()
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc
        if g.approx_grid < 8 * max(self.n_ladder):
            raise ConfigError("grids.approx_grid must be at least 8 * max(n_ladder)")

    def make_weight(self, spec=None) -> W.Weight:
        return W.from_dict(self.weight if spec is None else spec)

    def make_zset(self) -> ZSet:
        return ZSet(tuple(self.zset))

    def make_function(self):
        spec = dict(self.function)
        name = spec.pop("name")
        return F.function_registry(name, **spec.get("params", spec))

    def make_grids(self, scale: float = 1.0) -> Grids:
        g = Grids(**self.grids)
        return g if scale == 1.0 else g.scaled(scale)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        missing = {"weight", "zset", "function"} - set(d)
        if missing:
            raise ConfigError(f"missing config keys {sorted(missing)}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


def load_config(path) -> ExperimentConfig:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return ExperimentConfig.from_dict(data)
