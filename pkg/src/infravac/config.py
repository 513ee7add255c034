"""Campaign configuration: YAML file merged over baked-in defaults."""

from __future__ import annotations

import copy
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
import yaml


class ConfigError(ValueError):
    pass


DEFAULTS = {
    "seed": 0,
    "tolerance_scale": 1.0,
    "model": {"kappa": 1.0, "alpha": 0.1, "v_max": 0.95, "n_shells": 24, "lmax": 24},
    "tolerances": {
        "gram": 1e-8,
        "transversality": 1e-12,
        "gradient_norm": 1e-8,
        "kpr_identity": 1e-12,
        "t1_norm": 1e-12,
        "t2_norm": 1e-6,
        "k_stability": 0.01,
        "l2_closed_form": 1e-6,
        "witness": 1e-6,
        "pairing": 1e-4,
        "commutator": 1e-3,
        "angular_tail": 1e-12,
    },
    "groups": {"max_order": 16, "extras": True, "random_actions": 200, "table": None},
    "harmonics": {"lmax": 8},
    "kpr": {"samples": 100, "truncations": [1, 2, 5, 12, 24]},
    "dressing": {"w": [0.0, 0.0, 0.3], "delta": 0.0, "lmax_auto": False, "speeds": [0.1, 0.2, 0.3, 0.4]},
    "velocities": [[0.0, 0.0, 0.3], [0.2, 0.0, 0.0], [0.0, 0.25, 0.1]],
    "witnesses": [{"w": [0.0, 0.0, 0.2], "w_prime": [0.3, 0.0, 0.0], "sigma": 0.0625, "C": 1.0,
                   "exclusion_deg": 15.0, "ramp_deg": 15.0}],
    "central": {"k_max": 12, "pairing_k": 10},
    "geometry": {"trials": 1000},
    "sectors": {"samples": 20},
    "out": "infravac-out",
}


def _merge(base: dict, over: dict, path: str = "") -> dict:
    out = copy.deepcopy(base)
    for k, v in over.items():
        where = f"{path}{k}"
        if k not in base:
            raise ConfigError(f"unknown config key '{where}'")
        if isinstance(base[k], dict):
            if not isinstance(v, dict):
                raise ConfigError(f"'{where}' must be a mapping")
            out[k] = _merge(base[k], v, where + ".")
        else:
            out[k] = v
    return out


def _vec(v, where) -> tuple:
    try:
        a = np.asarray(v, dtype=float)
    except (TypeError, ValueError):
        raise ConfigError(f"{where} must be a list of three numbers") from None
    if a.shape != (3,) or not np.all(np.isfinite(a)):
        raise ConfigError(f"{where} must be a list of three numbers")
    return tuple(float(x) for x in a)


@dataclass(frozen=True)
class CampaignConfig:
    raw: dict

    def __getitem__(self, key):
        return self.raw[key]

    @property
    def seed(self) -> int:
        return int(self.raw["seed"])

    def tol(self, name: str) -> float:
        return float(self.raw["tolerances"][name]) * float(self.raw["tolerance_scale"])

    @property
    def model(self) -> dict:
        return self.raw["model"]

    def velocities(self) -> list[tuple]:
        return [_vec(w, f"velocities[{i}]") for i, w in enumerate(self.raw["velocities"])]

    def validate(self) -> "CampaignConfig":
        m = self.model
        try:
            seed = int(self.raw["seed"])
            kappa, alpha, vmax = float(m["kappa"]), float(m["alpha"]), float(m["v_max"])
            n_shells, lmax = int(m["n_shells"]), int(m["lmax"])
            scale = float(self.raw["tolerance_scale"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad numeric value: {exc}") from None
        if seed < 0:
            raise ConfigError("seed must be non-negative")
        if kappa <= 0 or alpha <= 0:
            raise ConfigError("kappa and alpha must be positive")
        if not 0 < vmax < 1:
            raise ConfigError(f"v_max must satisfy 0 < v_max < 1, got {vmax}")
        if n_shells < 2 or lmax < 1:
            raise ConfigError("need n_shells >= 2 and lmax >= 1")
        if scale <= 0:
            raise ConfigError("tolerance_scale must be positive")
        for k, v in self.raw["tolerances"].items():
            try:
                ok = float(v) > 0
            except (TypeError, ValueError):
                ok = False
            if not ok:
                raise ConfigError(f"tolerance '{k}' must be a positive number")
        ws = [("dressing.w", _vec(self.raw["dressing"]["w"], "dressing.w"))]
        ws += [(f"velocities[{i}]", w) for i, w in enumerate(self.velocities())]
        for i, spec in enumerate(self.raw["witnesses"]):
            if not isinstance(spec, dict):
                raise ConfigError(f"witnesses[{i}] must be a mapping")
            extra = set(spec) - set(DEFAULTS["witnesses"][0])
            if extra:
                raise ConfigError(f"unknown keys in witnesses[{i}]: {sorted(extra)}")
            ws.append((f"witnesses[{i}].w", _vec(spec.get("w"), f"witnesses[{i}].w")))
            ws.append((f"witnesses[{i}].w_prime", _vec(spec.get("w_prime"), f"witnesses[{i}].w_prime")))
        for where, w in ws:
            s = float(np.linalg.norm(w))
            if s > vmax:
                raise ConfigError(f"|{where}| = {s:.4g} exceeds v_max = {vmax} (must stay below 1)")
        for s in self.raw["dressing"]["speeds"]:
            if not 0 <= float(s) <= vmax:
                raise ConfigError(f"dressing speed {s} outside [0, v_max]")
        if len(set(self.velocities())) != len(self.velocities()):
            raise ConfigError("velocities must be distinct")
        if any(np.linalg.norm(w) == 0 for w in self.velocities()):
            raise ConfigError("velocities must be non-zero")
        if int(self.raw["central"]["k_max"]) < 0:
            raise ConfigError("central.k_max must be non-negative")
        return self


def default_config_text() -> str:
    return resources.files("infravac").joinpath("data/default.yaml").read_text()


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> CampaignConfig:
    """Read ``path`` (YAML) over the defaults, apply ``overrides``, validate."""
    data = {}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        try:
            data = yaml.safe_load(text) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"config is not valid YAML: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a mapping at the top level")
    raw = _merge(DEFAULTS, data)
    if overrides:
        raw = _merge(raw, overrides)
    return CampaignConfig(raw).validate()
