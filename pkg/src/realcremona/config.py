"""Family configuration files: JSON validated against the bundled schema."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .conjugacy import Config7, Config8, ConfigError
from .exact import GaussRat, parse_rat
from .families import FamilySpec


class ConfigFileError(ValueError):
    pass


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files("realcremona").joinpath("schema/family_config.schema.json").read_text()
    return json.loads(text)


def _complex(d: dict) -> GaussRat:
    return GaussRat(parse_rat(d["re"]), parse_rat(d["im"]))


def spec_from_dict(data: Any) -> FamilySpec:
    try:
        jsonschema.validate(data, schema())
    except jsonschema.ValidationError as exc:
        raise ConfigFileError(f"invalid config: {exc.message}") from exc
    fam = data["family"]
    try:
        if fam == 7:
            return FamilySpec(7, config7=Config7.of(_complex(p) for p in data["pairs"]))
        if fam == 8:
            pts = data["points"]
            real = [r if r == "inf" else parse_rat(r) for r in pts.get("real", [])]
            cfg = Config8.of(real, [_complex(p) for p in pts.get("pairs", [])])
            if "n" in data and data["n"] != cfg.n:
                raise ConfigFileError(f"n = {data['n']} but the points give n = {cfg.n}")
            return FamilySpec(8, config8=cfg)
    except ConfigError as exc:
        raise ConfigFileError(str(exc)) from exc
    return FamilySpec(fam, n=data.get("n"))


def load_spec(path: str | Path) -> FamilySpec:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigFileError(f"cannot read {path}: {exc}") from exc
    return spec_from_dict(data)


def spec_to_dict(spec: FamilySpec) -> dict:
    out: dict[str, Any] = {"family": spec.family}
    if spec.family == 6:
        out["n"] = spec.n
    if spec.family == 7:
        out.update(spec.config7.to_json())
    if spec.family == 8:
        out["n"] = spec.config8.n
        out["points"] = spec.config8.to_json()
    return out
