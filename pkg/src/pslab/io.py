"""Field export/import, scenario files and the JSON schemas they follow."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
import numpy as np

from .grid import PhaseSpaceField, PhaseSpaceGrid, build_grid, default_grid
from .statelib import StateSpec, _PARAMS

OPERATIONS = ("wigner", "husimi", "entropy", "admissibility", "smooth", "probe", "claims")

_positive = {"type": "number", "exclusiveMinimum": 0}

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "pslab scenario",
    "type": "object",
    "additionalProperties": False,
    "required": ["operation"],
    "properties": {
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "hbar": _positive,
                "L": _positive,
                "Nx": {"type": "integer", "minimum": 8, "multipleOf": 2},
            },
        },
        "state": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": sorted(_PARAMS)}},
        },
        "operation": {
            "type": "object",
            "additionalProperties": False,
            "required": ["name"],
            "properties": {
                "name": {"enum": list(OPERATIONS)},
                "params": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "kappa": _positive,
                        "sigma": _positive,
                        "sigma_x": _positive,
                        "sigma_p": _positive,
                        "a": _positive,
                        "cutoffs": {"type": "array", "items": _positive, "minItems": 4},
                        "claim_id": {"enum": ["C1", "C2", "C3", "C4", "C5", "C6"]},
                    },
                },
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "path": {"type": "string", "minLength": 1},
                "format": {"enum": ["csv", "json"]},
            },
        },
    },
}

_measurement = {
    "type": "object",
    "additionalProperties": False,
    "required": ["name", "value", "tolerance", "passed"],
    "properties": {
        "name": {"type": "string"},
        "value": {"type": "number"},
        "tolerance": {"type": ["number", "null"]},
        "passed": {"type": ["boolean", "null"]},
    },
}

CLAIM_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "pslab claim report",
    "type": "object",
    "additionalProperties": False,
    "required": ["claim_id", "description", "measurements", "verdict", "fixtures", "grid", "notes", "details"],
    "properties": {
        "claim_id": {"enum": ["C1", "C2", "C3", "C4", "C5", "C6"]},
        "description": {"type": "string", "minLength": 1},
        "measurements": {"type": "array", "items": _measurement, "minItems": 1},
        "verdict": {"enum": ["confirmed", "refuted", "measured_only"]},
        "fixtures": {"type": "array", "items": {"type": "object", "required": ["kind"]}},
        "grid": {
            "type": "object",
            "required": ["hbar", "L", "Nx", "Np", "dx", "dp"],
        },
        "notes": {"type": "string"},
        "details": {"type": "object"},
    },
    "allOf": [{
        "if": {"properties": {"claim_id": {"const": "C3"}}},
        "then": {"properties": {"verdict": {"const": "measured_only"}}},
        "else": {"properties": {"verdict": {"enum": ["confirmed", "refuted"]}}},
    }],
}


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    grid: PhaseSpaceGrid
    state: StateSpec
    operation: str
    params: dict = field(default_factory=dict)
    output_path: str | None = None
    output_format: str = "json"


def validate_claim_report(d: dict) -> None:
    jsonschema.validate(d, CLAIM_REPORT_SCHEMA)


def parse_scenario(data: dict) -> Scenario:
    try:
        jsonschema.validate(data, SCENARIO_SCHEMA)
    except jsonschema.ValidationError as err:
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise ScenarioError(f"invalid scenario at {where}: {err.message}") from None
    g = data.get("grid", {})
    base = default_grid()
    grid = build_grid(g.get("hbar", base.hbar), g.get("L", base.L), g.get("Nx", base.Nx))
    try:
        state = StateSpec.from_dict(data.get("state", {"kind": "fock", "n": 0}))
    except ValueError as err:
        raise ScenarioError(f"invalid scenario at state: {err}") from None
    op = data["operation"]
    out = data.get("output", {})
    path = out.get("path")
    fmt = out.get("format") or ("csv" if path and path.endswith(".csv") else "json")
    return Scenario(grid, state, op["name"], dict(op.get("params", {})), path, fmt)


def load_scenario(path) -> Scenario:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as err:
        raise ScenarioError(f"{path}: not valid JSON ({err})") from None
    return parse_scenario(data)


def atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def field_to_csv(f: PhaseSpaceField) -> str:
    if f.values.size == 0:
        raise ValueError("refusing to export an empty field")
    x, p = f.grid.x, f.grid.p
    rows = ["x,p,value"]
    xs = [repr(float(v)) for v in x]
    ps = [repr(float(v)) for v in p]
    for j, xj in enumerate(xs):
        rows.extend(f"{xj},{pk},{float(v)!r}" for pk, v in zip(ps, f.values[j]))
    return "\n".join(rows) + "\n"


def field_to_dict(f: PhaseSpaceField) -> dict:
    if f.values.size == 0:
        raise ValueError("refusing to export an empty field")
    g = f.grid
    meta = {k: v for k, v in f.meta.items() if isinstance(v, (int, float, str, dict))}
    return {
        "kind": f.kind,
        "grid": {"hbar": g.hbar, "L": g.L, "Nx": g.Nx, "Np": g.Np},
        "shape": [g.Nx, g.Np],
        "meta": meta,
        "values": [float(v) for v in f.values.ravel()],
    }


def export_field(f: PhaseSpaceField, fmt: str, path) -> None:
    if fmt == "csv":
        text = field_to_csv(f)
    elif fmt == "json":
        text = json.dumps(field_to_dict(f))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    atomic_write(path, text)


def load_field(path) -> PhaseSpaceField:
    d = json.loads(Path(path).read_text())
    g = d["grid"]
    grid = PhaseSpaceGrid(g["hbar"], g["L"], g["Nx"], g["Np"])
    values = np.array(d["values"], dtype=float).reshape(d["shape"])
    return PhaseSpaceField(grid, values, d["kind"], d.get("meta", {}))


def read_field_csv(path, grid: PhaseSpaceGrid) -> np.ndarray:
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    return data[:, 2].reshape(grid.Nx, grid.Np)
