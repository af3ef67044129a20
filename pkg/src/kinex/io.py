"""Bit-stable artifact emission and sweep-grid config parsing.

CSV cells use Python's shortest round-trip float repr (locale-independent),
'\n' line endings and a single trailing newline. JSON documents are
indent-2 with sorted keys; NaN maps to null. Files are written to a
temporary name and renamed into place, and every output directory gets a
manifest.json carrying SHA-256 digests of the files it describes.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import os
import tempfile

import numpy as np

from . import __version__
from .engine import RNG_ALGORITHM
from .errors import GridConfigError
from .sweep import SweepGrid

__all__ = [
    "format_cell",
    "write_csv",
    "write_json",
    "read_table",
    "write_manifest",
    "parse_grid_config",
    "serialize_grid_config",
    "SWEEP_CSV_COLUMNS",
]

SWEEP_CSV_COLUMNS = (
    "model", "lambda", "xi", "tp", "gamma", "x_ex", "x_nx",
    "replicate", "seed", "g", "f", "f_over_g",
)


def format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_atomic(path, data: bytes):
    path = os.fspath(path)
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(format_cell(v) for v in row) for row in rows)
    _write_atomic(path, ("\n".join(lines) + "\n").encode("utf-8"))


def _jsonify(obj):
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return None if np.isnan(f) or np.isinf(f) else f
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    return obj


def write_json(path, obj):
    text = json.dumps(_jsonify(obj), indent=2, sort_keys=True, allow_nan=False)
    _write_atomic(path, (text + "\n").encode("utf-8"))


def read_table(path):
    """Read a kinex CSV back as (header, list of row dicts of raw strings)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError(f"{path}: empty CSV")
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:] if line]
    return header, rows


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(out_dir, config_echo, started, finished, command=None):
    """Describe every file already present in out_dir (sorted by name)."""
    out_dir = os.fspath(out_dir)
    names = sorted(
        n for n in os.listdir(out_dir)
        if n != "manifest.json" and not n.startswith(".")
        and os.path.isfile(os.path.join(out_dir, n))
    )
    manifest = {
        "tool": "kinex",
        "version": __version__,
        "rng": RNG_ALGORITHM,
        "command": command,
        "config": config_echo,
        "started_utc": started,
        "finished_utc": finished,
        "outputs": [
            {
                "path": n,
                "sha256": sha256_file(os.path.join(out_dir, n)),
                "bytes": os.path.getsize(os.path.join(out_dir, n)),
            }
            for n in names
        ],
    }
    write_json(os.path.join(out_dir, "manifest.json"), manifest)
    return manifest


def utc_now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


# --- sweep-grid JSON config ---------------------------------------------

_COMMON_KEYS = {"model", "n", "t_max", "master_seed", "lambda", "replicates"}
_MODEL_KEYS = {"ex": {"xi", "tp"}, "nx": {"gamma"}, "basic": set()}


def _number_list(doc, key, integer=False):
    if key not in doc:
        raise GridConfigError(key, "missing required key")
    val = doc[key]
    if not isinstance(val, list) or not val:
        raise GridConfigError(key, "must be a non-empty list")
    out = []
    for k, item in enumerate(val):
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise GridConfigError(f"{key}[{k}]", "must be a number")
        if integer and not isinstance(item, int):
            raise GridConfigError(f"{key}[{k}]", "must be an integer")
        out.append(item)
    return tuple(out)


def _scalar_int(doc, key, minimum):
    if key not in doc:
        raise GridConfigError(key, "missing required key")
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise GridConfigError(key, "must be an integer")
    if val < minimum:
        raise GridConfigError(key, f"must be >= {minimum}")
    return val


def parse_grid_config(text) -> SweepGrid:
    """Validated SweepGrid from a JSON document; unknown keys are rejected
    and every error names the offending key or path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GridConfigError("", f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise GridConfigError("", "top-level value must be an object")

    model = doc.get("model")
    if model not in _MODEL_KEYS:
        raise GridConfigError("model", "must be one of 'basic', 'ex', 'nx'")
    allowed = _COMMON_KEYS | _MODEL_KEYS[model]
    for key in doc:
        if key not in allowed:
            raise GridConfigError(key, f"unknown key for model {model!r}")

    grid_kwargs = dict(
        kind=model,
        lambdas=_number_list(doc, "lambda"),
        n_agents=_scalar_int(doc, "n", 2),
        t_max=_scalar_int(doc, "t_max", 1),
        master_seed=_scalar_int(doc, "master_seed", 0),
    )
    if model == "ex":
        grid_kwargs["xis"] = _number_list(doc, "xi")
        grid_kwargs["tps"] = _number_list(doc, "tp", integer=True)
    elif model == "nx":
        grid_kwargs["gammas"] = _number_list(doc, "gamma")
    if "replicates" in doc:
        grid_kwargs["replicates"] = _scalar_int(doc, "replicates", 1)

    try:
        return SweepGrid(**grid_kwargs)
    except Exception as e:
        raise GridConfigError("", str(e)) from e


def serialize_grid_config(grid: SweepGrid) -> str:
    doc = {
        "model": grid.kind,
        "n": grid.n_agents,
        "t_max": grid.t_max,
        "master_seed": grid.master_seed,
        "lambda": list(grid.lambdas),
        "replicates": grid.replicates,
    }
    if grid.kind == "ex":
        doc["xi"] = list(grid.xis)
        doc["tp"] = list(grid.tps)
    elif grid.kind == "nx":
        doc["gamma"] = list(grid.gammas)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
