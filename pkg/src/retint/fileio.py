"""Reading and writing series, intervals and result tables.

Formats:

* series: raw little-endian float64 (``.bin``) or one-column CSV with header
  ``value``; metadata in a ``<file>.json`` sidecar ``{n, gamma, seed, kind}``;
* intervals: CSV ``r,R`` plus a JSON summary;
* tables: CSV with a header row; JSON for parameter sets.

Floats are written with ``repr`` so files are byte-reproducible.
"""
from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ParameterError
from .generator import TimeSeries


def sidecar(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def atomic_write_text(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def write_json(path, obj) -> None:
    atomic_write_text(path, json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n")


def read_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return "" if not math.isfinite(v) else repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def write_table(path, columns: dict) -> None:
    names = list(columns)
    cols = [np.asarray(columns[k]) for k in names]
    lines = [",".join(names)]
    for row in zip(*cols):
        lines.append(",".join(_fmt(v.item() if hasattr(v, "item") else v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_table(path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    head, body = rows[0], rows[1:]
    out = {}
    for j, name in enumerate(head):
        out[name] = np.array([float(r[j]) if r[j] != "" else math.nan for r in body])
    return out


def save_series(series: TimeSeries, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix == ".csv":
        write_table(path, {"value": series.values})
    else:
        tmp = path.with_name(f".{path.name}.tmp")
        series.values.astype("<f8").tofile(tmp)
        os.replace(tmp, path)
    write_json(sidecar(path), series.metadata())


def load_series(path) -> TimeSeries:
    path = Path(path)
    if not path.exists():
        raise ParameterError(f"series file not found: {path}")
    if path.suffix == ".csv":
        values = read_table(path)["value"]
    else:
        values = np.fromfile(path, dtype="<f8")
    meta = read_json(sidecar(path)) if sidecar(path).exists() else {}
    gamma = meta.get("gamma")
    return TimeSeries(
        values,
        float("nan") if gamma is None else float(gamma),
        int(meta.get("seed", 0)),
        meta.get("kind", "fourier_filtered"),
    )
