"""Verification reports and the JSON/CSV export envelope."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

SCHEMA_VERSION = "1"
VECTOR_FIELDS = ["t", "x", "y", "z"]


@dataclass
class CheckRecord:
    name: str
    expected: object
    actual: object
    tolerance: float | None
    passed: bool


@dataclass
class Report:
    version: str
    command: list
    records: list = field(default_factory=list)

    def check(self, name, expected, actual, tolerance=None, passed=None) -> bool:
        """Record a check; numeric pairs compare relatively when no verdict is given."""
        if passed is None:
            if tolerance is None:
                passed = expected == actual
            else:
                scale = max(abs(float(expected)), 1e-300)
                passed = abs(float(actual) - float(expected)) <= tolerance * scale
        self.records.append(CheckRecord(name, expected, actual, tolerance, bool(passed)))
        return bool(passed)

    @property
    def n_pass(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def n_fail(self) -> int:
        return len(self.records) - self.n_pass

    @property
    def ok(self) -> bool:
        return self.n_fail == 0

    def as_dict(self) -> dict:
        return {
            "records": [dict(r.__dict__) for r in self.records],
            "summary": {"total": len(self.records), "pass": self.n_pass, "fail": self.n_fail},
        }


def flat(array) -> dict:
    """Geometry array as {fields, data}: a flat row-major list with its column names."""
    a = np.asarray(array, dtype=float)
    cols = VECTOR_FIELDS if a.ndim == 2 and a.shape[1] == 4 else [f"c{i}" for i in range(a.shape[-1])]
    return {"fields": cols, "data": a.ravel().tolist()}


def unflat(obj) -> np.ndarray:
    return np.asarray(obj["data"], dtype=float).reshape(-1, len(obj["fields"]))


def _plain(x):
    """Convert numpy scalars/arrays and tuples into JSON-ready Python values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def envelope(version: str, command: list, **parts) -> dict:
    meta = {
        "schema_version": SCHEMA_VERSION,
        "version": version,
        "command": command,
        "generated": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    out = {"meta": meta}
    for k in ("shape", "block", "lattice", "report"):
        if parts.get(k) is not None:
            out[k] = parts[k]
    return _plain(out)


def dumps_json(env: dict) -> str:
    # floats use repr, the shortest string that round-trips exactly
    return json.dumps(env, indent=1, allow_nan=False) + "\n"


def dumps_csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in r])
    return buf.getvalue()
