"""Check reports and their JSON-lines serialization.

Floats are written with 17 significant digits so a report read back
compares equal field by field. Non-finite residuals are written as the
JSON extensions Infinity / NaN, which the standard json reader accepts.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any


def _num(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    if x == int(x) and abs(x) < 1e16:
        return "%.1f" % x
    return "%.17g" % x


def dumps(obj: Any) -> str:
    """Compact, key-sorted JSON with 17-digit floats."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag])
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in sorted(obj.items())) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass(frozen=True)
class CheckReport:
    suite: str
    check: str
    manifold: str
    label: str
    samples: int
    max_residual: float
    tolerance: float
    seed: int
    config: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)
    wall_time: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "max_residual", float(self.max_residual))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        if out["wall_time"] is None:
            del out["wall_time"]
        return out

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "CheckReport":
        d = json.loads(text)
        passed = d.pop("passed")
        rep = cls(**d)
        if rep.passed != passed:
            raise ValueError("pass flag disagrees with residual and tolerance")
        return rep

    def sort_key(self) -> tuple:
        return (self.suite, self.label, self.check)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark} {self.suite}/{self.check} [{self.label}] residual={self.max_residual:.3e} tol={self.tolerance:.1e}"


def write_jsonl(reports, fh) -> None:
    for r in sorted(reports, key=CheckReport.sort_key):
        fh.write(r.to_json() + "\n")
