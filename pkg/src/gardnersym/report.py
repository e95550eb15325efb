"""Check reports: human-readable text plus a JSON object with the fields
name, status, mode, residual, anchor, seconds for every entry."""

import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import sympy as sp

from .parser import render

__all__ = ["Entry", "Report", "Timer", "status_of", "render_residual"]

STATUSES = ("PASS", "NUMERIC-PASS", "FAIL")


def status_of(passed, mode):
    if not passed:
        return "FAIL"
    return "NUMERIC-PASS" if mode == "numeric" else "PASS"


def render_residual(value):
    """Residuals are shown in the expression grammar when symbolic."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, float)):
        return "0" if value == 0 else f"{value:.3e}"
    try:
        return render(sp.sympify(value))
    except (ValueError, TypeError):
        return sp.sstr(value)


@dataclass
class Entry:
    name: str
    status: str
    mode: str
    residual: str
    anchor: str
    seconds: float = None
    detail: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status}")
        self.residual = render_residual(self.residual)

    @property
    def passed(self):
        return self.status != "FAIL"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


@dataclass
class Report:
    title: str
    entries: list = field(default_factory=list)
    timings: bool = True

    def add(self, entry):
        if not self.timings:
            entry.seconds = None
        elif entry.seconds is not None:
            entry.seconds = round(entry.seconds, 4)
        self.entries.append(entry)
        return entry

    @property
    def ok(self):
        return all(e.passed for e in self.entries)

    @property
    def exit_code(self):
        return 0 if self.ok else 1

    def to_dict(self):
        keys = ("name", "status", "mode", "residual", "anchor", "seconds")
        rows = []
        for e in self.entries:
            row = {k: getattr(e, k) for k in keys}
            if e.detail:
                row["detail"] = e.detail
            rows.append(row)
        return {"title": self.title, "status": "PASS" if self.ok else "FAIL", "entries": rows}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, sort_keys=False) + "\n"

    def to_text(self):
        lines = [self.title, "=" * len(self.title)]
        width = max((len(e.name) for e in self.entries), default=4)
        for e in self.entries:
            secs = "" if e.seconds is None or (isinstance(e.seconds, float) and math.isnan(e.seconds)) \
                else f"  {e.seconds:.2f}s"
            lines.append(f"{e.status:<12} {e.name:<{width}}  [{e.mode}]  residual: {e.residual or '-'}"
                         f"  ({e.anchor}){secs}")
            if e.detail:
                lines.append(f"{'':12} {e.detail}")
        lines.append(f"overall: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def write(self, base):
        """Writes <base>.txt and <base>.json."""
        base = Path(base)
        base.parent.mkdir(parents=True, exist_ok=True)
        base.with_suffix(".txt").write_text(self.to_text(), encoding="utf-8")
        base.with_suffix(".json").write_text(self.to_json(), encoding="utf-8")
        return base


