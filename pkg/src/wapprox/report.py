"""Verdict reports: per-check rows of lhs, rhs and their ratio with pass rules.

Row kinds:

``bounded``
    rows sharing a ``check`` label form a ladder; the ladder passes when the
    largest ratio is at most ``threshold`` times the median ratio.
``upper``
    one-sided bound lhs <= c rhs whose ratio may legitimately decay along the
    ladder (rows are added coarsest first); passes when no ratio exceeds
    ``threshold`` times the first positive ratio.
``growth``
    worst observed constants along a ladder of n; passes when every ratio is
    finite and grows by at most ``growth`` between consecutive rungs.
``inequality``
    passes when lhs <= rhs * (1 + slack) (slack defaults to 0).
``equality``
    passes when |lhs - rhs| <= tol * max(|lhs|, |rhs|).
``close``
    passes when |lhs - rhs| <= tol.
``target``
    passes when |ratio - 1| <= tol.

A row with lhs = rhs = 0 is vacuous and never affects the verdict; rhs = 0
with lhs > 0 has infinite ratio. In ``bounded`` and ``upper`` ladders a row
with lhs = 0 < rhs satisfies every upper bound and is left out of the
median, so quantities that fall below the noise floor cannot fail a ladder.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_THRESHOLD = 10.0
DEFAULT_GROWTH = 1.5
CSV_COLUMNS = ("check", "n", "lhs", "rhs", "ratio", "flag")


@dataclass
class Row:
    check: str
    n: float
    lhs: float
    rhs: float
    kind: str = "bounded"
    tol: float = 0.0
    note: str = ""

    @property
    def vacuous(self) -> bool:
        return self.lhs == 0 and self.rhs == 0

    @property
    def ratio(self) -> float:
        if self.vacuous:
            return float("nan")
        if self.rhs == 0:
            return float("inf")
        return self.lhs / self.rhs

    def ok(self) -> bool:
        if self.vacuous:
            return True
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            return False
        if self.kind == "inequality":
            return self.lhs <= self.rhs * (1.0 + self.tol)
        if self.kind == "equality":
            return abs(self.lhs - self.rhs) <= self.tol * max(abs(self.lhs), abs(self.rhs))
        if self.kind == "close":
            return abs(self.lhs - self.rhs) <= self.tol
        if self.kind == "target":
            return abs(self.ratio - 1.0) <= self.tol
        return math.isfinite(self.ratio)


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


@dataclass
class VerdictReport:
    theorem: str
    inputs: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    threshold: float = DEFAULT_THRESHOLD
    growth: float = DEFAULT_GROWTH
    runtime: float = 0.0

    def add(self, check, n, lhs, rhs, kind="bounded", tol=0.0, note=""):
        self.rows.append(Row(check, n, float(lhs), float(rhs), kind, float(tol), note))

    # --- verdict -----------------------------------------------------------

    def checks(self):
        seen = []
        for r in self.rows:
            if r.check not in seen:
                seen.append(r.check)
        return seen

    def ladder(self, check):
        return [r for r in self.rows if r.check == check]

    def check_verdict(self, check) -> tuple[bool, str]:
        rows = self.ladder(check)
        live = [r for r in rows if not r.vacuous]
        bad = [r for r in rows if not r.ok()]
        if bad:
            return False, f"{len(bad)} row(s) violate the {bad[0].kind} rule"
        if not live:
            return True, "vacuous"
        kind = live[0].kind
        ratios = np.array([r.ratio for r in live])
        if kind in ("bounded", "upper"):
            pos = ratios[ratios > 0]
            if pos.size == 0:
                return True, "all-zero ladder"
            ref = float(np.median(pos)) if kind == "bounded" else float(pos[0])
            mx = float(np.max(pos))
            ok = mx <= self.threshold * ref
            label = "max/median" if kind == "bounded" else "max/first"
            return ok, f"{label} = {mx / ref:.3g}"
        if kind == "growth":
            steps = ratios[1:] / np.where(ratios[:-1] > 0, ratios[:-1], np.inf)
            worst = float(np.max(steps)) if steps.size else 1.0
            ok = worst <= self.growth
            return ok, f"worst rung growth = {worst:.3g}"
        return True, "ok"

    @property
    def passed(self) -> bool:
        return all(self.check_verdict(c)[0] for c in self.checks())

    def _bounded_ratios(self):
        return np.array([r.ratio for r in self.rows if r.kind == "bounded" and not r.vacuous and r.ratio > 0])

    @property
    def max_ratio(self) -> float:
        a = self._bounded_ratios()
        return float(np.max(a)) if a.size else float("nan")

    @property
    def median_ratio(self) -> float:
        a = self._bounded_ratios()
        return float(np.median(a)) if a.size else float("nan")

    def failures(self):
        return [(c, msg) for c in self.checks() for ok, msg in [self.check_verdict(c)] if not ok]

    # --- output ------------------------------------------------------------

    def flag(self, row: Row) -> str:
        if row.vacuous:
            return "vacuous"
        return "ok" if row.ok() else "fail"

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(CSV_COLUMNS)
        for r in self.rows:
            wr.writerow([r.check, _fmt(r.n), _fmt(r.lhs), _fmt(r.rhs), _fmt(r.ratio), self.flag(r)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "inputs": self.inputs,
            "pass": self.passed,
            "max_ratio": _json_num(self.max_ratio),
            "median_ratio": _json_num(self.median_ratio),
            "threshold": self.threshold,
            "checks": {c: {"pass": ok, "detail": msg} for c in self.checks() for ok, msg in [self.check_verdict(c)]},
            "rows": [
                {"check": r.check, "n": r.n, "lhs": _json_num(r.lhs), "rhs": _json_num(r.rhs),
                 "ratio": _json_num(r.ratio), "kind": r.kind, "flag": self.flag(r), "note": r.note}
                for r in self.rows
            ],
            "runtime": self.runtime,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "; ".join(f"{c}: {m}" for c, m in self.failures())
        return f"{self.theorem:<28} {status}  rows={len(self.rows)}" + (f"  [{extra}]" if extra else "")


def _json_num(v):
    v = float(v)
    if math.isnan(v):
        return None
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v
