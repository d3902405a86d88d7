"""Verification reports and their text / CSV rendering."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

CERTIFIED = "certified"
CSV_HEADER = ["scenario", "hypothesis", "index", "expected", "computed", "pass"]


@dataclass
class Row:
    index: str
    expected: str
    computed: str
    passed: bool


@dataclass
class Report:
    scenario: str
    hypothesis: str = CERTIFIED
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, index, expected, computed, passed=None):
        if passed is None:
            passed = expected == computed
        self.rows.append(Row(str(index), str(expected), str(computed), bool(passed)))

    @property
    def certified(self) -> bool:
        return self.hypothesis == CERTIFIED

    @property
    def not_applicable(self) -> bool:
        return self.hypothesis.startswith("not-applicable")

    @property
    def passed(self) -> bool:
        """Hypotheses certified and every row passes (not-applicable counts as passing)."""
        if self.not_applicable:
            return True
        return self.certified and all(r.passed for r in self.rows)

    @property
    def verdict(self) -> str:
        if self.not_applicable:
            return "n/a"
        return "pass" if self.passed else "fail"


def overall(reports) -> bool:
    return all(r.passed for r in reports)


def emit_report(reports, fmt: str = "text") -> str:
    if isinstance(reports, Report):
        reports = [reports]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in reports:
            if not r.rows and not r.certified:
                w.writerow([r.scenario, r.hypothesis, "", "", "", "n/a" if r.not_applicable else "false"])
            for row in r.rows:
                w.writerow([r.scenario, r.hypothesis, row.index, row.expected, row.computed,
                            "true" if row.passed else "false"])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for r in reports:
        lines.append(f"== {r.scenario} [{r.verdict}]")
        lines.append(f"   hypothesis: {r.hypothesis}")
        for note in r.notes:
            first, *rest = str(note).split("\n")
            lines.append(f"   note: {first}")
            lines += [f"         {x}" for x in rest]
        if r.rows:
            w_idx = max(5, *(len(x.index) for x in r.rows))
            w_exp = max(8, *(len(x.expected) for x in r.rows))
            w_cmp = max(8, *(len(x.computed) for x in r.rows))
            lines.append(f"   {'index':<{w_idx}}  {'expected':>{w_exp}}  {'computed':>{w_cmp}}  pass")
            for x in r.rows:
                mark = "ok" if x.passed else "FAIL"
                lines.append(f"   {x.index:<{w_idx}}  {x.expected:>{w_exp}}  {x.computed:>{w_cmp}}  {mark}")
    if reports:
        lines.append(f"overall: {'pass' if overall(reports) else 'fail'}")
    return "\n".join(lines) + ("\n" if lines else "")
