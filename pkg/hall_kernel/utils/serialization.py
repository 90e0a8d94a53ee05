"""
Deterministic writers for Hall sets, series, β tables and reports
"""

import csv
import io
import json
from typing import Any, Dict, List, Optional

from ..bounds import BetaRow, BoundReport
from ..decomp import LieSeries
from ..hall import HallSet
from ..magma import TreeId


def dumps(payload: Any) -> str:
    """JSON with insertion-ordered keys and no trailing whitespace"""
    return json.dumps(payload, ensure_ascii=False, indent=2)


def hall_to_json(hall_set: HallSet) -> Dict[str, Any]:
    return hall_set.to_json()


def series_to_json(series: LieSeries, a: TreeId, b: TreeId, theta: Optional[int],
                   max_depth: Optional[int] = None) -> Dict[str, Any]:
    hs = series.hall_set
    return {
        "a": hs.format(a),
        "b": hs.format(b),
        "order": hs.spec.name,
        "theta": theta,
        "terms": [{"elem": hs.format(c), "coeff": str(k)} for c, k in series.terms],
        "norm": str(series.norm),
        "maxDepth": max_depth,
    }


def series_to_text(series: LieSeries) -> str:
    if series.is_zero():
        return "0"
    parts = []
    for c, k in series.terms:
        sign = "-" if k < 0 else "+"
        mag = "" if abs(k) == 1 else f"{abs(k)}*"
        parts.append(f"{sign} {mag}{series.hall_set.format(c)}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


BETA_HEADER = ["n", "beta", "closed_form", "match"]


def beta_to_csv(rows: List[BetaRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BETA_HEADER)
    for row in rows:
        closed = "" if row.closed_form is None else str(row.closed_form)
        match = "" if row.match is None else str(row.match).lower()
        writer.writerow([row.n, str(row.beta), closed, match])
    return out.getvalue()


def beta_to_json(rows: List[BetaRow]) -> List[Dict[str, Any]]:
    return [{"n": r.n, "beta": str(r.beta),
             "closed_form": None if r.closed_form is None else str(r.closed_form),
             "match": r.match} for r in rows]


def bound_report_to_json(report: BoundReport, hall_set: HallSet) -> Dict[str, Any]:
    return {
        "order": report.order,
        "bound": report.bound_name,
        "lengthBudget": report.length_budget,
        "pairsChecked": report.pairs_checked,
        "violations": [{"a": hall_set.format(v.a), "b": hall_set.format(v.b),
                        "norm": str(v.norm), "bound": str(v.bound)} for v in report.violations],
        "maxRatio": str(report.max_ratio),
        "ok": report.ok,
    }


def suite_report_to_json(report) -> Dict[str, Any]:
    return {
        "suite": report.suite,
        "ok": report.ok,
        "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in report.checks],
    }


def suite_report_to_text(report) -> str:
    lines = [f"suite {report.suite}: {'PASS' if report.ok else 'FAIL'}"]
    for c in report.checks:
        status = "ok  " if c.ok else "FAIL"
        lines.append(f"  {status} {c.name}" + (f"  ({c.detail})" if c.detail and not c.ok else ""))
    return "\n".join(lines)
