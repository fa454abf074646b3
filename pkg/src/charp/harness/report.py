"""Deterministic JSON / CSV / text serialization of harness reports, plus
stability figures."""

from __future__ import annotations

import csv
import io
import json
import os
from typing import Iterable, List, Optional, Sequence

from .. import __version__
from .experiments import DeformReport, StabilityReport

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "text")


def header(kind: str, **params) -> dict:
    return {"schema": "charp-report", "schema_version": SCHEMA_VERSION, "tool_version": __version__,
            "kind": kind, "params": params}


def _records(report) -> List[dict]:
    if report is None:
        return []
    if isinstance(report, dict):
        return [report]
    if hasattr(report, "as_dict"):
        return [report.as_dict()]
    return [r if isinstance(r, dict) else r.as_dict() for r in report]


def to_json(report, kind: str = "report", **params) -> str:
    doc = {"header": header(kind, **params), "records": _records(report)}
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


STABILITY_COLUMNS = ["ring", "p", "e", "N", "eps", "fpure", "shortcut", "strengthened", "cross_ok",
                     "monotone_anomaly"]
DEFORM_COLUMNS = ["ring", "p", "status", "quotient_fpure", "ring_fpure", "index_ring", "index_quotient",
                  "divides", "hypotheses_asserted"]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def to_csv(report) -> str:
    buf = io.StringIO()
    recs = list(report) if isinstance(report, (list, tuple)) else ([] if report is None else [report])
    stab = [r for r in recs if isinstance(r, StabilityReport)]
    deform = [r for r in recs if isinstance(r, DeformReport)]
    w = csv.writer(buf, lineterminator="\n")
    if stab or not deform:
        w.writerow(STABILITY_COLUMNS)
        for r in stab:
            anomalies = set(r.anomalies)
            for lv in r.levels:
                for s in lv.samples:
                    w.writerow([_cell(x) for x in (r.name, r.p, r.e, lv.N, s.eps, s.fpure, s.shortcut,
                                                   s.strengthened, s.cross_ok, lv.N in anomalies)])
    if deform:
        if stab:
            w.writerow([])
        w.writerow(DEFORM_COLUMNS)
        for r in deform:
            w.writerow([_cell(x) for x in (r.name, r.p, r.status, r.quotient_fpure, r.ring_fpure,
                                           r.index_ring, r.index_quotient, r.divides, r.hypotheses_asserted)])
    return buf.getvalue()


def to_text(report) -> str:
    lines = []
    for r in (report if isinstance(report, (list, tuple)) else ([] if report is None else [report])):
        if isinstance(r, DeformReport):
            lines.append(f"{r.name} (p={r.p}): {r.status}; R/(f) F-pure={r.quotient_fpure}, "
                         f"R F-pure={r.ring_fpure}, index {r.index_ring} over {r.index_quotient}")
            if r.banner:
                lines.append(f"  ! {r.banner}")
            for m in r.expected_mismatches:
                lines.append(f"  expected-value mismatch: {m}")
        elif isinstance(r, StabilityReport):
            lines.append(f"{r.name} (p={r.p}, e={r.e}, f={r.f}, seed={r.seed}): "
                         f"minimal sampled stable N = {r.minimal_stable_N}, stable from {r.stable_from}")
            for lv in r.levels:
                lines.append(f"  N={lv.N}: {lv.passes}/{len(lv.samples)} F-pure"
                             + (f"; failures {', '.join(lv.failures)}" if lv.failures else ""))
            if r.anomalies:
                lines.append(f"  monotonicity anomaly at N = {r.anomalies}")
            if r.shortcut_applicable:
                lines.append(f"  shortcut checks: {len(r.shortcut_records())}, unequal: {len(r.shortcut_failures)}")
            if r.note:
                lines.append(f"  note: {r.note}")
        elif isinstance(r, dict):
            lines.append(json.dumps(r, sort_keys=True))
        else:
            lines.append(str(r))
    return "\n".join(lines) + ("\n" if lines else "")


def render(report, fmt: str, kind: str = "report", **params) -> str:
    if fmt == "json":
        return to_json(report, kind, **params)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(report, fmt: str, path: Optional[str] = None, kind: str = "report", **params) -> str:
    """Render ``report`` and write it to ``path`` when given; returns the text."""
    text = render(report, fmt, kind, **params)
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def plot_stability(reports: Sequence[StabilityReport], path: str) -> str:
    """Fraction of sampled perturbations that stay F-pure, per ``N``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for r in reports:
        xs = [lv.N for lv in r.levels]
        ys = [lv.passes / len(lv.samples) if lv.samples else 1.0 for lv in r.levels]
        ax.plot(xs, ys, marker="o", label=f"{r.name} (p={r.p})")
    ax.set_xlabel("N  (eps in m^N)")
    ax.set_ylabel("F-pure fraction of samples")
    ax.set_ylim(-0.05, 1.05)
    ax.grid(True, alpha=0.3)
    if reports:
        ax.legend(fontsize=8)
    fig.tight_layout()
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path
