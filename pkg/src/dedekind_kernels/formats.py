"""Deterministic CSV / JSON / SVG renderings of kernel scans.

Nothing here depends on how a scan was run (thread count, timing), so equal
point sets always give byte-equal files.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from . import __version__
from .kernel import KernelPoint, KernelScanResult

CSV_COLUMNS = ("q1", "q2", "chi1", "chi2", "a", "c", "subgroup", "predicted_by")
SVG_SIZE = 800
_MARGIN = 70


@dataclass
class ScanTable:
    """The flat-file view of a scan: what CSV and JSON carry."""

    q1: int
    q2: int
    chi1: str
    chi2: str
    c_max: int
    subgroup: str
    seed: int = 0
    points: list[KernelPoint] = field(default_factory=list)

    @classmethod
    def from_result(cls, result: KernelScanResult, seed: int = 0) -> "ScanTable":
        chi1, chi2 = result.chi_labels
        return cls(result.q1, result.q2, chi1, chi2, result.c_max, result.subgroup, seed,
                   sorted(result.points, key=lambda p: (p.c, p.a)))

    @property
    def point_set(self) -> set[tuple[int, int]]:
        return {(p.a, p.c) for p in self.points}

    @property
    def title(self) -> str:
        if self.chi1 == "*":
            name = f"K_{{{self.q1},{self.q2}}}"
        else:
            name = f"K_{{{self.chi1},{self.chi2}}}"
        return f"{name}, {self.subgroup}, 1 <= c <= {self.c_max}"


def _header_lines(t: ScanTable) -> list[str]:
    return [
        f"# dedekind-kernels {__version__}",
        f"# seed={t.seed} c_max={t.c_max}",
    ]


def to_csv(t: ScanTable) -> str:
    buf = io.StringIO()
    for line in _header_lines(t):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for p in sorted(t.points, key=lambda p: (p.c, p.a)):
        w.writerow([t.q1, t.q2, t.chi1, t.chi2, p.a, p.c, t.subgroup, p.predicted_by or "none"])
    return buf.getvalue()


def from_csv(text: str) -> ScanTable:
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            for tok in line[1:].split():
                if "=" in tok:
                    k, v = tok.split("=", 1)
                    meta[k] = v
        elif line.strip():
            body.append(line)
    rows = list(csv.DictReader(body))
    if body and tuple(csv.reader(body[:1]).__next__()) != CSV_COLUMNS:
        raise ValueError("unexpected CSV columns")
    if "c_max" not in meta:
        raise ValueError("CSV header lacks c_max")
    first = rows[0] if rows else {}
    points = []
    for r in rows:
        tag = None if r["predicted_by"] == "none" else r["predicted_by"]
        a, c = int(r["a"]), int(r["c"])
        Q = int(r["q1"]) * int(r["q2"])
        points.append(KernelPoint(a, c, a % Q == 1 % Q, tag))
    return ScanTable(
        int(first.get("q1", meta.get("q1", 0))),
        int(first.get("q2", meta.get("q2", 0))),
        first.get("chi1", "*"),
        first.get("chi2", "*"),
        int(meta["c_max"]),
        first.get("subgroup", meta.get("subgroup", "gamma0")),
        int(meta.get("seed", 0)),
        points,
    )


def to_json(t: ScanTable, extra: dict | None = None) -> str:
    doc = {
        "tool": "dedekind-kernels",
        "version": __version__,
        "seed": t.seed,
        "c_max": t.c_max,
        "q1": t.q1,
        "q2": t.q2,
        "chi1": t.chi1,
        "chi2": t.chi2,
        "subgroup": t.subgroup,
        "points": [
            {"a": p.a, "c": p.c, "predicted_by": p.predicted_by or "none"}
            for p in sorted(t.points, key=lambda p: (p.c, p.a))
        ],
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> ScanTable:
    doc = json.loads(text)
    Q = doc["q1"] * doc["q2"]
    points = [
        KernelPoint(p["a"], p["c"], p["a"] % Q == 1 % Q,
                    None if p["predicted_by"] == "none" else p["predicted_by"])
        for p in doc["points"]
    ]
    return ScanTable(doc["q1"], doc["q2"], doc["chi1"], doc["chi2"], doc["c_max"],
                     doc["subgroup"], doc.get("seed", 0), points)


def _ticks(hi: int, count: int = 5) -> list[int]:
    if hi <= 0:
        return [0]
    step = max(1, -(-hi // count))
    return list(range(0, hi + 1, step))


def to_svg(t: ScanTable) -> str:
    """800x800 scatter, a on the horizontal axis, c on the vertical (upwards)."""
    size, m = SVG_SIZE, _MARGIN
    span = size - 2 * m
    hi = max(t.c_max, 1)

    def x(a):
        return m + span * a / hi

    def y(c):
        return size - m - span * c / hi

    r = 3.0 if len(t.points) < 400 else 1.5
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        f'<text x="{size / 2:.2f}" y="{m / 2:.2f}" font-family="sans-serif" font-size="18" '
        f'text-anchor="middle">{_escape(t.title)}</text>',
        '<g stroke="black" stroke-width="1">',
        f'<line x1="{m}" y1="{size - m}" x2="{size - m}" y2="{size - m}"/>',
        f'<line x1="{m}" y1="{size - m}" x2="{m}" y2="{m}"/>',
    ]
    for v in _ticks(hi):
        out.append(f'<line x1="{x(v):.2f}" y1="{size - m}" x2="{x(v):.2f}" y2="{size - m + 6}"/>')
        out.append(f'<line x1="{m - 6}" y1="{y(v):.2f}" x2="{m}" y2="{y(v):.2f}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="12">')
    for v in _ticks(hi):
        out.append(f'<text x="{x(v):.2f}" y="{size - m + 20}" text-anchor="middle">{v}</text>')
        out.append(f'<text x="{m - 10}" y="{y(v) + 4:.2f}" text-anchor="end">{v}</text>')
    out.append("</g>")
    out.append(f'<text x="{size / 2:.2f}" y="{size - 20}" font-family="sans-serif" font-size="14" '
               f'text-anchor="middle">a</text>')
    out.append(f'<text x="20" y="{size / 2:.2f}" font-family="sans-serif" font-size="14" '
               f'text-anchor="middle" transform="rotate(-90 20 {size / 2:.2f})">c</text>')
    out.append('<g fill="steelblue" stroke="none">')
    for p in sorted(t.points, key=lambda p: (p.c, p.a)):
        out.append(f'<circle cx="{x(p.a):.2f}" cy="{y(p.c):.2f}" r="{r}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def read_table(path: str) -> ScanTable:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return from_json(text)
    return from_csv(text)
