"""Coverage scan over a rectangle of lattice points, with CSV and SVG export."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from ..errors import Geo4Error
from .plan import ExternalReference, Open, Realized, plan
from .region import LatticePoint, in_region

CSV_HEADER = "m,n,status,recipe-id"
STATUS_LABEL = {"Realized": "realized", "ExternalReference": "external", "Open": "open"}


@dataclass(frozen=True)
class Bounds:
    m0: int
    m1: int
    n0: int
    n1: int

    def __post_init__(self):
        if self.m0 > self.m1 or self.n0 > self.n1:
            raise ValueError(f"empty or reversed bounds {self}")

    @classmethod
    def parse(cls, text: str) -> "Bounds":
        """'a:b' for the square [a,b]^2, or 'a:b,c:d' for [a,b] x [c,d]."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) == 1:
            parts = parts * 2
        if len(parts) != 2:
            raise ValueError(f"malformed bounds {text!r}")
        out = []
        for p in parts:
            lo, sep, hi = p.partition(":")
            if not sep:
                raise ValueError(f"malformed bounds {text!r}")
            out += [int(lo), int(hi)]
        return cls(*out)

    def points(self) -> list[LatticePoint]:
        return [LatticePoint(m, n) for m in range(self.m0, self.m1 + 1) for n in range(self.n0, self.n1 + 1)
                if in_region((m, n))]


@dataclass(frozen=True)
class Entry:
    point: LatticePoint
    status: str
    recipe_id: str = ""
    stage: str = ""
    citation: str = ""
    error: str = ""


@dataclass
class CoverageReport:
    bounds: Bounds
    entries: list[Entry] = field(default_factory=list)

    @property
    def realized(self) -> list[Entry]:
        return [e for e in self.entries if e.status == "Realized"]

    @property
    def external(self) -> list[Entry]:
        return [e for e in self.entries if e.status == "ExternalReference"]

    @property
    def open(self) -> list[LatticePoint]:
        return [e.point for e in self.entries if e.status == "Open"]

    @property
    def markers(self) -> list[LatticePoint]:
        """Points drawn as open circles: Open points and those filled only by the final constructions."""
        return [e.point for e in self.entries if e.status == "Open" or e.stage == "final"]

    @property
    def invalid(self) -> list[Entry]:
        return [e for e in self.entries if e.error]

    def counts(self) -> dict:
        return {"points": len(self.entries), "realized": len(self.realized), "external": len(self.external),
                "open": len(self.open), "markers": len(self.markers), "invalid": len(self.invalid)}

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for e in self.entries:
            lines.append(f"{e.point.m},{e.point.n},{STATUS_LABEL[e.status]},{e.recipe_id}")
        return "\n".join(lines) + "\n"

    def to_json(self, fixture_hash: str = "") -> dict:
        return {"bounds": [self.bounds.m0, self.bounds.m1, self.bounds.n0, self.bounds.n1],
                "fixture_hash": fixture_hash, "counts": self.counts(),
                "markers": [[p.m, p.n] for p in self.markers],
                "open": [[p.m, p.n] for p in self.open],
                "invalid": [{"m": e.point.m, "n": e.point.n, "error": e.error} for e in self.invalid]}

    def to_svg(self, fixture_hash: str = "") -> str:
        return render_svg(self, fixture_hash)


def _entry(p: LatticePoint, check: bool) -> Entry:
    r = plan(p)
    if isinstance(r, Realized):
        err = ""
        if check:
            from .validate import validate_full
            try:
                v = validate_full(r.recipe)
                if not v.descriptor.irreducible.yes:
                    err = "irreducibility not established"
            except Geo4Error as exc:
                err = f"{type(exc).__name__}: {exc}"
        return Entry(p, r.status, r.recipe_id, r.stage, error=err)
    if isinstance(r, ExternalReference):
        return Entry(p, r.status, citation=r.citation)
    assert isinstance(r, Open)
    return Entry(p, r.status)


def _chunk(args) -> list[Entry]:
    pts, check = args
    return [_entry(LatticePoint(*p), check) for p in pts]


def scan(bounds: Bounds, workers: Optional[int] = None, validate: bool = False) -> CoverageReport:
    """Plan every in-region point of the box. Output order is (m, n) regardless of workers."""
    pts = bounds.points()
    if workers is None:
        workers = min(os.cpu_count() or 1, 8) if len(pts) > 2000 else 1
    if workers <= 1 or len(pts) < 2 * workers:
        entries = _chunk((pts, validate))
    else:
        size = -(-len(pts) // (4 * workers))
        chunks = [(pts[i:i + size], validate) for i in range(0, len(pts), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            entries = [e for part in ex.map(_chunk, chunks) for e in part]
    entries.sort(key=lambda e: e.point)
    return CoverageReport(bounds, entries)


# ---------------------------------------------------------------------------
# SVG


def render_svg(rep: CoverageReport, fixture_hash: str = "") -> str:
    b = rep.bounds
    w, h, pad = 640, 640, 50
    x0, x1, y0, y1 = b.m0 - 0.5, b.m1 + 0.5, b.n0 - 0.5, b.n1 + 0.5

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (w - 2 * pad)

    def sy(y):
        return h - pad - (y - y0) / (y1 - y0) * (h - 2 * pad)

    def f(v):
        return f"{v:.2f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
           f"<metadata>fixture-hash {fixture_hash}</metadata>" if fixture_hash else "",
           '<rect width="100%" height="100%" fill="white"/>',
           f'<defs><clipPath id="plot"><rect x="{pad}" y="{pad}" width="{w - 2 * pad}" height="{h - 2 * pad}"/>'
           "</clipPath></defs>",
           f'<rect x="{pad}" y="{pad}" width="{w - 2 * pad}" height="{h - 2 * pad}" fill="none" stroke="black"/>']
    # axes ticks
    step = max(1, (b.m1 - b.m0) // 15 + 1)
    for m in range(b.m0, b.m1 + 1, step):
        out.append(f'<text x="{f(sx(m))}" y="{h - pad + 16}" font-size="10" text-anchor="middle">{m}</text>')
    step = max(1, (b.n1 - b.n0) // 15 + 1)
    for n in range(b.n0, b.n1 + 1, step):
        out.append(f'<text x="{pad - 6}" y="{f(sy(n) + 3)}" font-size="10" text-anchor="end">{n}</text>')
    out.append(f'<text x="{w // 2}" y="{h - 12}" font-size="12" text-anchor="middle">b2+ = m</text>')
    out.append(f'<text x="14" y="{h // 2}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 14 {h // 2})">b2- = n</text>')
    # boundary lines n = 5m + 4 and n = (m - 4)/5
    for fn in (lambda x: 5 * x + 4, lambda x: (x - 4) / 5):
        out.append(f'<line x1="{f(sx(x0))}" y1="{f(sy(fn(x0)))}" x2="{f(sx(x1))}" y2="{f(sy(fn(x1)))}" '
                   'stroke="red" stroke-width="1.5" clip-path="url(#plot)"/>')
    marks = set(rep.markers)
    for e in rep.entries:
        if e.point in marks:
            continue
        color = "#555" if e.status == "Realized" else "#3366cc"
        out.append(f'<circle cx="{f(sx(e.point.m))}" cy="{f(sy(e.point.n))}" r="2" fill="{color}"/>')
    for p in rep.markers:
        out.append(f'<circle cx="{f(sx(p.m))}" cy="{f(sy(p.n))}" r="5" fill="white" stroke="black" '
                   'stroke-width="1.2"/>')
    ly = pad + 14
    legend = [("realized", '<circle cx="{x}" cy="{y}" r="2" fill="#555"/>'),
              ("external reference", '<circle cx="{x}" cy="{y}" r="2" fill="#3366cc"/>'),
              (f"missing ({len(marks)})", '<circle cx="{x}" cy="{y}" r="5" fill="white" stroke="black"/>'),
              ("n = 5m + 4, n = (m - 4)/5", '<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="red"/>')]
    for i, (label, shape) in enumerate(legend):
        y = ly + 16 * i
        x = w - pad - 150
        out.append(shape.format(x=x, y=y, x0=x - 6, x1=x + 6))
        out.append(f'<text x="{x + 12}" y="{y + 4}" font-size="11">{label}</text>')
    out.append("</svg>")
    return "\n".join(s for s in out if s) + "\n"
