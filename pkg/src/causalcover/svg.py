"""Static SVG 1.1 diagrams for the cone and punctured-plane scenarios.

Coordinates are written with three decimals so that the output is stable
across runs and diffable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from xml.sax.saxutils import escape

from .cone import sector_angle
from .punctured import LEFT, RIGHT, MEvent, Mid, window
from .report import parse_event

CONE_TARGETS = ("cone",)
PUNCTURED_TARGETS = ("punctured",)


class UnsupportedDiagramError(ValueError):
    """The scenario has no diagram mapping."""


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class _Canvas:
    def __init__(self, width: int, height: int, title: str):
        self.width, self.height = width, height
        self.items = [f"<title>{escape(title)}</title>"]

    def line(self, a, b, cls="", dash=None):
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(
            f'<line x1="{_f(a[0])}" y1="{_f(a[1])}" x2="{_f(b[0])}" y2="{_f(b[1])}" class="{cls}"{d}/>'
        )

    def path(self, pts, cls="", closed=False):
        body = " ".join(f"{'M' if i == 0 else 'L'}{_f(x)},{_f(y)}" for i, (x, y) in enumerate(pts))
        self.items.append(f'<path d="{body}{" Z" if closed else ""}" class="{cls}"/>')

    def dot(self, c, r, cls=""):
        self.items.append(f'<circle cx="{_f(c[0])}" cy="{_f(c[1])}" r="{_f(r)}" class="{cls}"/>')

    def text(self, c, s, cls="label"):
        self.items.append(f'<text x="{_f(c[0])}" y="{_f(c[1])}" class="{cls}">{escape(s)}</text>')

    def render(self, style: str) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
            f"<style>{style}</style>\n"
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


_STYLE = (
    "line,path{fill:none;stroke:#333;stroke-width:1.2}"
    ".side{stroke:#888;stroke-width:1}"
    ".sector{fill:#eef3fb;stroke:#888}"
    ".sigma{stroke:#1f6fd1;stroke-width:2}"
    ".eta{stroke:#c0392b;stroke-width:2}"
    ".gamma{stroke:#6c3483;stroke-width:1.5}"
    ".window{stroke-width:5;stroke-linecap:butt}"
    ".wp{stroke:#1f6fd1}.wq{stroke:#c0392b}"
    ".gap{stroke:#27ae60;stroke-width:9;stroke-opacity:0.35}"
    ".pt{fill:#111}.hole{fill:#fff;stroke:#111;stroke-width:1}"
    ".label{font:13px sans-serif;fill:#111}"
    ".small{font:10px sans-serif;fill:#555}"
)


def cone_diagram(A: float, r_draw: float = 1.45) -> str:
    """Two adjacent developed copies of the sector with the points and curves of the construction."""
    theta = sector_angle(A)
    size, scale = 520, 160.0
    cx, cy = size / 2, size / 2

    def xy(r, psi):
        return cx + scale * r * math.cos(psi), cy - scale * r * math.sin(psi)

    cv = _Canvas(size, size, f"two adjacent sectors, A = {A}, theta = {math.degrees(theta):.3f} deg")
    for k in range(2):
        arc = [xy(r_draw, k * theta + theta * i / 64) for i in range(65)]
        cv.path([(cx, cy)] + arc, "sector", closed=True)
    for k in range(3):
        cv.line((cx, cy), xy(r_draw, k * theta), "side", dash="5,4")
    a, b, b2 = (1.0, 0.0), (1.0, 0.5 * theta), (1.0, 1.5 * theta)
    cv.line(xy(*a), xy(*b), "sigma")
    # unwrapped gamma_1 drawn as an elastic band around the apex, then its limit eta_2 o eta_1
    band = [xy(1.0 - 0.45 * math.sin(math.pi * s / 40), 1.5 * theta * s / 40) for s in range(41)]
    cv.path(band, "gamma")
    cv.line(xy(*a), (cx, cy), "eta")
    cv.line((cx, cy), xy(*b2), "eta")
    cv.dot((cx, cy), 4, "hole")
    for (r, psi), name in ((a, "a"), (b, "b"), (b2, "b'")):
        cv.dot(xy(r, psi), 3.5, "pt")
        cv.text(xy(r + 0.09, psi), name)
    cv.text(xy(0.62, 0.25 * theta), "σ")
    cv.text(xy(0.5, -0.12), "η₁")
    cv.text(xy(0.5, 1.5 * theta + 0.2), "η₂")
    cv.text(xy(0.72, 0.75 * theta), "γ₁", "small")
    cv.text((12, size - 14), f"A = {A}   theta = {math.degrees(theta):.3f} deg   3 theta/2 > pi: "
                             f"{1.5 * theta > math.pi}", "small")
    return cv.render(_STYLE)


def punctured_diagram(p: MEvent, q: MEvent, highlight=(), k_draw: int = 40) -> str:
    """Axis with the punctures, the events, their strict windows and highlighted gaps."""
    width, height, scale = 640, 420, 120.0
    ox, oy = width / 2 + 40, height / 2

    def xy(t, x):
        return ox + scale * float(x), oy - scale * float(t)

    cv = _Canvas(width, height, f"punctured plane, p = {p}, q = {q}")
    lo, hi = -2.6, 2.2
    cv.line(xy(0, lo), xy(0, hi), "side")
    for g in highlight:
        iv = g.interval
        a = lo if iv.lo is None else max(float(iv.lo), lo)
        b = hi if iv.hi is None else min(float(iv.hi), hi)
        cv.line(xy(0, a), xy(0, b), "gap")
    for e, cls in ((p, "wp"), (q, "wq")):
        w = window(e, strict=True)
        cv.line(xy(0, w.lo), xy(0, w.hi), f"window {cls}")
        cv.line(xy(e.t, e.x), xy(0, w.lo), "side", dash="3,3")
        cv.line(xy(e.t, e.x), xy(0, w.hi), "side", dash="3,3")
    for k in range(1, k_draw + 1):
        cv.dot(xy(0, Fraction(-1, k)), max(0.8, 3.5 / math.sqrt(k)), "hole")
    cv.dot(xy(0, 0), 3.5, "hole")
    cv.text((xy(0, 0)[0] + 4, xy(0, 0)[1] - 8), "r")
    for k in (1, 2, 3):
        x, y = xy(0, Fraction(-1, k))
        cv.text((x - 6, y + 18), f"r{k}", "small")
    for e, name in ((p, "p"), (q, "q")):
        cv.dot(xy(e.t, e.x), 3.5, "pt")
        x, y = xy(e.t, e.x)
        cv.text((x + 6, y - 6), name)
    cv.text((12, height - 14), "t = 0 axis horizontal; time upward; strict windows of p (blue) and q (red)",
            "small")
    return cv.render(_STYLE)


def emit_svg(scenario, report: dict) -> str:
    target = report["scenario"]["target"]
    params = report["scenario"]["params"]
    if target in CONE_TARGETS:
        return cone_diagram(float(params["A"]))
    if target in PUNCTURED_TARGETS:
        p, q = parse_event(params["p"]), parse_event(params["q"])
        names = set(report["verdicts"]["future_closure_sheets"]["value"])
        gaps = [g for g in [RIGHT, LEFT] + [Mid(k) for k in range(1, 41)] if str(g) in names]
        return punctured_diagram(p, q, gaps)
    raise UnsupportedDiagramError(f"scenario {scenario.name!r} has no diagram")
