"""Minimal deterministic SVG 1.1 writer.

Geometry is given in math coordinates (y up) and flipped on output. The
document is byte-stable: attributes are written in insertion order,
numbers with 12 significant digits, and nothing time- or host-dependent is
emitted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from rp2.errors import NumericError

CANVAS = 1000
PADDING = 0.05


def fmt(x: float) -> str:
    if not math.isfinite(x):
        raise NumericError("refusing to serialize non-finite coordinate %r" % x)
    s = "%.12g" % x
    return "0" if s == "-0" else s


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


@dataclass
class _Item:
    kind: str
    points: np.ndarray
    attrs: list
    text: str = ""


@dataclass
class SvgDoc:
    """Ordered drawing primitives; stroke widths are fractions of the extent."""
    title: str = ""
    width: int = CANVAS
    height: int = CANVAS
    items: list = field(default_factory=list)

    def polyline(self, pts, closed: bool = False, stroke: str = "black",
                 width: float = 1.0, fill: str = "none", dash: str | None = None):
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        attrs = [("fill", fill), ("stroke", stroke), ("stroke-width", width)]
        if dash:
            attrs.append(("stroke-dasharray", dash))
        self.items.append(_Item("polygon" if closed else "polyline", pts, attrs))

    def dot(self, xy, r: float = 1.0, fill: str = "black"):
        self.items.append(_Item("circle", np.asarray(xy, float).reshape(1, 2),
                                [("r", r), ("fill", fill)]))

    def text(self, xy, s: str, size: float = 1.0, fill: str = "black"):
        self.items.append(_Item("text", np.asarray(xy, float).reshape(1, 2),
                                [("font-size", size), ("fill", fill)], s))

    def bounds(self):
        pts = np.vstack([it.points for it in self.items if it.kind != "text"])
        if not np.all(np.isfinite(pts)):
            raise NumericError("non-finite geometry in SVG document")
        return pts.min(axis=0), pts.max(axis=0)

    def render(self) -> str:
        lo, hi = self.bounds()
        extent = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
        pad = PADDING * extent
        x0, y0 = lo[0] - pad, -hi[1] - pad
        w, h = hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad
        unit = extent / 500.0
        out = ['<?xml version="1.0" encoding="UTF-8"?>',
               '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
               'width="%d" height="%d" viewBox="%s %s %s %s">'
               % (self.width, self.height, fmt(x0), fmt(y0), fmt(w), fmt(h))]
        if self.title:
            out.append("<title>%s</title>" % _escape(self.title))
        out.append('<g stroke-linejoin="round" stroke-linecap="round">')
        for it in self.items:
            attrs = []
            for k, v in it.attrs:
                if k in ("stroke-width", "r", "font-size"):
                    v = fmt(v * unit)
                attrs.append('%s="%s"' % (k, v))
            if it.kind in ("polyline", "polygon"):
                pts = " ".join("%s,%s" % (fmt(x), fmt(-y)) for x, y in it.points)
                out.append('<%s points="%s" %s/>' % (it.kind, pts, " ".join(attrs)))
            elif it.kind == "circle":
                x, y = it.points[0]
                out.append('<circle cx="%s" cy="%s" %s/>' % (fmt(x), fmt(-y), " ".join(attrs)))
            else:
                x, y = it.points[0]
                out.append('<text x="%s" y="%s" %s>%s</text>'
                           % (fmt(x), fmt(-y), " ".join(attrs), _escape(it.text)))
        out.append("</g>")
        out.append("</svg>")
        return "\n".join(out) + "\n"
