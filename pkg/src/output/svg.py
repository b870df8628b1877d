"""Minimal static SVG 1.1 emitter: polylines and line segments.

Output depends only on the inputs (fixed number formatting, no timestamps
or ids), so the same run always produces the same bytes.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

Point = Tuple[float, float]


@dataclass
class Figure:
    """Data-space drawing mapped onto a fixed-size canvas."""
    width: int = 600
    height: int = 600
    margin: int = 20
    polylines: List[Tuple[np.ndarray, str, float]] = field(default_factory=list)
    segments: List[Tuple[Point, Point, str, float]] = field(default_factory=list)
    title: str = ""

    def polyline(self, xy, stroke: str = "#c00000", width: float = 1.5):
        pts = np.asarray(xy, dtype=float).reshape(-1, 2)
        pts = pts[np.all(np.isfinite(pts), axis=1)]
        if len(pts) >= 2:
            self.polylines.append((pts, stroke, width))

    def segment(self, a: Point, b: Point, stroke: str = "#1f4fbf", width: float = 0.6):
        if all(np.isfinite(v) for v in (*a, *b)):
            self.segments.append((a, b, stroke, width))

    def whiskers(self, xy, angles, length: float = 1.0, every: int = 1, stroke: str = "#1f4fbf"):
        """Unit-direction segments from each point along angle θ."""
        pts = np.asarray(xy, dtype=float).reshape(-1, 2)
        for k in range(0, len(pts), max(1, every)):
            x, y = pts[k]
            theta = float(angles[k])
            tip = (x + length * np.cos(theta), y + length * np.sin(theta))
            self.segment((x, y), tip, stroke)

    def _bounds(self):
        chunks = [p for p, _, _ in self.polylines]
        chunks += [np.array([a, b]) for a, b, _, _ in self.segments]
        if not chunks:
            return 0.0, 1.0, 0.0, 1.0
        allpts = np.vstack(chunks)
        x0, y0 = allpts.min(axis=0)
        x1, y1 = allpts.max(axis=0)
        span = max(x1 - x0, y1 - y0, 1e-12)
        cx, cy = (x0 + x1) / 2.0, (y0 + y1) / 2.0
        return cx - span / 2.0, cx + span / 2.0, cy - span / 2.0, cy + span / 2.0

    def render(self) -> str:
        x0, x1, y0, y1 = self._bounds()
        inner_w = self.width - 2 * self.margin
        inner_h = self.height - 2 * self.margin
        scale = min(inner_w / (x1 - x0), inner_h / (y1 - y0))

        def fmt(px: float, py: float) -> str:
            sx = self.margin + (px - x0) * scale
            sy = self.height - self.margin - (py - y0) * scale
            return f"{sx:.3f},{sy:.3f}"

        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">',
        ]
        if self.title:
            out.append(f"<title>{_escape(self.title)}</title>")
        out.append(f'<rect width="{self.width}" height="{self.height}" fill="white"/>')
        for a, b, stroke, width in self.segments:
            ax, ay = fmt(*a).split(",")
            bx, by = fmt(*b).split(",")
            out.append(
                f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                f'stroke="{stroke}" stroke-width="{width:g}"/>'
            )
        for pts, stroke, width in self.polylines:
            coords = " ".join(fmt(px, py) for px, py in pts)
            out.append(
                f'<polyline points="{coords}" fill="none" '
                f'stroke="{stroke}" stroke-width="{width:g}"/>'
            )
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path: Union[str, Path]):
        Path(path).write_text(self.render(), encoding="utf-8", newline="\n")


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def complex_points(z: Sequence[complex]) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return np.column_stack([z.real, z.imag])
