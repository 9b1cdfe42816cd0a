"""Minimal static SVG line charts (no external renderer)."""

from __future__ import annotations

import math
from typing import Sequence

WIDTH, HEIGHT, PAD = 640, 400, 50
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def line_chart(x: Sequence[float], series: dict[str, Sequence[float]], title: str = "") -> str:
    finite = [v for ys in series.values() for v in ys if math.isfinite(v)]
    x0, x1 = min(x), max(x)
    y0, y1 = (min(finite), max(finite)) if finite else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1

    def px(v):
        return PAD + (v - x0) / (x1 - x0) * (WIDTH - 2 * PAD)

    def py(v):
        return HEIGHT - PAD - (v - y0) / (y1 - y0) * (HEIGHT - 2 * PAD)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{PAD}" y1="{HEIGHT - PAD}" x2="{WIDTH - PAD}" y2="{HEIGHT - PAD}" stroke="black"/>',
        f'<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{HEIGHT - PAD}" stroke="black"/>',
        f'<text x="{WIDTH / 2}" y="{PAD / 2}" text-anchor="middle" font-size="14">{title}</text>',
        f'<text x="{PAD}" y="{HEIGHT - PAD + 15}" font-size="10">{x0:.3g}</text>',
        f'<text x="{WIDTH - PAD}" y="{HEIGHT - PAD + 15}" font-size="10" text-anchor="end">{x1:.3g}</text>',
        f'<text x="{PAD - 5}" y="{HEIGHT - PAD}" font-size="10" text-anchor="end">{y0:.3g}</text>',
        f'<text x="{PAD - 5}" y="{PAD + 10}" font-size="10" text-anchor="end">{y1:.3g}</text>',
    ]
    for i, (name, ys) in enumerate(series.items()):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, ys) if math.isfinite(b))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        parts.append(f'<text x="{WIDTH - PAD}" y="{PAD + 15 * (i + 1)}" font-size="12" fill="{color}" text-anchor="end">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
