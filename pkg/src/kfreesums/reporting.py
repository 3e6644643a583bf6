"""Deterministic CSV / JSON / SVG writers shared by reports and the CLI.

Output bytes are a contract: comma-separated CSV with a header row and LF
endings, integers unquoted, reals printed to 6 significant digits, and
JSON dumped with sorted keys.  Identical inputs must produce identical
files across runs and thread counts.
"""

from __future__ import annotations

import json
import math
import numbers
from pathlib import Path
from xml.sax.saxutils import escape


def fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, numbers.Integral):
        return str(int(v))
    if isinstance(v, numbers.Real):
        return f"{float(v):.6g}"
    return str(v)


def write_csv(path, header: list[str], rows) -> None:
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt_value(v) for v in row))
    path.write_text("\n".join(lines) + "\n", newline="\n")


def write_json(path, payload) -> None:
    Path(path).write_text(canonical_json(payload) + "\n", newline="\n")


def canonical_json(payload) -> str:
    return json.dumps(_round_floats(payload), sort_keys=True, indent=2)


def _round_floats(obj):
    # 6 significant digits, matching the CSV real format
    if isinstance(obj, float):
        return float(f"{obj:.6g}") if math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def write_polyline_svg(
    path,
    x_log10: list[float],
    curves: list[tuple[str, list[float]]],
    title: str,
    width: int = 900,
    height: int = 540,
) -> None:
    """Plot curves over a log-x, linear-y grid as an SVG with one polyline
    per curve (axes use line/text elements, never polylines)."""
    margin = 60
    xs = x_log10
    x0, x1 = min(xs), max(xs)
    ys_all = [y for _, ys in curves for y in ys]
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def px(x: float) -> float:
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def py(y: float) -> float:
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    colors = ["#1f6fb2", "#b23a1f", "#b23a1f", "#3ab21f"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="monospace" font-size="14">{escape(title)}</text>',
    ]
    ax = (
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>'
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height - margin}" stroke="black"/>'
    )
    parts.append(ax)
    if y0 < 0 < y1:
        parts.append(
            f'<line x1="{margin}" y1="{py(0.0):.2f}" x2="{width - margin}" '
            f'y2="{py(0.0):.2f}" stroke="#cccccc"/>'
        )
    for tick in range(math.ceil(x0), math.floor(x1) + 1):
        parts.append(
            f'<text x="{px(tick):.2f}" y="{height - margin + 18}" text-anchor="middle" '
            f'font-family="monospace" font-size="11">1e{tick}</text>'
        )
    for i, (name, ys) in enumerate(curves):
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        dash = ' stroke-dasharray="6,4"' if "envelope" in name else ""
        parts.append(
            f'<polyline fill="none" stroke="{colors[i % len(colors)]}"{dash} '
            f'stroke-width="1.2" points="{pts}"/>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", newline="\n")
