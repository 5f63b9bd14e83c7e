"""Deterministic CSV, JSON and SVG emitters.

Floats are written with 17 significant digits so identical runs give
byte-identical files; non-finite values become ``nan``/``inf`` in CSV and
``null`` in JSON.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, is_dataclass

import numpy as np

PROFILE_COLUMNS = ("s", "rho", "drho", "h", "nu", "H", "Ke", "sigma_sq")


def fmt(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        x = 0.0  # drop the sign of -0.0
    return f"{x:.17g}"


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def profile_rows(example, stride: int = 1):
    cols = (example.s, example.rho, example.drho, example.h, example.nu, example.H,
            example.Ke, example.sigma_sq)
    idx = list(range(0, example.s.size, stride))
    if idx[-1] != example.s.size - 1:
        idx.append(example.s.size - 1)
    return [[c[i] for c in cols] for i in idx]


def profile_csv(example, stride: int = 1) -> str:
    return csv_text(PROFILE_COLUMNS, profile_rows(example, stride))


def _plain(obj):
    """Convert to JSON-compatible builtins, keeping floats as floats."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return _plain(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def _dump(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(obj[k], indent, level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_dump(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _dump(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return fmt(obj) if math.isfinite(obj) else "null"
    return json.dumps(obj)


def json_text(obj, indent: int = 2) -> str:
    """Sorted-key JSON with floats at 17 significant digits."""
    return _dump(_plain(obj), indent, 0) + "\n"


def profile_svg(rho, h, caption: str, width: int = 480, height: int = 480,
                xlabel: str = "rho", ylabel: str = "h") -> str:
    """Self-contained SVG of a profile curve with axis ticks and a caption."""
    rho, h = np.asarray(rho, float), np.asarray(h, float)
    ok = np.isfinite(rho) & np.isfinite(h)
    rho, h = rho[ok], h[ok]
    margin = 50
    x0, x1 = float(rho.min()), float(rho.max())
    y0, y1 = float(h.min()), float(h.max())
    # equal scaling so spheres look round
    span = max(x1 - x0, y1 - y0, 1e-12)
    sx = (width - 2 * margin) / span
    sy = (height - 2 * margin) / span

    def X(x):
        return margin + (x - x0) * sx

    def Y(y):
        return height - margin - (y - y0) * sy

    pts = " ".join(f"{X(a):.3f},{Y(b):.3f}" for a, b in zip(rho, h))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
           f'y2="{height - margin}" stroke="black"/>',
           f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>']
    for k in range(5):
        xv = x0 + span * k / 4
        yv = y0 + span * k / 4
        out.append(f'<line x1="{X(xv):.3f}" y1="{height - margin}" x2="{X(xv):.3f}" '
                   f'y2="{height - margin + 5}" stroke="black"/>')
        out.append(f'<text x="{X(xv):.3f}" y="{height - margin + 18}" font-size="10" '
                   f'text-anchor="middle">{xv:.3g}</text>')
        out.append(f'<line x1="{margin - 5}" y1="{Y(yv):.3f}" x2="{margin}" '
                   f'y2="{Y(yv):.3f}" stroke="black"/>')
        out.append(f'<text x="{margin - 8}" y="{Y(yv) + 3:.3f}" font-size="10" '
                   f'text-anchor="end">{yv:.3g}</text>')
    out.append(f'<polyline points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>')
    out.append(f'<text x="{width / 2}" y="{height - 12}" font-size="11" '
               f'text-anchor="middle">{xlabel}</text>')
    out.append(f'<text x="14" y="{height / 2}" font-size="11" text-anchor="middle" '
               f'transform="rotate(-90 14 {height / 2})">{ylabel}</text>')
    out.append(f'<text x="{width / 2}" y="24" font-size="13" text-anchor="middle">'
               f'{_escape(caption)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def write_text(path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
