"""Deterministic CSV/JSON/SVG emitters and the run manifest.

Data files must be byte-identical across worker counts, so everything is
written with explicit newlines, repr() floats (shortest round-trip form)
and sorted JSON keys.  The manifest carries the wall time and is therefore
excluded from byte-identity comparisons.
"""

from __future__ import annotations

import json
import sys
import time

import numpy as np


def _cell(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_csv(path: str, comments: list[str], header: list[str], rows):
    """Write a CSV with '#'-prefixed comment lines before the header."""
    with open(path, "w", newline="\n") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def write_json_table(path: str, comments: list[str], header: list[str],
                     rows):
    """JSON twin of write_csv with the same column layout."""
    def scalar(v):
        if isinstance(v, (np.floating, np.integer)):
            return v.item()
        return v

    payload = {
        "comments": list(comments),
        "columns": list(header),
        "rows": [[scalar(v) for v in row] for row in rows],
    }
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def write_table(path: str, fmt: str, comments, header, rows):
    if fmt == "json":
        write_json_table(path, comments, header, rows)
    else:
        write_csv(path, comments, header, rows)


def write_manifest(out_path: str, config_dict: dict, argv: list[str],
                   started: float, outputs: list[str]):
    """Sidecar manifest with the resolved configuration and environment."""
    import scipy

    from . import __version__

    manifest = {
        "argv": list(argv),
        "config": config_dict,
        "outputs": list(outputs),
        "python_version": sys.version.split()[0],
        "numpy_version": np.__version__,
        "scipy_version": scipy.__version__,
        "vitkerr_version": __version__,
        "wall_time_s": time.monotonic() - started,
    }
    path = out_path + ".manifest.json"
    with open(path, "w", newline="\n") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2, default=str)
        fh.write("\n")
    return path


# ---------------------------------------------------------------------------
# minimal SVG line plots

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")
_W, _H = 800, 500
_ML, _MR, _MT, _MB = 70, 20, 40, 50


def _ticks(lo: float, hi: float, n: int = 5):
    return np.linspace(lo, hi, n)


def write_svg(path: str, x, series, title: str = "", xlabel: str = "",
              ylabel: str = "", y_clip: float | None = None):
    """Plot (label, y-array) series against x as SVG polylines.

    Non-finite samples break the polyline; y_clip bounds the vertical
    range symmetrically (useful for merit profiles near zero crossings).
    """
    x = np.asarray(x, dtype=float)
    ys = [np.asarray(y, dtype=float) for _, y in series]
    finite = np.concatenate([y[np.isfinite(y)] for y in ys]) if ys else \
        np.array([0.0])
    if finite.size == 0:
        finite = np.array([0.0])
    y_lo, y_hi = float(finite.min()), float(finite.max())
    if y_clip is not None:
        y_lo, y_hi = max(y_lo, -y_clip), min(y_hi, y_clip)
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    x_lo, x_hi = float(x.min()), float(x.max())
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0

    def px(v):
        return _ML + (v - x_lo) / (x_hi - x_lo) * (_W - _ML - _MR)

    def py(v):
        return _H - _MB - (v - y_lo) / (y_hi - y_lo) * (_H - _MT - _MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" '
        f'height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.6g}" y="24" text-anchor="middle" '
        f'font-size="16">{title}</text>',
    ]
    # axes box and ticks
    parts.append(
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
        f'height="{_H - _MT - _MB}" fill="none" stroke="black"/>')
    for tv in _ticks(x_lo, x_hi):
        parts.append(
            f'<line x1="{px(tv):.6g}" y1="{_H - _MB}" x2="{px(tv):.6g}" '
            f'y2="{_H - _MB + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{px(tv):.6g}" y="{_H - _MB + 20}" '
            f'text-anchor="middle" font-size="11">{tv:.6g}</text>')
    for tv in _ticks(y_lo, y_hi):
        parts.append(
            f'<line x1="{_ML - 5}" y1="{py(tv):.6g}" x2="{_ML}" '
            f'y2="{py(tv):.6g}" stroke="black"/>')
        parts.append(
            f'<text x="{_ML - 8}" y="{py(tv) + 4:.6g}" text-anchor="end" '
            f'font-size="11">{tv:.6g}</text>')
    parts.append(
        f'<text x="{_W / 2:.6g}" y="{_H - 12}" text-anchor="middle" '
        f'font-size="13">{xlabel}</text>')
    parts.append(
        f'<text x="18" y="{_H / 2:.6g}" text-anchor="middle" '
        f'font-size="13" transform="rotate(-90 18 {_H / 2:.6g})">'
        f'{ylabel}</text>')

    for k, (label, y) in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        y = np.asarray(y, dtype=float)
        yc = np.clip(y, y_lo, y_hi)
        segments, current = [], []
        for xi, yi, raw in zip(x, yc, y):
            if np.isfinite(raw):
                current.append(f"{px(xi):.6g},{py(yi):.6g}")
            elif current:
                segments.append(current)
                current = []
        if current:
            segments.append(current)
        for seg in segments:
            parts.append(
                f'<polyline points="{" ".join(seg)}" fill="none" '
                f'stroke="{color}" stroke-width="1.5"/>')
        parts.append(
            f'<text x="{_W - _MR - 8}" y="{_MT + 18 + 16 * k}" '
            f'text-anchor="end" font-size="12" fill="{color}">{label}</text>')

    parts.append("</svg>")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
