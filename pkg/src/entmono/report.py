"""Deterministic CSV and SVG writers for search results and curves."""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

from .equi import CurvePoint
from .sampling import CounterexampleRecord

SEARCH_HEADER = ("idx", "a_coeffs", "b_coeffs", "E_a", "E_b", "M_a", "M_b", "class")
CURVE_HEADER = ("class_entropy", "alpha1", "alpha2", "alpha3", "C", "C2", "N")
MEASURES_HEADER = ("coeffs", "rank", "E", "C", "C2", "N", "purity")


def fmt(x: float) -> str:
    """Shortest round-trip repr, padded to at least 9 significant digits."""
    x = float(x) + 0.0
    s = repr(x)
    mantissa = s.split("e")[0].lstrip("-").replace(".", "").lstrip("0")
    if len(mantissa) < 9:
        s = format(x, "#.9g")
    return s


def fmt9(x: float) -> str:
    return format(float(x) + 0.0, "#.9g")


def fmt_vector(coeffs: Sequence[float]) -> str:
    return ";".join(fmt(c) for c in coeffs)


def _writer(buf):
    return csv.writer(buf, lineterminator="\n")


def search_csv(records: Iterable[CounterexampleRecord]) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(SEARCH_HEADER)
    for r in records:
        w.writerow((r.idx, fmt_vector(r.vec_a.coeffs), fmt_vector(r.vec_b.coeffs),
                    fmt(r.e_a), fmt(r.e_b), fmt(r.m_a), fmt(r.m_b), str(r.classification.tag)))
    return buf.getvalue()


def curve_csv(curves: dict[float, list[CurvePoint]]) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(CURVE_HEADER)
    for e in sorted(curves):
        for p in sorted(curves[e], key=lambda p: p.alpha1):
            w.writerow((fmt(e), fmt(p.alpha1), fmt(p.alpha2), fmt(p.alpha3),
                        fmt(p.concurrence), fmt(p.concurrence_squared), fmt(p.negativity)))
    return buf.getvalue()


def measures_csv(rows) -> str:
    """``rows`` are ``(SchmidtVector, MeasureSet)`` pairs."""
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(MEASURES_HEADER)
    for v, m in rows:
        w.writerow((fmt_vector(v.coeffs), m.effective_rank, fmt(m.entropy), fmt(m.concurrence),
                    fmt(m.concurrence_squared), fmt(m.negativity), fmt(m.purity)))
    return buf.getvalue()


_STROKES = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def curve_svg(curves: dict[float, list[CurvePoint]], width: int = 800, height: int = 600) -> str:
    """Static SVG 1.1 plot of concurrence against the largest coefficient, one polyline per class."""
    left, right, top, bottom = 90, 30, 40, 70
    xs = [p.alpha1 for pts in curves.values() for p in pts]
    ys = [p.concurrence for pts in curves.values() for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5e-3, x1 + 0.5e-3
    if y1 == y0:
        y0, y1 = y0 - 0.5e-3, y1 + 0.5e-3
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + ph - (y - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for k in range(5):
        xv = x0 + (x1 - x0) * k / 4
        yv = y0 + (y1 - y0) * k / 4
        out.append(f'<text x="{sx(xv):.2f}" y="{top + ph + 20}" font-size="12" '
                   f'text-anchor="middle">{xv:.4f}</text>')
        out.append(f'<text x="{left - 8}" y="{sy(yv) + 4:.2f}" font-size="12" '
                   f'text-anchor="end">{yv:.5f}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 20}" font-size="14" '
               f'text-anchor="middle">largest Schmidt coefficient alpha1</text>')
    out.append(f'<text x="20" y="{top + ph / 2:.2f}" font-size="14" text-anchor="middle" '
               f'transform="rotate(-90 20 {top + ph / 2:.2f})">concurrence C</text>')
    for n, e in enumerate(sorted(curves)):
        color = _STROKES[n % len(_STROKES)]
        pts = " ".join(f"{sx(p.alpha1):.2f},{sy(p.concurrence):.2f}"
                       for p in sorted(curves[e], key=lambda p: p.alpha1))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(f'<text x="{left + pw - 10}" y="{top + 20 + 18 * n}" font-size="12" '
                   f'text-anchor="end" fill="{color}">E = {fmt9(e)} e-bit</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
