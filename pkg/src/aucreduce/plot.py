"""Minimal SVG line chart for the running-total AUC curve."""

from __future__ import annotations

from xml.sax.saxutils import escape

from aucreduce.reduction import CumulativeAucCurve, peak_prefix_length

WIDTH = 640
HEIGHT = 400
MARGIN = {"left": 64, "right": 24, "top": 32, "bottom": 56}


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    step = (hi - lo) / n
    return [lo + i * step for i in range(n + 1)]


def curve_svg(curve: CumulativeAucCurve, title: str = "AUC of running item totals") -> str:
    """Render the curve with the peak marked.

    The x axis is the fraction of items summed (k / K on [0, 1], each
    tick labelled with the item added) and the y axis spans the curve
    range padded by 0.01 on each side.
    """
    aucs = curve.aucs
    if not aucs:
        raise ValueError("cannot plot an empty curve")
    n = len(aucs)
    y_lo = min(aucs) - 0.01
    y_hi = max(aucs) + 0.01
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(k: float) -> float:
        # fraction of items retained, on [0, 1]
        return MARGIN["left"] + k / n * pw

    def sy(v: float) -> float:
        return MARGIN["top"] + (y_hi - v) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>',
    ]
    x0, x1 = MARGIN["left"], MARGIN["left"] + pw
    y0, y1 = MARGIN["top"] + ph, MARGIN["top"]
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>')

    for v in _ticks(y_lo, y_hi):
        y = sy(v)
        out.append(f'<line x1="{x0 - 4}" y1="{y:.2f}" x2="{x0}" y2="{y:.2f}" stroke="black"/>')
        out.append(
            f'<text x="{x0 - 6}" y="{y + 4:.2f}" text-anchor="end">{v:.3f}</text>'
        )
    for step in curve.steps:
        x = sx(step.k)
        out.append(f'<line x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + 4}" stroke="black"/>')
        out.append(
            f'<text x="{x:.2f}" y="{y0 + 16}" text-anchor="middle">{escape(step.item_id)}</text>'
        )
    out.append(
        f'<text x="{x0 + pw / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">'
        "item added (running total)</text>"
    )
    out.append(
        f'<text transform="translate(16 {y1 + ph / 2:.1f}) rotate(-90)" '
        'text-anchor="middle">AUC</text>'
    )

    pts = " ".join(f"{sx(s.k):.2f},{sy(s.auc):.2f}" for s in curve.steps)
    out.append(f'<polyline points="{pts}" fill="none" stroke="#1f77b4" stroke-width="2"/>')
    for s in curve.steps:
        out.append(f'<circle cx="{sx(s.k):.2f}" cy="{sy(s.auc):.2f}" r="3" fill="#1f77b4"/>')

    k = peak_prefix_length(aucs)
    px, py = sx(k), sy(aucs[k - 1])
    out.append(
        f'<circle class="peak" cx="{px:.2f}" cy="{py:.2f}" r="6" fill="none" '
        'stroke="#d62728" stroke-width="2"/>'
    )
    out.append(
        f'<text class="peak-label" x="{px:.2f}" y="{py - 10:.2f}" text-anchor="middle" '
        f'fill="#d62728">peak: {k} items, AUC {aucs[k - 1]:.3f}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
