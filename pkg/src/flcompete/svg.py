"""Static SVG rendering of the profit-vs-substitution figure.

Input is the CSV text written by the CLI, so the plot cannot drift from the
published numbers.
"""

from __future__ import annotations

import math

from .scenario_io import read_csv

WIDTH, HEIGHT = 760, 480
MARGIN = dict(left=70, right=170, top=40, bottom=55)

# (column, label, colour, stroke width)
SERIES = [
    ("profit1_ml", "firm 1, ML", "#d62728", 1.2),
    ("profit1_fl", "firm 1, FL", "#1f77b4", 1.2),
    ("profit2_ml", "firm 2, ML", "#d62728", 3.0),
    ("profit2_fl", "firm 2, FL", "#1f77b4", 3.0),
]
GREEN, PURPLE = "#2ca02c", "#9467bd"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _nice_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * span:
        ticks.append(round(t, 12))
        t += step
    return ticks


def render_figure_svg(csv_text: str, title: str = "") -> str:
    rows = read_csv(csv_text)
    if not rows:
        raise ValueError("no rows to plot")
    gam = [float(r["gamma"]) for r in rows]
    data = {col: [float(r[col]) for r in rows] for col, *_ in SERIES}
    markers = {r["marker"]: float(r["gamma"]) for r in rows if r.get("marker")}

    x_lo, x_hi = 0.0, max(gam)
    y_all = [v for vals in data.values() for v in vals]
    y_lo, y_hi = min(y_all), max(y_all)
    pad = 0.05 * (y_hi - y_lo or 1.0)
    y_lo, y_hi = max(0.0, y_lo - pad), y_hi + pad

    left, top = MARGIN["left"], MARGIN["top"]
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(x):
        return left + (x - x_lo) / (x_hi - x_lo) * pw

    def py(y):
        return top + ph - (y - y_lo) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]

    gs = markers.get("gamma_star")
    gh = markers.get("gamma_hat", markers.get("gamma_max") if gs is not None else None)
    if gs is not None:
        out.append(
            f'<rect class="fl-region" x="{px(x_lo):.2f}" y="{top}" width="{px(gs) - px(x_lo):.2f}" '
            f'height="{ph}" fill="{GREEN}" fill-opacity="0.15"/>'
        )
        if gh is not None and gh > gs:
            out.append(
                f'<rect class="subsidy-region" x="{px(gs):.2f}" y="{top}" width="{px(gh) - px(gs):.2f}" '
                f'height="{ph}" fill="{PURPLE}" fill-opacity="0.15"/>'
            )

    # axes and ticks
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    for t in _nice_ticks(x_lo, x_hi):
        x = px(t)
        out.append(f'<line x1="{x:.2f}" y1="{top + ph}" x2="{x:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{top + ph + 18}" text-anchor="middle">{t:g}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        y = py(t)
        out.append(f'<line x1="{left - 5}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end">{t:g}</text>')
    out.append(
        f'<text x="{left + pw / 2}" y="{HEIGHT - 15}" text-anchor="middle">degree of substitution γ</text>'
    )
    out.append(
        f'<text x="18" y="{top + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 18 {top + ph / 2})">equilibrium profit</text>'
    )
    if title:
        out.append(f'<text x="{left + pw / 2}" y="22" text-anchor="middle" font-size="14">{_escape(title)}</text>')

    for col, label, colour, width in SERIES:
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(gam, data[col]))
        out.append(
            f'<polyline class="{col}" fill="none" stroke="{colour}" stroke-width="{width}" points="{pts}"/>'
        )

    for name, colour in (("gamma_star", GREEN), ("gamma_hat", PURPLE)):
        if name in markers:
            x = px(markers[name])
            out.append(
                f'<line class="{name}" x1="{x:.2f}" y1="{top}" x2="{x:.2f}" y2="{top + ph}" '
                f'stroke="{colour}" stroke-width="1.5" stroke-dasharray="6,4"/>'
            )

    lx, ly = left + pw + 15, top + 10
    legend = [(label, colour, width, "") for _, label, colour, width in SERIES]
    legend += [("γ*", GREEN, 1.5, "6,4")]
    if "gamma_hat" in markers:
        legend += [("γ̂", PURPLE, 1.5, "6,4")]
    for i, (label, colour, width, dash) in enumerate(legend):
        y = ly + 20 * i
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(
            f'<line x1="{lx}" y1="{y}" x2="{lx + 28}" y2="{y}" stroke="{colour}" '
            f'stroke-width="{width}"{dash_attr}/>'
        )
        out.append(f'<text x="{lx + 34}" y="{y + 4}">{_escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
