"""Minimal SVG line charts: polylines and axes, nothing else.

CSV is the canonical output surface; these plots are a visual convenience.
"""

from __future__ import annotations

W, H = 640, 420
MARGIN = 56
COLORS = ("#000000", "#2a7f2a", "#2040c0", "#c03020")


def _scale(vals, lo, hi, out_lo, out_hi):
    span = hi - lo if hi > lo else 1.0
    return [out_lo + (v - lo) / span * (out_hi - out_lo) for v in vals]


def line_chart(
    x: list[float],
    series: dict[str, list[float]],
    x_label: str,
    y_label: str,
    title: str = "",
) -> str:
    xs_lo, xs_hi = min(x), max(x)
    all_y = [v for ys in series.values() for v in ys if v == v]
    y_lo, y_hi = min(all_y), max(all_y)
    if y_lo == y_hi:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0

    px = _scale(x, xs_lo, xs_hi, MARGIN, W - MARGIN)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{H - MARGIN}" x2="{W - MARGIN}" y2="{H - MARGIN}" '
        'stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{H - MARGIN}" '
        'stroke="black"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv = xs_lo + frac * (xs_hi - xs_lo)
        yv = y_lo + frac * (y_hi - y_lo)
        xp = MARGIN + frac * (W - 2 * MARGIN)
        yp = H - MARGIN - frac * (H - 2 * MARGIN)
        parts.append(
            f'<text x="{xp:.1f}" y="{H - MARGIN + 18}" font-size="11" '
            f'text-anchor="middle">{xv:.4g}</text>'
        )
        parts.append(
            f'<text x="{MARGIN - 6}" y="{yp:.1f}" font-size="11" '
            f'text-anchor="end">{yv:.4g}</text>'
        )
    for k, (name, ys) in enumerate(series.items()):
        py = _scale(ys, y_lo, y_hi, H - MARGIN, MARGIN)
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
        color = COLORS[k % len(COLORS)]
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     'stroke-width="1.5"/>')
        parts.append(
            f'<text x="{W - MARGIN + 4}" y="{MARGIN + 16 * k + 10}" font-size="12" '
            f'fill="{color}">{name}</text>'
        )
    parts.append(
        f'<text x="{W / 2:.0f}" y="{H - 14}" font-size="13" '
        f'text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{H / 2:.0f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {H / 2:.0f})">{y_label}</text>'
    )
    if title:
        parts.append(
            f'<text x="{W / 2:.0f}" y="24" font-size="14" '
            f'text-anchor="middle">{title}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def path_plot(curves: dict[str, list[tuple[float, float]]],
              circle: tuple[float, float, float] | None = None,
              title: str = "") -> str:
    """Plot planar curves (mm) plus an optional circle, equal aspect."""
    all_pts = [p for pts in curves.values() for p in pts]
    if circle is not None:
        cx, cz, r = circle
        all_pts += [(cx - r, cz - r), (cx + r, cz + r)]
    xs = [p[0] for p in all_pts]
    zs = [p[1] for p in all_pts]
    lo_x, hi_x, lo_z, hi_z = min(xs), max(xs), min(zs), max(zs)
    span = max(hi_x - lo_x, hi_z - lo_z, 1.0) * 1.08
    mid_x, mid_z = (lo_x + hi_x) / 2, (lo_z + hi_z) / 2
    size = W - 2 * MARGIN

    def tx(v):
        return MARGIN + (v - (mid_x - span / 2)) / span * size

    def tz(v):
        return H - MARGIN - (v - (mid_z - span / 2)) / span * (H - 2 * MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
    ]
    if circle is not None:
        cx, cz, r = circle
        parts.append(
            f'<circle cx="{tx(cx):.1f}" cy="{tz(cz):.1f}" '
            f'r="{r / span * size:.1f}" fill="none" stroke="#c03020"/>'
        )
    for k, (name, pts) in enumerate(curves.items()):
        color = COLORS[k % len(COLORS)]
        path = " ".join(f"{tx(a):.2f},{tz(b):.2f}" for a, b in pts)
        parts.append(f'<polyline points="{path}" fill="none" stroke="{color}" '
                     'stroke-width="1.5"/>')
        parts.append(
            f'<text x="{W - MARGIN + 4}" y="{MARGIN + 16 * k + 10}" font-size="12" '
            f'fill="{color}">{name}</text>'
        )
    if title:
        parts.append(f'<text x="{W / 2:.0f}" y="24" font-size="14" '
                     f'text-anchor="middle">{title}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
