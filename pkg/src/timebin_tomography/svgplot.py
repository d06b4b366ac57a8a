"""Hand-emitted SVG plots: polyline charts and Bloch-ball scatters.

Deliberately dependency-free and minimal: straight axes, a handful of ticks,
one polyline per series, text legend.  Good enough to eyeball sweep output
and diff between runs.
"""

import math

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")

_W, _H = 640, 440
_ML, _MR, _MT, _MB = 70, 20, 30, 50  # margins


def _ticks(lo: float, hi: float, count: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _log_ticks(lo: float, hi: float):
    first = math.floor(math.log10(lo))
    last = math.ceil(math.log10(hi))
    return [10.0**e for e in range(first, last + 1)]


def line_plot(series, *, x_label="", y_label="", title="", log_x=False) -> str:
    """Render ``series = [(label, xs, ys), ...]`` as an SVG line chart."""
    if not series:
        raise ValueError("need at least one series")
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    if log_x and min(xs_all) <= 0:
        raise ValueError("log x-axis needs positive x values")

    fx = math.log10 if log_x else float
    x_lo, x_hi = min(map(fx, xs_all)), max(map(fx, xs_all))
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    pad = 0.05 * (y_hi - y_lo) or 0.05
    y_lo, y_hi = y_lo - pad, y_hi + pad

    def px(x):
        return _ML + (fx(x) - x_lo) / (x_hi - x_lo) * (_W - _ML - _MR)

    def py(y):
        return _H - _MB - (y - y_lo) / (y_hi - y_lo) * (_H - _MT - _MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.0f}" y="18" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" stroke="black"/>',
    ]
    x_ticks = _log_ticks(min(xs_all), max(xs_all)) if log_x else _ticks(min(xs_all), max(xs_all))
    for t in x_ticks:
        x = px(t)
        if x < _ML - 1 or x > _W - _MR + 1:
            continue
        parts.append(f'<line x1="{x:.1f}" y1="{_H - _MB}" x2="{x:.1f}" y2="{_H - _MB + 5}" stroke="black"/>')
        parts.append(f'<text x="{x:.1f}" y="{_H - _MB + 18}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y_lo, y_hi):
        y = py(t)
        parts.append(f'<line x1="{_ML - 5}" y1="{y:.1f}" x2="{_ML}" y2="{y:.1f}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{y + 4:.1f}" text-anchor="end">{t:.3g}</text>')
    parts.append(
        f'<text x="{(_ML + _W - _MR) / 2:.0f}" y="{_H - 12}" text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{(_MT + _H - _MB) / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(_MT + _H - _MB) / 2:.0f})">{y_label}</text>'
    )
    for i, (label, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = _MT + 16 * (i + 1)
        parts.append(f'<line x1="{_W - _MR - 120}" y1="{ly}" x2="{_W - _MR - 95}" y2="{ly}" '
                     f'stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{_W - _MR - 90}" y="{ly + 4}">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def bloch_scatter(rows, *, title="") -> str:
    """x-z slice of the Bloch ball; marker opacity tracks the weight mu."""
    size = 420
    cx = cy = size / 2
    radius = size / 2 - 30
    mu_max = max(r[4] for r in rows) or 1.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="12">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<text x="{cx:.0f}" y="16" text-anchor="middle">{title}</text>',
        f'<circle cx="{cx}" cy="{cy}" r="{radius}" fill="none" stroke="black"/>',
        f'<line x1="{cx - radius}" y1="{cy}" x2="{cx + radius}" y2="{cy}" '
        f'stroke="#999" stroke-dasharray="4 3"/>',
        f'<line x1="{cx}" y1="{cy - radius}" x2="{cx}" y2="{cy + radius}" '
        f'stroke="#999" stroke-dasharray="4 3"/>',
        f'<text x="{cx + radius - 8:.0f}" y="{cy - 6:.0f}">x</text>',
        f'<text x="{cx + 6:.0f}" y="{cy - radius + 12:.0f}">z</text>',
    ]
    for _, x, _, z, mu in rows:
        opacity = max(0.15, mu / mu_max)
        parts.append(
            f'<circle cx="{cx + x * radius:.2f}" cy="{cy - z * radius:.2f}" r="5" '
            f'fill="{PALETTE[1]}" fill-opacity="{opacity:.3f}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
