"""Minimal self-contained SVG 1.1 emitter for scatter and curve plots.

No imaging dependency: the output is hand-built SVG with axes, tick
labels, a legend, and optional 2-standard-deviation covariance ellipses
per point set (drawn when a set has at least 3 points).  Ellipses are
rendered as sampled polygons so they stay correct under anisotropic
axis scaling.
"""

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .errors import InvalidValue, IoFailure

CANVAS_W, CANVAS_H = 640, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 62, 20, 34, 46
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")
ELLIPSE_N_STD = 2.0


@dataclass
class PointSet:
    """A labeled set of 2-D points to draw as one series."""

    label: str
    points: np.ndarray  # (m, 2)

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=np.float64))
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
            raise InvalidValue("a point set must be a non-empty (m, 2) array")
        self.points = pts


def covariance_ellipse(points, n_std=ELLIPSE_N_STD):
    """Center, semi-axis lengths, and axis directions of the n_std ellipse.

    Semi-axes are n_std * sqrt(eigenvalue) of the 2x2 sample covariance
    (ddof=1), largest first; axes are the matching unit eigenvectors.
    Returns None for fewer than 3 points.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.shape[0] < 3:
        return None
    center = pts.mean(axis=0)
    cov = np.cov(pts, rowvar=False, ddof=1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(-eigvals)
    eigvals = np.maximum(eigvals[order], 0.0)
    axes = eigvecs[:, order].T
    return center, n_std * np.sqrt(eigvals), axes


def _ellipse_polygon(center, semi_axes, axes, n_vertices=64):
    t = np.linspace(0.0, 2.0 * np.pi, n_vertices, endpoint=True)
    circle = np.stack([np.cos(t), np.sin(t)], axis=1)
    return center + (circle * semi_axes) @ axes


def _nice_ticks(lo, hi, n=5):
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    return np.linspace(lo, hi, n)


def _fmt(v):
    return f"{v:.4g}"


def emit_plot(point_sets, kind, path, title="", xlabel="x", ylabel="y", ellipses=True):
    """Write an SVG with the given point sets.

    kind "scatter" draws circle markers (plus covariance ellipses for
    sets with >= 3 points); kind "curve" draws each set as a polyline in
    the given point order.
    """
    if not point_sets:
        raise InvalidValue("need at least one point set")
    if kind not in ("scatter", "curve"):
        raise InvalidValue(f"kind must be 'scatter' or 'curve', got {kind!r}")

    allpts = np.vstack([ps.points for ps in point_sets])
    x_lo, y_lo = allpts.min(axis=0)
    x_hi, y_hi = allpts.max(axis=0)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_lo == y_hi:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad_x = 0.05 * (x_hi - x_lo)
    pad_y = 0.05 * (y_hi - y_lo)
    x_lo, x_hi = x_lo - pad_x, x_hi + pad_x
    y_lo, y_hi = y_lo - pad_y, y_hi + pad_y

    plot_w = CANVAS_W - MARGIN_L - MARGIN_R
    plot_h = CANVAS_H - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{CANVAS_W}" height="{CANVAS_H}" '
        f'viewBox="0 0 {CANVAS_W} {CANVAS_H}">',
        f'<rect x="0" y="0" width="{CANVAS_W}" height="{CANVAS_H}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{CANVAS_W / 2:.1f}" y="{MARGIN_T - 12}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{escape(title)}</text>'
        )
    # axes box
    parts.append(
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    for xt in _nice_ticks(x_lo, x_hi):
        xp = px(xt)
        parts.append(
            f'<line x1="{xp:.2f}" y1="{MARGIN_T + plot_h}" x2="{xp:.2f}" '
            f'y2="{MARGIN_T + plot_h + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{xp:.2f}" y="{MARGIN_T + plot_h + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(xt)}</text>'
        )
    for yt in _nice_ticks(y_lo, y_hi):
        yp = py(yt)
        parts.append(
            f'<line x1="{MARGIN_L - 5}" y1="{yp:.2f}" x2="{MARGIN_L}" '
            f'y2="{yp:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 8}" y="{yp + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_fmt(yt)}</text>'
        )
    parts.append(
        f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{CANVAS_H - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{escape(xlabel)}</text>'
    )
    parts.append(
        f'<text x="16" y="{MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 16 {MARGIN_T + plot_h / 2:.1f})">{escape(ylabel)}</text>'
    )

    for si, ps in enumerate(point_sets):
        color = PALETTE[si % len(PALETTE)]
        if kind == "curve":
            coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in ps.points)
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        else:
            for x, y in ps.points:
                parts.append(
                    f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" fill="{color}"/>'
                )
            if ellipses:
                ell = covariance_ellipse(ps.points)
                if ell is not None:
                    poly = _ellipse_polygon(*ell)
                    coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in poly)
                    parts.append(
                        f'<polyline points="{coords}" fill="none" stroke="{color}" '
                        f'stroke-width="1" stroke-dasharray="4 3"/>'
                    )
    # legend: rect swatches so circle markers stay countable
    for si, ps in enumerate(point_sets):
        color = PALETTE[si % len(PALETTE)]
        lx = CANVAS_W - MARGIN_R - 150
        ly = MARGIN_T + 10 + 18 * si
        parts.append(f'<rect x="{lx}" y="{ly - 9}" width="12" height="12" fill="{color}"/>')
        parts.append(
            f'<text x="{lx + 17}" y="{ly + 1}" font-family="sans-serif" '
            f'font-size="12">{escape(ps.label)}</text>'
        )
    parts.append("</svg>")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(parts) + "\n")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
