"""
Static SVG renderings: two-dimensional designs and data profiles.

Coordinates are printed with 12 significant digits so that identical inputs give
identical files.
"""

import csv
from html import escape
from pathlib import Path

import distinctipy
import numpy as np

from eigendesign.utils.common import fmt

MERGE_TOL = 1e-6
SIZE = 400
MARGIN = 1.15


def merge_points(points, tol=MERGE_TOL):
    """
    Group points that lie within ``tol`` of each other.

    Parameters
    ----------
    points: array-like
        n×2 coordinates.
    tol: :class:`float`, default=1e-6
        Merge distance.

    Returns
    -------
    :class:`list` of :class:`tuple`
        (x, y, multiplicity), in order of first appearance.

    Examples
    --------

    >>> merge_points([[1, 0], [0, 1], [1, 1e-9]])
    [(1.0, 0.0, 2), (0.0, 1.0, 1)]
    """
    merged = []
    for x, y in np.asarray(points, dtype=float).reshape(-1, 2):
        for i, (mx, my, count) in enumerate(merged):
            if np.hypot(x - mx, y - my) <= tol:
                merged[i] = (mx, my, count + 1)
                break
        else:
            merged.append((float(x), float(y), 1))
    return merged


class Design2DPlot:
    """
    Picture of a design in the plane: the unit circle, prior points as squares and design
    vectors as dots labeled with their multiplicity.

    Displays natively in notebooks via ``_repr_svg_``.

    Parameters
    ----------
    design: array-like
        2×k design, one vector per column.
    prior_points: array-like, optional
        n×2 points whose rank-one sum is the prior.
    title: :class:`str`, optional
        Caption.

    Examples
    --------

    >>> plot = Design2DPlot(np.array([[1., 1., 0.], [0., 0., 1.]]))
    >>> plot.points
    [(1.0, 0.0, 2), (0.0, 1.0, 1)]
    >>> plot.to_svg().startswith("<svg")
    True
    """

    def __init__(self, design, prior_points=None, title=None):
        self.design = np.array(design, dtype=float, ndmin=2)
        self.prior_points = np.zeros((0, 2)) if prior_points is None else np.array(prior_points, dtype=float)
        self.prior_points = self.prior_points.reshape(-1, 2)
        self.title = title

    def __repr__(self):
        return f"Design2DPlot({self.design.shape[1]} vectors, {len(self.prior_points)} prior points)"

    @property
    def points(self):
        return merge_points(self.design.T)

    def _extent(self):
        coords = np.concatenate([self.design.T.reshape(-1, 2), self.prior_points, [[1.0, 1.0]]])
        return MARGIN * float(np.max(np.abs(coords)))

    def to_svg(self, size=SIZE):
        """Render as an SVG string."""
        extent = self._extent()
        scale = size / (2 * extent)

        def px(x, y):
            return fmt((x + extent) * scale), fmt((extent - y) * scale)

        cx, cy = px(0.0, 0.0)
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
            f'<rect width="{size}" height="{size}" fill="white"/>',
            f'<line x1="0" y1="{cy}" x2="{size}" y2="{cy}" stroke="#cccccc"/>',
            f'<line x1="{cx}" y1="0" x2="{cx}" y2="{size}" stroke="#cccccc"/>',
            f'<circle cx="{cx}" cy="{cy}" r="{fmt(scale)}" fill="none" stroke="#555555" stroke-dasharray="4 3"/>',
        ]
        if self.title:
            parts.append(f'<text x="8" y="18" font-family="sans-serif" font-size="13">{escape(self.title)}</text>')
        for x, y in self.prior_points:
            sx, sy = px(x, y)
            parts.append(
                f'<rect x="{fmt(float(sx) - 5)}" y="{fmt(float(sy) - 5)}" width="10" height="10" fill="#e07b39"/>'
            )
        for x, y, count in self.points:
            sx, sy = px(x, y)
            parts.append(f'<circle cx="{sx}" cy="{sy}" r="5" fill="#2a6fb0"/>')
            if count > 1:
                parts.append(
                    f'<text x="{fmt(float(sx) + 7)}" y="{fmt(float(sy) - 7)}" '
                    f'font-family="sans-serif" font-size="12">{count}</text>'
                )
        parts.append("</svg>")
        return "\n".join(parts) + "\n"

    def _repr_svg_(self):
        return self.to_svg()

    def save_svg(self, path):
        """Write the picture to ``path``."""
        Path(path).write_text(self.to_svg(), encoding="utf8")

    def save_csv(self, path):
        """Write the merged design points as (x, y, multiplicity) rows."""
        with open(path, "w", encoding="utf8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["x", "y", "multiplicity"])
            for x, y, count in self.points:
                writer.writerow([fmt(x), fmt(y), count])


def method_colors(methods, rng=0):
    """
    One distinct color per method, as ``rgb(r,g,b)`` strings, stable for a given ``rng``.
    """
    colors = distinctipy.get_colors(len(methods), pastel_factor=0.0, rng=rng)
    return {m: f"rgb({int(r * 255)},{int(g * 255)},{int(b * 255)})" for m, (r, g, b) in zip(methods, colors)}


def profile_svg(profile, width=560, height=360, rng=0):
    """
    Render data profiles as step curves.

    Parameters
    ----------
    profile: :class:`~eigendesign.dfo.profiles.DataProfile`
        Curves to draw.
    width: :class:`int`, default=560
        Picture width.
    height: :class:`int`, default=360
        Picture height.
    rng: :class:`int`, default=0
        Seed of the color choice.

    Returns
    -------
    :class:`str`
    """
    left, right, top, bottom = 50, 150, 20, 40
    alphas = np.asarray(profile.alphas, dtype=float)
    a_max = float(alphas.max()) if alphas.size and alphas.max() > 0 else 1.0
    plot_w, plot_h = width - left - right, height - top - bottom

    def px(a, f):
        return fmt(left + a / a_max * plot_w), fmt(top + (1 - f) * plot_h)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#555555"/>',
        f'<text x="{left}" y="{height - 10}" font-family="sans-serif" font-size="12">'
        f"budget / (d + 1), up to {fmt(a_max)}</text>",
        f'<text x="4" y="{top + 10}" font-family="sans-serif" font-size="12">1</text>',
        f'<text x="4" y="{top + plot_h}" font-family="sans-serif" font-size="12">0</text>',
    ]
    colors = method_colors(profile.methods, rng=rng)
    for i, (method, curve) in enumerate(profile.curves.items()):
        pts = []
        prev = None
        for a, f in zip(alphas, curve):
            if prev is not None and f != prev:
                pts.append(" ".join(px(a, prev)))
            pts.append(" ".join(px(a, f)))
            prev = f
        points = " ".join(p.replace(" ", ",") for p in pts)
        parts.append(f'<polyline points="{points}" fill="none" stroke="{colors[method]}" stroke-width="2"/>')
        ly = top + 16 + 18 * i
        parts.append(
            f'<line x1="{width - right + 10}" y1="{ly}" x2="{width - right + 30}" y2="{ly}" '
            f'stroke="{colors[method]}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{width - right + 36}" y="{ly + 4}" font-family="sans-serif" font-size="12">'
            f"{escape(method)}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
