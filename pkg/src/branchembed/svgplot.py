"""Minimal standalone SVG scatter plots for embedded coordinates."""

from __future__ import annotations

from typing import Optional, Union

import numpy as np

from .embed import Embedding

# Fixed 10-color palette; labels map onto it modulo 10.
PALETTE = (
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
    "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd",
)

_MARGIN = 0.05


def render_svg_scatter(coords: Union[Embedding, np.ndarray],
                       labels: Optional[np.ndarray] = None,
                       size: int = 640,
                       point_radius: float = 3.0) -> str:
    """Render points as an SVG document string.

    The viewport is square and both axes share one scale factor (equal
    aspect), with a 5% margin around the data's bounding box.  With labels,
    point fills come from the fixed 10-color palette; without, every point
    uses the first palette color.
    """
    pts = coords.coords if isinstance(coords, Embedding) else (
        np.asarray(coords, dtype=np.float64))
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
        raise ValueError(f"expected (n, 2) coordinates, got {pts.shape}")
    if labels is not None:
        labels = np.asarray(labels)
        if labels.shape != (pts.shape[0],):
            raise ValueError("labels must have one entry per point")

    mins = pts.min(axis=0)
    maxs = pts.max(axis=0)
    center = (mins + maxs) / 2.0
    span = float((maxs - mins).max())
    if span == 0.0:
        span = 1.0
    side = span * (1.0 + 2.0 * _MARGIN)
    scale = size / side
    origin = center - side / 2.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for row in range(pts.shape[0]):
        cx = (pts[row, 0] - origin[0]) * scale
        cy = size - (pts[row, 1] - origin[1]) * scale  # y grows upward
        color = PALETTE[int(labels[row]) % 10] if labels is not None else PALETTE[0]
        parts.append(
            f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{point_radius:g}" '
            f'fill="{color}" fill-opacity="0.8"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
