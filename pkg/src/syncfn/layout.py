"""Fixed node positions for drawing division machines and closure sections."""

from __future__ import annotations

import math


def circular_positions(d: int, radius: float = 1.0, center=(0.0, 0.0)) -> dict[int, tuple[float, float]]:
    """Place ``0 .. d-1`` equidistantly on a circle.

    ``0`` sits at the top right and ``d-1`` at the top left, on the same
    horizontal line; the remaining states follow in index order around the
    lower part of the circle.
    """
    cx, cy = center
    if d == 1:
        return {0: (cx, cy)}
    start = math.pi / 2 - math.pi / d
    pos = {}
    for k in range(d):
        theta = start - 2 * math.pi * k / d
        pos[k] = (cx + radius * math.cos(theta), cy + radius * math.sin(theta))
    return pos


def cone_positions(sizes: list[int], scale: float = 1.0, gap: float = 2.5, squash: float = 0.4):
    """Centers and radii for the sections of a cone with its tip on top.

    Section ``n`` is a flattened circle of radius proportional to ``n``
    centered ``n * gap`` below the tip.  Returns one ``(center, radius, squash)``
    triple per section.
    """
    return [((0.0, -n * gap * scale), n * scale, squash) for n in range(len(sizes))]


def ellipse_positions(count: int, center, radius: float, squash: float):
    pos = circular_positions(count, radius)
    cx, cy = center
    return {k: (cx + x, cy + y * squash) for k, (x, y) in pos.items()}
