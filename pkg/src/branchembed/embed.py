"""Two-dimensional embedding of a dendrogram by recursive cluster division.

The embedder walks the merge tree from the root down.  A cluster occupies a
single point until its own merge record is reached, at which moment it
divides: the two children move to opposite sides of the cluster point along
a division axis, their separation equals the merge height, and each child's
travel distance is inversely proportional to its leaf count.  The center of
mass therefore never moves, and every leaf ends up with its own coordinate
after n - 1 divisions, in time linear in n.

What remains free is the direction of the division axis, chosen per split
by an :class:`AngleStrategy`:

* ``random``  - a fresh uniform angle per split, from a seeded stream;
* ``fixed``   - the target-to-sister direction rotated counterclockwise by
  a constant angle theta in [0, 90] degrees.  With the ``swap`` flag on
  (the default) the larger child takes the side pointing away from the
  sister, which untangles crowded splits at small theta;
* ``even``    - theta is recomputed per split so that both children land
  equidistant from the sister cluster.

The root has no sister; its axis is the +x direction (or a random angle
for the random strategy), which only fixes the global orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dendrogram import Dendrogram, _dfs_leaves_and_gaps
from .rng import SplitMix64

STRATEGY_KINDS = ("random", "fixed", "even")

# Below this separation a sister is treated as coincident with the target
# and the fallback axis (1, 0) is used.
_DEGENERATE = 1e-12

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AngleStrategy:
    """Division-axis rule for :func:`branching_embed`.

    Use the factories: ``AngleStrategy.random(seed)``,
    ``AngleStrategy.fixed(theta, swap=True)`` or ``AngleStrategy.even()``.
    ``theta`` is in degrees and only meaningful for ``fixed``; ``seed``
    only for ``random``.
    """

    kind: str
    theta: Optional[float] = None
    swap: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.kind == "fixed":
            if self.theta is None:
                raise ValueError("fixed strategy needs a theta")
            if not 0.0 <= self.theta <= 90.0:
                raise ValueError(
                    f"theta must be in [0, 90] degrees, got {self.theta}"
                )
        elif self.theta is not None:
            raise ValueError(f"{self.kind} strategy takes no theta")

    @classmethod
    def random(cls, seed: int = 0) -> "AngleStrategy":
        return cls("random", seed=seed)

    @classmethod
    def fixed(cls, theta: float, swap: bool = True) -> "AngleStrategy":
        return cls("fixed", theta=float(theta), swap=swap)

    @classmethod
    def even(cls) -> "AngleStrategy":
        return cls("even")

    def label(self) -> str:
        """Short column label: 'random', 'even', or the angle in degrees."""
        if self.kind == "fixed":
            return f"{self.theta:g}"
        return self.kind


@dataclass(frozen=True)
class SplitEvent:
    """Trace record of one division (all positions are (x, y) tuples)."""

    node: int
    target: tuple[float, float]
    sister: Optional[tuple[float, float]]
    child1: tuple[float, float]
    child2: tuple[float, float]
    height: float
    n1: int
    n2: int


@dataclass(frozen=True)
class Embedding:
    """Leaf coordinates, row i for leaf i, plus an optional division trace."""

    coords: np.ndarray
    trace: Optional[list[SplitEvent]] = field(default=None, compare=False)

    def __post_init__(self):
        coords = np.ascontiguousarray(self.coords, dtype=np.float64)
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise ValueError(f"expected (n, 2) coordinates, got {coords.shape}")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def n_leaves(self) -> int:
        return self.coords.shape[0]


def even_angle(l1: float, l2: float, length: float) -> float:
    """Rotation (radians) that puts both children equidistant from the
    sister, for travel distances ``l1``, ``l2`` and target-sister distance
    ``length`` > 0.  The cosine is clamped to [-1, 1], so very lopsided
    splits degrade to 0 or 180 degrees instead of failing.
    """
    if length <= 0.0:
        raise ValueError("target-sister distance must be positive")
    return math.acos(min(1.0, max(-1.0, (l1 - l2) / (2.0 * length))))


def division_step(target, sister, height, n1, n2,
                  strategy: AngleStrategy, rng: Optional[SplitMix64] = None):
    """Place the two children of one dividing cluster.

    ``target`` is the cluster's point, ``sister`` the point of its sibling
    (None at the root), ``height`` the merge height and ``n1``/``n2`` the
    child leaf counts (child 1 is the record's left child).  Returns the
    pair of child positions.  The random strategy draws its angle from
    ``rng`` (a one-shot stream seeded from the strategy is used if absent).

    Child 1 travels ``height * n2 / (n1 + n2)`` along the division axis and
    child 2 travels ``height * n1 / (n1 + n2)`` the opposite way, so the
    children end up exactly ``height`` apart and the size-weighted mean of
    the two positions stays on the target.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("child sizes must be positive")
    if height < 0.0:
        raise ValueError("height must be nonnegative")
    total = n1 + n2
    l1 = height * n2 / total
    l2 = height * n1 / total
    tx, ty = target
    kind = strategy.kind

    if kind == "random":
        if rng is None:
            rng = SplitMix64(strategy.seed)
        ang = _TWO_PI * rng.next_uniform()
        ux = math.cos(ang)
        uy = math.sin(ang)
        return (tx + l1 * ux, ty + l1 * uy), (tx - l2 * ux, ty - l2 * uy)

    # Direction from the target toward its sister, if one is usable.
    if sister is None:
        sx, sy = 1.0, 0.0
        length = 0.0
    else:
        dx = sister[0] - tx
        dy = sister[1] - ty
        length = math.hypot(dx, dy)
        if length < _DEGENERATE:
            sx, sy = 1.0, 0.0
            length = 0.0
        else:
            sx = dx / length
            sy = dy / length

    if kind == "fixed":
        if sister is None:
            # Root split: nothing to rotate against, keep the +x axis.
            ux, uy = sx, sy
        else:
            rad = math.radians(strategy.theta)
            cos_t = math.cos(rad)
            sin_t = math.sin(rad)
            ux = sx * cos_t - sy * sin_t
            uy = sx * sin_t + sy * cos_t
        if strategy.swap and n1 > n2:
            # Push the larger child away from the sister.
            return (tx - l1 * ux, ty - l1 * uy), (tx + l2 * ux, ty + l2 * uy)
    else:  # even
        if length == 0.0:
            ux, uy = sx, sy
        else:
            rad = even_angle(l1, l2, length)
            cos_t = math.cos(rad)
            sin_t = math.sin(rad)
            ux = sx * cos_t - sy * sin_t
            uy = sx * sin_t + sy * cos_t

    return (tx + l1 * ux, ty + l1 * uy), (tx - l2 * ux, ty - l2 * uy)


def branching_embed(d: Dendrogram, strategy: AngleStrategy,
                    trace: bool = False) -> Embedding:
    """Embed a dendrogram's leaves in the plane by recursive division.

    The root cluster starts at the origin; records are processed root
    first (reverse creation order), so a cluster's own position and its
    sister's are always known before it divides.  With ``trace=True`` the
    returned embedding carries one :class:`SplitEvent` per record in
    processing order.  Runs in O(n).
    """
    n = d.n_leaves
    if n < 2:
        raise ValueError("need at least 2 leaves to embed")
    n_nodes = 2 * n - 1
    xs = [0.0] * n_nodes
    ys = [0.0] * n_nodes
    sib = [-1] * n_nodes
    node_size = [1] * n + d.size.tolist()
    left = d.left.tolist()
    right = d.right.tolist()
    heights = d.height.tolist()
    rng = SplitMix64(strategy.seed) if strategy.kind == "random" else None
    events: Optional[list[SplitEvent]] = [] if trace else None

    for k in range(n - 2, -1, -1):
        node = n + k
        a = left[k]
        b = right[k]
        s = sib[node]
        target = (xs[node], ys[node])
        sister = (xs[s], ys[s]) if s >= 0 else None
        n1 = node_size[a]
        n2 = node_size[b]
        c1, c2 = division_step(target, sister, heights[k], n1, n2,
                               strategy, rng)
        xs[a], ys[a] = c1
        xs[b], ys[b] = c2
        sib[a] = b
        sib[b] = a
        if events is not None:
            events.append(SplitEvent(node, target, sister, c1, c2,
                                     heights[k], n1, n2))

    coords = np.empty((n, 2))
    coords[:, 0] = xs[:n]
    coords[:, 1] = ys[:n]
    return Embedding(coords, events)


def line_embed(d: Dendrogram) -> Embedding:
    """Embed leaves on the x axis, in depth-first leaf order, with each
    adjacent gap equal to the pair's cophenetic distance.

    Along a line, single linkage merges exactly along the smallest gaps,
    so reclustering this embedding with Euclidean distance and single
    linkage reproduces the original cophenetic matrix.  The layout is
    centered so the coordinates sum to zero.
    """
    order, gaps = _dfs_leaves_and_gaps(d)
    n = d.n_leaves
    x = np.empty(n)
    x[0] = 0.0
    np.cumsum(gaps, out=x[1:])
    x -= x.mean()
    coords = np.zeros((n, 2))
    coords[np.asarray(order), 0] = x
    return Embedding(coords, None)
