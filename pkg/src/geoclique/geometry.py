"""Points, balls, and their intersection graphs."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graphkit import Graph

DEFAULT_MARGIN = 1e-9

Point = tuple  # tuple[float, ...]


class DegenerateInputWarning(UserWarning):
    """Some pairwise distance lies within the margin of its decision threshold."""

    def __init__(self, pairs):
        self.pairs = pairs
        shown = ", ".join(f"({u}, {v})" for u, v, _ in pairs[:5])
        more = f" and {len(pairs) - 5} more" if len(pairs) > 5 else ""
        super().__init__(f"{len(pairs)} near-tie pair(s): {shown}{more}")


def as_point(coords) -> Point:
    p = tuple(float(c) for c in coords)
    if not all(math.isfinite(c) for c in p):
        raise ValueError(f"non-finite coordinate in {coords!r}")
    return p


@dataclass(frozen=True)
class Ball:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r >= 0):
            raise ValueError(f"radius must be finite and >= 0, got {self.radius!r}")
        object.__setattr__(self, "radius", r)

    @property
    def dim(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class GeometricInstance:
    """Either balls (``kind == "balls"``) or points with a distance threshold."""

    dim: int
    balls: tuple = ()
    points: tuple = ()
    threshold: float | None = None
    weights: tuple | None = None
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "balls", tuple(self.balls))
        object.__setattr__(self, "points", tuple(as_point(p) for p in self.points))
        if self.balls and self.points:
            raise ValueError("an instance holds balls or points, not both")
        if self.threshold is not None:
            if not (self.threshold > 0 and math.isfinite(self.threshold)):
                raise ValueError("threshold must be positive and finite")
            object.__setattr__(self, "threshold", float(self.threshold))
        elif self.points:
            raise ValueError("point instances need a threshold")
        for obj in self.balls:
            if obj.dim != self.dim:
                raise ValueError(f"ball of dimension {obj.dim} in a {self.dim}-d instance")
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError(f"point of dimension {len(p)} in a {self.dim}-d instance")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(self.weights))
            if len(self.weights) != len(self):
                raise ValueError("one weight per object required")

    @property
    def kind(self) -> str:
        return "points" if self.threshold is not None else "balls"

    def __len__(self):
        return len(self.points) if self.kind == "points" else len(self.balls)

    def centers(self) -> np.ndarray:
        pts = self.points if self.kind == "points" else [b.center for b in self.balls]
        return np.asarray(pts, dtype=float).reshape(len(pts), self.dim)

    def radii(self) -> np.ndarray:
        if self.kind == "points":
            return np.full(len(self.points), self.threshold / 2.0)
        return np.asarray([b.radius for b in self.balls], dtype=float)

    def equal_radii(self) -> bool:
        return self.kind == "points" or len({b.radius for b in self.balls}) <= 1

    @classmethod
    def from_balls(cls, centers, radii, weights=None, metadata=None) -> "GeometricInstance":
        centers = [as_point(c) for c in centers]
        if np.isscalar(radii):
            radii = [radii] * len(centers)
        dims = {len(c) for c in centers}
        if len(dims) > 1:
            raise ValueError(f"mixed dimensions {sorted(dims)}")
        dim = dims.pop() if dims else 2
        balls = tuple(Ball(c, r) for c, r in zip(centers, radii, strict=True))
        return cls(dim, balls=balls, weights=weights, metadata=metadata or {})

    @classmethod
    def from_points(cls, points, threshold, weights=None, metadata=None, dim=None) -> "GeometricInstance":
        points = [as_point(p) for p in points]
        dims = {len(p) for p in points}
        if len(dims) > 1:
            raise ValueError(f"mixed dimensions {sorted(dims)}")
        dim = dims.pop() if dims else (dim or 3)
        return cls(dim, points=tuple(points), threshold=threshold, weights=weights, metadata=metadata or {})

    def subset(self, indices: Sequence[int]) -> "GeometricInstance":
        w = [self.weights[i] for i in indices] if self.weights is not None else None
        if self.kind == "points":
            return GeometricInstance(self.dim, points=[self.points[i] for i in indices],
                                     threshold=self.threshold, weights=w)
        return GeometricInstance(self.dim, balls=[self.balls[i] for i in indices], weights=w)


def distance(a, b) -> float:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return math.dist(a, b)


def diameter(points) -> float:
    pts = np.asarray(points, dtype=float)
    if len(pts) == 0:
        raise ValueError("diameter of an empty point set is undefined")
    if len(pts) == 1:
        return 0.0
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff ** 2).sum(-1).max()))


def pairwise_distances(inst: GeometricInstance) -> np.ndarray:
    c = inst.centers()
    diff = c[:, None, :] - c[None, :, :]
    return np.sqrt((diff ** 2).sum(-1))


def thresholds(inst: GeometricInstance) -> np.ndarray:
    r = inst.radii()
    if inst.kind == "points":
        return np.full((len(r), len(r)), inst.threshold)
    return r[:, None] + r[None, :]


def clearances(inst: GeometricInstance) -> np.ndarray:
    """Signed ``threshold - distance`` per pair: positive means intersecting."""
    return thresholds(inst) - pairwise_distances(inst)


def near_ties(inst: GeometricInstance, margin: float = DEFAULT_MARGIN) -> list:
    """Pairs ``(u, v, clearance)`` whose distance is within ``margin`` of the threshold."""
    n = len(inst)
    if n < 2:
        return []
    cl = clearances(inst)
    iu, iv = np.triu_indices(n, 1)
    close = np.abs(cl[iu, iv]) <= margin
    return [(int(u), int(v), float(cl[u, v])) for u, v in zip(iu[close], iv[close])]


def intersection_graph(inst: GeometricInstance, margin: float = DEFAULT_MARGIN, warn: bool = True) -> Graph:
    """Graph with an edge for every intersecting (closed) pair.

    Ball mode tests ``|c_u - c_v|^2 <= (r_u + r_v)^2``; point mode tests
    ``|p_u - p_v|^2 <= threshold^2``. Pairs within ``margin`` of the threshold
    keep that decision but are reported through :class:`DegenerateInputWarning`.
    """
    n = len(inst)
    if n == 0:
        return Graph(0, [], inst.weights)
    c = inst.centers()
    diff = c[:, None, :] - c[None, :, :]
    sq = (diff ** 2).sum(-1)
    thr = thresholds(inst)
    adj = sq <= thr * thr
    np.fill_diagonal(adj, False)
    nbrs = [np.flatnonzero(adj[v]).tolist() for v in range(n)]
    if warn and margin > 0:
        ties = near_ties(inst, margin)
        if ties:
            warnings.warn(DegenerateInputWarning(ties), stacklevel=2)
    return Graph(n, nbrs, inst.weights)


def rigid_motion(inst: GeometricInstance, rotation: np.ndarray, translation) -> GeometricInstance:
    c = inst.centers() @ np.asarray(rotation).T + np.asarray(translation)
    if inst.kind == "points":
        return GeometricInstance(inst.dim, points=[tuple(p) for p in c], threshold=inst.threshold,
                                 weights=inst.weights)
    return GeometricInstance(inst.dim, balls=[Ball(tuple(p), b.radius) for p, b in zip(c, inst.balls)],
                             weights=inst.weights)
