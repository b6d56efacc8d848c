"""Random geometric instances, 2-subdivisions, and the co-2-subdivision embeddings.

Two constructions realize the complement of any 2-subdivided graph: as unit
balls in R^4, and as 3-d balls with radii in ``[1, 1 + eps]``. The small
constants are found by halving until the built instance passes
:func:`verify_embedding` with every pair clearing its threshold by the margin.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .geometry import DEFAULT_MARGIN, GeometricInstance, pairwise_distances, thresholds
from .graphkit import Graph, complement, from_edge_list

MAX_SHRINK = 60
SQRT3 = math.sqrt(3.0)


class ConstructionInfeasible(RuntimeError):
    pass


# -- subdivisions ------------------------------------------------------------

def two_subdivision(g: Graph) -> Graph:
    """Replace every edge ``uv`` (``u < v``) by the path ``u - a_e - b_e - v``.

    Original vertices keep their ids; edge ``k`` in sorted order gets
    ``a = n + 2k`` and ``b = n + 2k + 1``.
    """
    edges = g.edges()
    n = g.n
    new_edges = []
    labels = [("v", v) for v in range(n)]
    for k, (u, v) in enumerate(edges):
        a, b = n + 2 * k, n + 2 * k + 1
        new_edges += [(u, a), (a, b), (b, v)]
        labels += [("e+", u, v), ("e-", u, v)]
    return from_edge_list(n + 2 * len(edges), new_edges, labels=labels)


def co2subdivision(g: Graph) -> Graph:
    return complement(two_subdivision(g))


# -- configuration and verification ------------------------------------------

@dataclass(frozen=True)
class EmbeddingConfig:
    epsilon: float = 0.25  # pull-back of the vertex points (R^4 construction)
    epsilon_prime: float | None = None  # push magnitude / vertex spacing; default derived
    epsilon_second: float | None = None  # radius slack (ball construction)
    margin: float = DEFAULT_MARGIN
    eta: float | None = None  # filled in by the construction
    max_iterations: int = MAX_SHRINK


@dataclass
class EmbeddingReport:
    passed: bool
    graph_equal: bool
    min_clearance: float
    offending: list = field(default_factory=list)  # (u, v, expected_edge, clearance)
    message: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def verify_embedding(inst: GeometricInstance, g: Graph, cfg: EmbeddingConfig | None = None,
                     expected: Graph | None = None) -> EmbeddingReport:
    """Check that ``inst`` realizes ``co2subdivision(g)`` with clearance ``cfg.margin``.

    Clearance of a pair is ``threshold - distance`` for a required edge and
    ``distance - threshold`` for a required non-edge.
    """
    margin = (cfg or EmbeddingConfig()).margin
    target = expected if expected is not None else co2subdivision(g)
    if len(inst) != target.n:
        return EmbeddingReport(False, False, -math.inf,
                               message=f"instance has {len(inst)} objects, graph needs {target.n}")
    n = target.n
    if n < 2:
        return EmbeddingReport(True, True, math.inf)
    dist = pairwise_distances(inst)
    thr = thresholds(inst)
    want = np.zeros((n, n), dtype=bool)
    for u, v in target.edges():
        want[u, v] = want[v, u] = True
    signed = np.where(want, thr - dist, dist - thr)
    iu, iv = np.triu_indices(n, 1)
    vals = signed[iu, iv]
    sq = (dist ** 2)
    actual = sq <= thr * thr
    graph_equal = bool(np.all(actual[iu, iv] == want[iu, iv]))
    bad = vals < margin
    offending = [(int(u), int(v), bool(want[u, v]), float(signed[u, v])) for u, v in zip(iu[bad], iv[bad])]
    offending.sort(key=lambda t: t[3])
    min_cl = float(vals.min())
    passed = graph_equal and not offending
    msg = "ok" if passed else f"{len(offending)} pair(s) below margin {margin:g}"
    return EmbeddingReport(passed, graph_equal, min_cl, offending[:50], msg)


def _edge_angles(m: int) -> np.ndarray:
    k = np.arange(1, m + 1)
    return math.pi / 4 + k * (math.pi / 2) / (m + 1)


def _eta(m: int) -> float:
    """Largest distance between ``pi(p+(e))`` and ``pi(p-(e'))`` for ``e != e'``."""
    if m < 2:
        return 0.0
    gap = (math.pi / 2) / (m + 1)
    return 2 * math.cos(gap / 2)


def _metadata(g: Graph, kind: str, cfg: EmbeddingConfig, report: EmbeddingReport, **extra) -> dict:
    return {
        "generator": kind,
        "source_graph": {"n": g.n, "edges": [list(e) for e in g.edges()]},
        "config": {k: v for k, v in asdict(cfg).items()},
        "verification": {"passed": report.passed, "min_clearance": report.min_clearance},
        **extra,
    }


# -- R^4 unit balls ------------------------------------------------------------

def _build_r4(g: Graph, eps: float, eps_p: float) -> np.ndarray:
    n, edges = g.n, g.edges()
    m = len(edges)
    if n == 1:
        phis = np.array([math.pi / 2])
    else:
        phis = math.pi / 3 + np.arange(n) * (math.pi / 3) / (n - 1)
    dirs = np.zeros((n, 4))
    dirs[:, 2] = np.cos(phis)
    dirs[:, 3] = np.sin(phis)
    pts = np.zeros((n + 2 * m, 4))
    pts[:n] = (SQRT3 - eps) * dirs
    thetas = _edge_angles(m)
    for k, (u, v) in enumerate(edges):
        q = np.array([math.cos(thetas[k]), math.sin(thetas[k]), 0.0, 0.0])
        pts[n + 2 * k] = q - (eps + eps_p) * dirs[u]
        pts[n + 2 * k + 1] = -q - (eps + eps_p) * dirs[v]
    return pts


def embed_co2subdivision_r4(g: Graph, cfg: EmbeddingConfig | None = None) -> GeometricInstance:
    """Unit balls in R^4 (centers within distance 2 intersect) realizing ``co2subdivision(g)``.

    Edge points sit on a diameter-2 circle in the (x, y)-plane, ``p+`` and
    ``p-`` of an edge antipodal; vertex points lie on an arc of radius
    ``sqrt(3) - eps`` in the (z, t)-plane, where every edge point is at
    distance ``sqrt(4 - 2 sqrt(3) eps + eps^2)``. Each edge point is then
    pushed by ``eps + eps'`` away from the vertex it must miss.
    """
    cfg = cfg or EmbeddingConfig()
    target = co2subdivision(g)
    n, m = g.n, g.m
    eta = _eta(m)
    eps = min(cfg.epsilon, max(2 - eta, 1e-3) / 2)
    ratio = (cfg.epsilon_prime / eps) if cfg.epsilon_prime else 1e-3
    for _ in range(cfg.max_iterations):
        eps_p = eps * ratio
        pts = _build_r4(g, eps, eps_p)
        inst = GeometricInstance.from_points([tuple(p) for p in pts], 2.0, dim=4)
        report = verify_embedding(inst, g, cfg, target)
        if report.passed:
            final = replace(cfg, epsilon=eps, epsilon_prime=eps_p, eta=eta)
            inst.metadata.update(_metadata(g, "co2sub-r4", final, report))
            return inst
        edge_edge = any(u >= n and v >= n for u, v, _, _ in report.offending)
        too_far = any(want for _, _, want, _ in report.offending)
        if edge_edge or not too_far:
            eps /= 2
        else:
            ratio /= 2
    raise ConstructionInfeasible(f"R^4 embedding failed after {cfg.max_iterations} shrink steps: {report.message}")


# -- 3-d balls with radii in [1, 1 + eps] ---------------------------------------

def _build_balls(g: Graph, eps_p: float, eps_s: float):
    n, edges = g.n, g.edges()
    m = len(edges)
    heights = SQRT3 + np.arange(1, n + 1) * eps_p
    vpts = np.zeros((n, 3))
    vpts[:, 2] = heights
    radii = np.sqrt(1 + heights ** 2) - 1 + eps_s
    pts = np.zeros((n + 2 * m, 3))
    rad = np.ones(n + 2 * m)
    pts[:n] = vpts
    rad[:n] = radii
    thetas = _edge_angles(m)
    for k, (u, v) in enumerate(edges):
        q = np.array([math.cos(thetas[k]), math.sin(thetas[k]), 0.0])
        pts[n + 2 * k] = _push(q, u, vpts, radii)
        pts[n + 2 * k + 1] = _push(-q, v, vpts, radii)
    return pts, rad


def _push(q, i, vpts, radii):
    """Move ``q`` straight away from vertex ball ``i`` just far enough to miss it.

    Along ``u = (q - p_i)/|q - p_i|`` the distance to ``p_i`` grows exactly by
    the step; for every other vertex ball the step at which ``q`` would leave
    it solves a quadratic. The step is the midpoint between the two.
    """
    u = q - vpts[i]
    d_i = np.linalg.norm(u)
    u = u / d_i
    need = radii[i] + 1 - d_i  # minimum step (= eps'')
    limit = math.inf
    for k in range(len(vpts)):
        if k == i:
            continue
        w = q - vpts[k]
        b = float(u @ w)
        c0 = float(w @ w) - (radii[k] + 1) ** 2
        limit = min(limit, -b + math.sqrt(b * b - c0))
    step = need * 2 if limit == math.inf else (need + limit) / 2
    return q + step * u


def embed_co2subdivision_eps_balls(g: Graph, target_eps: float, cfg: EmbeddingConfig | None = None) -> GeometricInstance:
    """3-d balls with radii in ``[1, 1 + target_eps]`` realizing ``co2subdivision(g)``.

    Vertex ``v_i`` sits at ``(0, 0, sqrt(3) + i eps')`` with radius
    ``sqrt(1 + (sqrt(3) + i eps')^2) - 1 + eps''``, so it just overlaps every
    unit ball centered on the diameter-2 circle of the plane ``z = 0``; edge
    points are then pushed off the one vertex ball they must avoid.
    """
    if not target_eps > 0:
        raise ValueError("target_eps must be positive")
    cfg = cfg or EmbeddingConfig()
    target = co2subdivision(g)
    n = max(g.n, 1)
    # split the radius budget: half for the vertex spacing, a quarter for eps''
    h_max = math.sqrt((2 + target_eps / 2) ** 2 - 1)
    eps_p = cfg.epsilon_prime or (h_max - SQRT3) / n
    eps_s = cfg.epsilon_second or target_eps / 4
    eta = _eta(g.m)
    for _ in range(cfg.max_iterations):
        pts, rad = _build_balls(g, eps_p, eps_s)
        inst = GeometricInstance.from_balls([tuple(p) for p in pts], rad.tolist())
        report = verify_embedding(inst, g, cfg, target)
        in_range = bool(np.all(rad >= 1) and np.all(rad <= 1 + target_eps))
        if report.passed and in_range:
            final = replace(cfg, epsilon_prime=eps_p, epsilon_second=eps_s, eta=eta)
            inst.metadata.update(_metadata(g, "co2sub-balls", final, report, target_eps=target_eps))
            return inst
        if not in_range:
            eps_p /= 2
            eps_s /= 2
        else:
            eps_s /= 2
    raise ConstructionInfeasible(
        f"ball embedding failed after {cfg.max_iterations} shrink steps: {report.message}")


# -- random instances ----------------------------------------------------------

KINDS = ("disks2d", "balls3d", "points3d", "points2d")


def gen_random_instance(kind: str, n: int, radius_range=(0.5, 1.5), box: float = 10.0, seed: int = 0,
                        threshold: float = 1.0) -> GeometricInstance:
    """Uniform placement in ``[0, box]^d``; same arguments give the same instance.

    Disks/balls draw radii uniformly from ``radius_range``; point kinds use
    ``threshold`` as the adjacency distance.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown instance kind {kind!r}; expected one of {KINDS}")
    if n < 0:
        raise ValueError("n must be >= 0")
    if not box > 0:
        raise ValueError("box must be positive")
    lo, hi = radius_range
    if not 0 <= lo <= hi:
        raise ValueError(f"invalid radius range {radius_range!r}")
    rng = np.random.default_rng(seed)
    dim = 2 if kind.endswith("2d") else 3
    centers = rng.uniform(0.0, box, size=(n, dim))
    meta = {"generator": kind, "n": n, "seed": seed, "box": box}
    if kind.startswith("points"):
        meta["threshold"] = threshold
        return GeometricInstance.from_points([tuple(c) for c in centers], threshold, metadata=meta, dim=dim)
    radii = rng.uniform(lo, hi, size=n) if hi > lo else np.full(n, float(lo))
    meta["radius_range"] = [lo, hi]
    inst = GeometricInstance.from_balls([tuple(c) for c in centers], radii.tolist(), metadata=meta)
    if n == 0:
        inst = GeometricInstance(dim, metadata=meta)
    return inst


def unit_disk_edge_probability(threshold: float, box: float) -> float:
    """P(two uniform points of the square ``[0, box]^2`` lie within ``threshold``), threshold <= box."""
    t = threshold / box
    return math.pi * t ** 2 - 8 * t ** 3 / 3 + t ** 4 / 2
