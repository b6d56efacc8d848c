"""Maximum clique on disk graphs, unit ball graphs and diameter-bounded point sets.

Each frontend reduces to maximum independent set in the complement of a
local neighborhood and calls the approximation scheme there. The exact
unit-disk algorithm (farthest pair guess plus a co-bipartite split) serves as
the baseline.
"""
from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import numpy as np

from .bipartite import max_independent_set_bipartite, max_weight_independent_set_bipartite
from .eptas import EptasParams, run_eptas
from .geometry import GeometricInstance, diameter, intersection_graph
from .graphkit import Graph, complement, induced_subgraph, is_proper_coloring, iter_bits
from .oracle import brute_force_max_clique
from .solution import CliqueSolution

DISK_BETA = Fraction(1, 6)
UNIT_BALL_BETA = Fraction(1, 25)
NEIGHBORHOOD_VC_DIM = 4


class UnequalRadiiError(ValueError):
    pass


def clique_via_complement_mis(g: Graph, vertices, p: EptasParams, workers: int = 1):
    """Approximate a maximum clique of ``g[vertices]`` as an independent set of its complement.

    Returns the clique in ``g``'s ids and the scheme's diagnostics.
    """
    sub, mapping = induced_subgraph(g, vertices)
    res = run_eptas(complement(sub), p, workers)
    return [mapping[v] for v in res.vertices], res.diagnostics


def _better(g: Graph, a, b) -> bool:
    """Is clique ``a`` strictly better than ``b`` (weight, then lexicographic)."""
    wa, wb = g.total_weight(a), g.total_weight(b)
    if wa != wb:
        return wa > wb
    return tuple(sorted(a)) < tuple(sorted(b))


def max_clique_disk_graph(g: Graph, p: EptasParams, workers: int = 1) -> CliqueSolution:
    """Degeneracy branching on a (disk) graph given without geometry.

    Repeatedly takes a minimum-degree vertex ``v``: either ``v`` is in the
    clique, and the scheme runs on the complement of ``G[N[v]]``, or it is
    dropped. Branches that cannot beat the incumbent are skipped.
    """
    p = replace(p, beta=float(DISK_BETA), d=NEIGHBORHOOD_VC_DIM)
    alive = (1 << g.n) - 1
    best: list = []
    branches = 0
    runs = []
    while alive:
        degs = {v: (g.nbr_mask(v) & alive).bit_count() for v in iter_bits(alive)}
        bound = max(g.total_weight(list(iter_bits((g.nbr_mask(v) & alive) | 1 << v))) for v in degs)
        if best and bound <= g.total_weight(best):
            break
        v = min(degs, key=lambda u: (degs[u], u))
        closed = (g.nbr_mask(v) & alive) | 1 << v
        if not best or g.total_weight(list(iter_bits(closed))) > g.total_weight(best):
            branches += 1
            cand, diag = clique_via_complement_mis(g, list(iter_bits(closed)), p, workers)
            runs.append(_run_summary(v, diag))
            if not best or _better(g, cand, best):
                best = cand
        alive &= ~(1 << v)
    sol = CliqueSolution(tuple(best), "eptas-disk", epsilon=p.epsilon,
                         diagnostics={"beta": float(DISK_BETA), "d": NEIGHBORHOOD_VC_DIM,
                                      "branches": branches, "runs": runs})
    return sol.verify(g)


def max_clique_disks(inst: GeometricInstance, p: EptasParams, workers: int = 1) -> CliqueSolution:
    if inst.dim != 2:
        raise ValueError(f"disk frontend needs a 2-dimensional instance, got dim={inst.dim}")
    g = intersection_graph(inst)
    return max_clique_disk_graph(g, p, workers)


def max_clique_unit_ball_graph(g: Graph, p: EptasParams, workers: int = 1) -> CliqueSolution:
    """Guess a clique vertex ``v`` and run the scheme on the complement of ``G[N(v)]``.

    Vertices are tried by decreasing closed-neighborhood weight; the loop
    stops once that bound cannot beat the incumbent.
    """
    p = replace(p, beta=float(UNIT_BALL_BETA), d=NEIGHBORHOOD_VC_DIM)
    order = sorted(range(g.n), key=lambda v: (-g.total_weight(list(g.neighbors(v)) + [v]), v))
    best: list = []
    guesses = 0
    runs = []
    for v in order:
        bound = g.total_weight(list(g.neighbors(v)) + [v])
        if best and bound <= g.total_weight(best):
            break
        guesses += 1
        cand, diag = clique_via_complement_mis(g, g.neighbors(v), p, workers)
        runs.append(_run_summary(v, diag))
        cand = cand + [v]
        if not best or _better(g, cand, best):
            best = cand
    sol = CliqueSolution(tuple(best), "eptas-unit-ball", epsilon=p.epsilon,
                         diagnostics={"beta": float(UNIT_BALL_BETA), "d": NEIGHBORHOOD_VC_DIM,
                                      "guesses": guesses, "runs": runs})
    return sol.verify(g)


def max_clique_unit_balls(inst: GeometricInstance, p: EptasParams, workers: int = 1,
                          force: bool = False) -> CliqueSolution:
    if not inst.equal_radii() and not force:
        raise UnequalRadiiError("unit ball frontend needs equal radii (pass force=True to override)")
    g = intersection_graph(inst)
    sol = max_clique_unit_ball_graph(g, p, workers)
    if not inst.equal_radii():
        sol.diagnostics["forced"] = True
    return sol


def max_diameter_one_subset(points, p: EptasParams, workers: int = 1) -> CliqueSolution:
    """Large subset of 3-d points with diameter at most 1."""
    points = [tuple(map(float, q)) for q in points]
    if any(len(q) != 3 for q in points):
        raise ValueError("points must be 3-dimensional")
    if not points:
        return CliqueSolution((), "eptas-diameter", epsilon=p.epsilon, valid=True)
    inst = GeometricInstance.from_points(points, 1.0)
    sol = max_clique_unit_balls(inst, p, workers)
    sol.method = "eptas-diameter"
    diam = diameter([points[v] for v in sol.vertices]) if sol.vertices else 0.0
    sol.diagnostics["diameter"] = diam
    sol.valid = sol.valid and diam <= 1.0
    return sol


def _run_summary(v, diag) -> dict:
    return {
        "vertex": v,
        "n": diag.get("n"),
        "branch": diag.get("branch", "sampling"),
        "iterations": diag.get("iterations", 0),
        "branches": diag.get("branches", {}),
        "claim2_checks": diag.get("claim2_checks", 0),
        "claim2_violations": diag.get("claim2_violations", 0),
        "violation_count": diag.get("violation_count", 0),
        "best": diag.get("best"),
    }


def exact_unit_disk_clique(points, r: float = 1.0, weights=None) -> CliqueSolution:
    """Exact maximum clique of the unit disk graph (threshold ``2r``) on 2-d centers.

    For every pair ``(u, v)`` within ``2r`` keep the centers no farther from
    ``u`` and from ``v`` than ``d(u, v)``; each side of line ``uv`` is then a
    clique, so the complement of the survivors is bipartite and solved
    exactly. Points on the line go to side 0.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2) if len(points) else np.zeros((0, 2))
    n = len(pts)
    inst = GeometricInstance.from_points([tuple(q) for q in pts], 2 * r, weights=weights, dim=2)
    g = intersection_graph(inst, warn=False)
    if n == 0:
        return CliqueSolution((), "exact-unit-disk", valid=True)
    diff = pts[:, None, :] - pts[None, :, :]
    sq = (diff ** 2).sum(-1)
    limit = (2 * r) ** 2
    best = [max(range(n), key=lambda v: (g.weight(v), -v))]
    fallbacks = 0
    for u in range(n):
        for v in range(u + 1, n):
            d2 = sq[u, v]
            if d2 > limit:
                continue
            lens = np.flatnonzero((sq[u] <= d2) & (sq[v] <= d2)).tolist()
            if g.total_weight(lens) <= g.total_weight(best):
                continue
            a = pts[v] - pts[u]
            side = {w: 1 if a[0] * (pts[w][1] - pts[u][1]) - a[1] * (pts[w][0] - pts[u][0]) > 0 else 0
                    for w in lens}
            sub, mapping = induced_subgraph(g, lens)
            co = complement(sub)
            coloring = tuple(side[w] for w in mapping)
            if is_proper_coloring(co, coloring):
                solve = max_weight_independent_set_bipartite if g.weighted else max_independent_set_bipartite
                cand = [mapping[x] for x in solve(co, coloring)]
            else:
                # rounding broke a half-lens clique; solve the survivors exactly
                fallbacks += 1
                cand = [mapping[x] for x in brute_force_max_clique(sub).vertices]
            if _better(g, cand, best):
                best = cand
    sol = CliqueSolution(tuple(best), "exact-unit-disk", diagnostics={"rounding_fallbacks": fallbacks})
    return sol.verify(g)
