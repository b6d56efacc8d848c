import math
import random
import statistics

import numpy as np
import pytest

from conftest import random_graph
from geoclique.docio import dumps_instance
from geoclique.generators import (
    ConstructionInfeasible, EmbeddingConfig, _build_r4, co2subdivision, embed_co2subdivision_eps_balls,
    embed_co2subdivision_r4, gen_random_instance, two_subdivision, unit_disk_edge_probability, verify_embedding,
)
from geoclique.geometry import GeometricInstance, intersection_graph
from geoclique.graphkit import bfs_distances, complement, from_edge_list

EDGE = from_edge_list(2, [(0, 1)])
TRIANGLE = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])


def _connected(g):
    return g.n == 0 or min(bfs_distances(g, [0])) >= 0


def _is_path(g):
    return _connected(g) and g.m == g.n - 1 and max(g.degree(v) for v in range(g.n)) <= 2


def _is_cycle(g):
    return _connected(g) and all(g.degree(v) == 2 for v in range(g.n))


def test_edge_becomes_p4():
    s = two_subdivision(EDGE)
    assert s.n == 4 and sorted(s.edges()) == [(0, 2), (1, 3), (2, 3)]
    assert _is_path(s)


def test_triangle_becomes_c9():
    s = two_subdivision(TRIANGLE)
    assert s.n == 9 and _is_cycle(s)


def test_subdivision_counts():
    rng = random.Random(0)
    for _ in range(30):
        g = random_graph(rng.randint(0, 10), 0.3, rng)
        s, c = two_subdivision(g), co2subdivision(g)
        assert (s.n, s.m) == (g.n + 2 * g.m, 3 * g.m)
        assert c.m == math.comb(s.n, 2) - 3 * g.m
        assert c.labels == s.labels


def test_co2subdivision_of_edge_is_p4():
    c = co2subdivision(EDGE)
    assert c.n == 4 and _is_path(c)
    assert co2subdivision(TRIANGLE) == complement(two_subdivision(TRIANGLE))


# -- R^4 ---------------------------------------------------------------------

def test_shared_distance_formula():
    eps = 0.01
    # eps' = -eps cancels the push and leaves edge points on the circle
    pts = _build_r4(EDGE, eps, -eps)
    want = math.sqrt(4 - 2 * math.sqrt(3) * eps + eps ** 2)
    for v in (0, 1):
        for e in (2, 3):
            assert np.linalg.norm(pts[v] - pts[e]) == pytest.approx(want, rel=1e-12)
    assert want == pytest.approx(1.99135, abs=1e-5) and want < 2


def test_r4_single_edge():
    inst = embed_co2subdivision_r4(EDGE)
    c = inst.centers()
    d = lambda a, b: float(np.linalg.norm(c[a] - c[b]))
    mu = EmbeddingConfig().margin
    # p+ = 2 must miss u = 0, p- = 3 must miss v = 1
    assert d(2, 3) > 2 and d(0, 2) > 2 and d(1, 3) > 2
    for a, b in [(0, 1), (0, 3), (1, 2)]:
        assert d(a, b) <= 2 - mu
    assert inst.metadata["verification"]["passed"]


@pytest.mark.parametrize("g", [EDGE, TRIANGLE, from_edge_list(1, []), from_edge_list(4, [(0, 1), (2, 3)])])
def test_r4_graph_equality(g):
    inst = embed_co2subdivision_r4(g)
    assert intersection_graph(inst, warn=False) == co2subdivision(g)
    assert verify_embedding(inst, g).passed


def test_r4_random_graphs():
    rng = random.Random(3)
    for _ in range(12):
        g = random_graph(rng.randint(2, 7), 0.4, rng)
        inst = embed_co2subdivision_r4(g)
        rep = verify_embedding(inst, g)
        assert rep.passed and rep.min_clearance >= EmbeddingConfig().margin


def test_r4_infeasible_is_reported():
    with pytest.raises(ConstructionInfeasible):
        embed_co2subdivision_r4(TRIANGLE, EmbeddingConfig(margin=0.5, max_iterations=3))


# -- eps-close balls --------------------------------------------------------------

def test_first_radius_at_limit():
    eps_s = 0.01
    assert math.sqrt(1 + 3) - 1 + eps_s == pytest.approx(1 + eps_s)


def test_balls_single_edge():
    inst = embed_co2subdivision_eps_balls(EDGE, 0.1)
    g = intersection_graph(inst, warn=False)
    assert not g.has_edge(0, 2) and not g.has_edge(1, 3)
    assert g.m == 3 and not g.has_edge(2, 3)


def test_balls_random_graphs_radii_in_range():
    rng = random.Random(4)
    for _ in range(12):
        g = random_graph(rng.randint(1, 8), 0.35, rng)
        while g.m > 12:
            g = random_graph(g.n, 0.25, rng)
        inst = embed_co2subdivision_eps_balls(g, 0.1)
        r = inst.radii()
        assert r.min() >= 1 and r.max() <= 1.1
        assert intersection_graph(inst, warn=False) == co2subdivision(g)


def test_balls_target_eps_positive():
    with pytest.raises(ValueError):
        embed_co2subdivision_eps_balls(EDGE, 0)


# -- verification -------------------------------------------------------------------

def test_sabotage_names_pair():
    inst = embed_co2subdivision_r4(TRIANGLE)
    centers = inst.centers().copy()
    centers[4] += np.array([0.5, 0, 0, 0])
    moved = GeometricInstance.from_points([tuple(c) for c in centers], 2.0, dim=4)
    rep = verify_embedding(moved, TRIANGLE)
    assert not rep.passed and rep.offending
    assert all(4 in (u, v) for u, v, _, _ in rep.offending)


def test_size_mismatch_fails_fast():
    rep = verify_embedding(embed_co2subdivision_r4(EDGE), TRIANGLE)
    assert not rep.passed and "needs 9" in rep.message


# -- random instances ----------------------------------------------------------------

def test_empty_instance():
    assert len(gen_random_instance("disks2d", 0)) == 0


@pytest.mark.parametrize("kind", ["disks2d", "balls3d", "points3d", "points2d"])
def test_same_seed_same_bytes(kind):
    assert dumps_instance(gen_random_instance(kind, 20, seed=5)) == dumps_instance(gen_random_instance(kind, 20, seed=5))
    assert dumps_instance(gen_random_instance(kind, 20, seed=5)) != dumps_instance(gen_random_instance(kind, 20, seed=6))


def test_invalid_arguments():
    for kw in [dict(kind="disks4d", n=3), dict(kind="disks2d", n=-1), dict(kind="disks2d", n=3, box=0),
               dict(kind="disks2d", n=3, radius_range=(2, 1))]:
        with pytest.raises(ValueError):
            gen_random_instance(**kw)


def test_edge_density_matches_analytic():
    n, tau, box, trials = 30, 1.0, 5.0, 1000
    counts = [intersection_graph(gen_random_instance("points2d", n, box=box, seed=s, threshold=tau), warn=False).m
              for s in range(trials)]
    want = math.comb(n, 2) * unit_disk_edge_probability(tau, box)
    se = statistics.stdev(counts) / math.sqrt(trials)
    assert abs(statistics.fmean(counts) - want) <= 5 * se
