"""Shortest odd cycles via BFS on the bipartite double cover."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graphkit import Graph


@dataclass(frozen=True)
class OddCycle:
    vertices: tuple  # cyclic order v_1 .. v_g

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def _odd_walk_through(g: Graph, root: int, bound: int):
    """Shortest odd closed walk through ``root`` if shorter than ``bound``.

    BFS over states ``(vertex, parity)``; the walk closes when ``(root, 1)``
    is reached. Returns the walk as a vertex list without the repeated end.
    """
    n = g.n
    dist = [-1] * (2 * n)
    parent = [-1] * (2 * n)
    start = 2 * root
    target = 2 * root + 1
    dist[start] = 0
    queue = deque([start])
    while queue:
        state = queue.popleft()
        d = dist[state]
        if d + 1 >= bound:
            break
        u, p = divmod(state, 2)
        for v in g.neighbors(u):
            nxt = 2 * v + (p ^ 1)
            if dist[nxt] < 0:
                dist[nxt] = d + 1
                parent[nxt] = state
                if nxt == target:
                    walk = []
                    s = parent[target]
                    while s != start:
                        walk.append(s // 2)
                        s = parent[s]
                    walk.append(root)
                    walk.reverse()
                    return walk
                queue.append(nxt)
    return None


def reduce_to_simple_cycle(walk: list) -> list:
    """Shrink an odd closed walk to a simple odd cycle by cutting out detours.

    At a repeated vertex the walk splits into two closed walks whose lengths
    sum to the original; exactly one of them is odd and that one is kept.
    """
    walk = list(walk)
    assert len(walk) % 2 == 1
    while True:
        first = {}
        for j, v in enumerate(walk):
            if v in first:
                i = first[v]
                inner = walk[i:j]
                outer = walk[:i] + walk[j:]
                walk = inner if len(inner) % 2 == 1 else outer
                break
            first[v] = j
        else:
            return walk


def shortest_odd_cycle(g: Graph) -> OddCycle | None:
    """A minimum-length odd cycle of ``g``, or ``None`` when ``g`` is bipartite.

    Ties go to the smallest start vertex; BFS visits neighbors in increasing
    id order, so the parent chain is deterministic as well.
    """
    best = None
    bound = g.n + 2
    for root in range(g.n):
        if g.degree(root) < 2:
            continue
        walk = _odd_walk_through(g, root, bound)
        if walk is not None and len(walk) < bound:
            best, bound = walk, len(walk)
            if bound == 3:
                break
    if best is None:
        return None
    cycle = reduce_to_simple_cycle(best)
    assert len(cycle) == len(best), "minimum odd closed walk must already be simple"
    return OddCycle(tuple(cycle))


def assert_valid_cycle(g: Graph, c: OddCycle, induced: bool = True) -> bool:
    """True iff ``c`` is a simple odd cycle of ``g`` (and chordless if ``induced``)."""
    vs = tuple(c.vertices)
    k = len(vs)
    if k < 3 or k % 2 == 0 or len(set(vs)) != k:
        return False
    if any(not 0 <= v < g.n for v in vs):
        return False
    if any(not g.has_edge(vs[i], vs[(i + 1) % k]) for i in range(k)):
        return False
    if induced:
        for i in range(k):
            for j in range(i + 2, k):
                if (i, j) != (0, k - 1) and g.has_edge(vs[i], vs[j]):
                    return False
    return True
