"""Exact maximum (weight) independent set on bipartite graphs."""
from __future__ import annotations

from collections import deque

from .graphkit import Graph, is_proper_coloring

FLOW_SLACK = 1e-9


class ImproperColoringError(ValueError):
    pass


def _check(g: Graph, coloring):
    if coloring is None or not is_proper_coloring(g, coloring):
        raise ImproperColoringError("coloring is not a proper 2-coloring of the graph")


def max_matching(g: Graph, coloring) -> list:
    """Maximum-cardinality matching as a ``mate`` list (``None`` = unmatched).

    Hopcroft-Karp: BFS layers from free side-0 vertices, then vertex-disjoint
    shortest augmenting paths by DFS, until no augmenting path remains.
    """
    _check(g, coloring)
    left = [v for v in range(g.n) if coloring[v] == 0]
    mate: list = [None] * g.n
    inf = g.n + 1

    while True:
        dist = {}
        queue = deque()
        for u in left:
            if mate[u] is None:
                dist[u] = 0
                queue.append(u)
        found = inf
        while queue:
            u = queue.popleft()
            if dist[u] >= found:
                continue
            for v in g.neighbors(u):
                w = mate[v]
                if w is None:
                    found = min(found, dist[u] + 1)
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if found == inf:
            break

        def augment(u):
            # iterative DFS along the layered graph
            stack = [(u, iter(g.neighbors(u)))]
            path = []
            while stack:
                x, it = stack[-1]
                advanced = False
                for v in it:
                    w = mate[v]
                    if w is None:
                        if dist[x] + 1 == found:
                            path.append((x, v))
                            for a, b in path:
                                mate[a], mate[b] = b, a
                            return True
                    elif dist.get(w) == dist[x] + 1:
                        path.append((x, v))
                        stack.append((w, iter(g.neighbors(w))))
                        advanced = True
                        break
                if not advanced:
                    stack.pop()
                    dist[x] = inf  # dead end for this phase
                    if path:
                        path.pop()
            return False

        for u in left:
            if mate[u] is None:
                augment(u)
    return mate


def matching_size(mate) -> int:
    return sum(1 for v, w in enumerate(mate) if w is not None and v < w)


def max_independent_set_bipartite(g: Graph, coloring) -> list[int]:
    """Maximum independent set via Konig: complement of a minimum vertex cover.

    The cover is read off the alternating reachability set Z from free side-0
    vertices: cover = (side0 \\ Z) | (side1 & Z).
    """
    mate = max_matching(g, coloring)
    reach = [False] * g.n
    queue = deque()
    for v in range(g.n):
        if coloring[v] == 0 and mate[v] is None:
            reach[v] = True
            queue.append(v)
    while queue:
        u = queue.popleft()
        # u is on side 0: cross by non-matching edges, come back by matching edges
        for v in g.neighbors(u):
            if not reach[v] and mate[u] != v:
                reach[v] = True
                w = mate[v]
                if w is not None and not reach[w]:
                    reach[w] = True
                    queue.append(w)
    result = [v for v in range(g.n) if reach[v] == (coloring[v] == 0)]
    assert g.is_independent(result)
    return result


def _integral(weights) -> bool:
    return all(float(w).is_integer() for w in weights)


def max_weight_independent_set_bipartite(g: Graph, coloring) -> list[int]:
    """Maximum-weight independent set from a minimum s-t cut.

    Network: source -> side-0 vertex (capacity w), side-1 vertex -> sink
    (capacity w), side-0 -> side-1 along every edge (infinite). The source side
    of a minimum cut gives the side-0 part of the answer, the sink side the
    side-1 part.
    """
    _check(g, coloring)
    weights = g.weights
    if any(w < 0 for w in weights):
        raise ValueError("negative vertex weight")
    exact = _integral(weights)
    if exact:
        weights = [int(w) for w in weights]
        eps = 0
        inf = sum(weights) + 1
    else:
        weights = [float(w) for w in weights]
        eps = FLOW_SLACK
        inf = float(sum(weights)) + 1.0

    n = g.n
    src, snk = n, n + 1
    # adjacency lists of edge ids; edges stored as parallel arrays with reverse at id ^ 1
    head, cap, adj = [], [], [[] for _ in range(n + 2)]

    def add(a, b, c):
        adj[a].append(len(head)); head.append(b); cap.append(c)
        adj[b].append(len(head)); head.append(a); cap.append(0)

    for v in range(n):
        if coloring[v] == 0:
            add(src, v, weights[v])
            for u in g.neighbors(v):
                add(v, u, inf)
        else:
            add(v, snk, weights[v])

    # Dinic: BFS levels, blocking flow by DFS with current-arc pointers
    while True:
        level = [-1] * (n + 2)
        level[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                if cap[e] > eps and level[head[e]] < 0:
                    level[head[e]] = level[u] + 1
                    queue.append(head[e])
        if level[snk] < 0:
            break
        ptr = [0] * (n + 2)
        while True:
            # find one augmenting path in the level graph
            path = []
            u = src
            while u != snk:
                while ptr[u] < len(adj[u]):
                    e = adj[u][ptr[u]]
                    if cap[e] > eps and level[head[e]] == level[u] + 1:
                        break
                    ptr[u] += 1
                else:
                    if u == src:
                        break
                    level[u] = -1  # prune
                    e = path.pop()
                    u = head[e ^ 1]
                    ptr[u] += 1
                    continue
                path.append(e)
                u = head[e]
            if u != snk:
                break
            push = min(cap[e] for e in path)
            for e in path:
                cap[e] -= push
                cap[e ^ 1] += push

    # residual reachability from the source
    seen = [False] * (n + 2)
    seen[src] = True
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for e in adj[u]:
            if cap[e] > eps and not seen[head[e]]:
                seen[head[e]] = True
                queue.append(head[e])
    result = [v for v in range(n) if seen[v] == (coloring[v] == 0)]
    assert g.is_independent(result)
    return result


def solve_bipartite(g: Graph, coloring, weighted: bool | None = None) -> list[int]:
    """Dispatch on weightedness: min-cut when ``g`` carries weights, Konig otherwise."""
    if weighted is None:
        weighted = g.weighted
    if weighted:
        return max_weight_independent_set_bipartite(g, coloring)
    return max_independent_set_bipartite(g, coloring)
