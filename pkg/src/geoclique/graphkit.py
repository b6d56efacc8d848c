"""Immutable simple graphs and the elementary procedures the solvers share.

Vertices are the dense ids ``0..n-1``. Adjacency is kept twice: sorted
neighbor tuples for iteration and one Python ``int`` bitmask per vertex for
constant-time edge queries and fast set algebra.
"""
from __future__ import annotations

import io
import math
import re
from collections import deque
from typing import Iterable, Sequence, TextIO

TwoColoring = tuple  # tuple[int, ...] with entries in {0, 1}


class MalformedInputError(ValueError):
    """Raised for structurally invalid graph input (bad ids, loops, syntax)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line}" + (f", column {column}" if column is not None else "") + f": {message}"
        super().__init__(message)
        self.line = line
        self.column = column


def iter_bits(mask: int):
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected vertex-weighted graph. Immutable after construction."""

    __slots__ = ("n", "_nbrs", "_masks", "_weights", "labels", "_m")

    def __init__(self, n: int, neighbors: Sequence[Iterable[int]], weights=None, labels=None):
        self.n = n
        nbrs = tuple(tuple(sorted(set(ns))) for ns in neighbors)
        if len(nbrs) != n:
            raise MalformedInputError(f"expected {n} neighbor lists, got {len(nbrs)}")
        self._nbrs = nbrs
        self._masks = tuple(mask_of(ns) for ns in nbrs)
        for v, m in enumerate(self._masks):
            if m >> v & 1:
                raise MalformedInputError(f"self-loop at vertex {v}")
            for u in nbrs[v]:
                if not 0 <= u < n:
                    raise MalformedInputError(f"vertex {u} out of range 0..{n - 1}")
                if not self._masks[u] >> v & 1:
                    raise MalformedInputError(f"asymmetric adjacency between {v} and {u}")
        if weights is not None:
            weights = tuple(weights)
            if len(weights) != n:
                raise MalformedInputError(f"expected {n} weights, got {len(weights)}")
            for w in weights:
                if not (math.isfinite(w) and w >= 0):
                    raise MalformedInputError(f"weight {w!r} is not finite and nonnegative")
        self._weights = weights
        self.labels = tuple(labels) if labels is not None else None
        self._m = sum(len(ns) for ns in nbrs) // 2

    def __setattr__(self, name, value):
        # each slot is written once, in __init__
        if hasattr(self, name):
            raise AttributeError(f"Graph is immutable; cannot reassign {name!r}")
        object.__setattr__(self, name, value)

    # -- queries -----------------------------------------------------------
    @property
    def m(self) -> int:
        return self._m

    @property
    def weighted(self) -> bool:
        return self._weights is not None

    @property
    def weights(self) -> tuple:
        return self._weights if self._weights is not None else (1,) * self.n

    def weight(self, v: int):
        return self._weights[v] if self._weights is not None else 1

    def total_weight(self, vertices: Iterable[int]):
        if self._weights is None:
            return sum(1 for _ in vertices)
        return sum(self._weights[v] for v in vertices)

    def neighbors(self, v: int) -> tuple:
        return self._nbrs[v]

    def nbr_mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    def edges(self) -> list:
        return [(u, v) for u in range(self.n) for v in self._nbrs[u] if u < v]

    def closed_nbr_mask(self, vertices: Iterable[int]) -> int:
        m = 0
        for v in vertices:
            m |= self._masks[v] | (1 << v)
        return m

    def is_independent(self, vertices: Iterable[int]) -> bool:
        s = mask_of(vertices)
        return all(not (self._masks[v] & s) for v in iter_bits(s))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        s = mask_of(vertices)
        return all((self._masks[v] | (1 << v)) & s == s for v in iter_bits(s))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._nbrs == other._nbrs and self._weights == other._weights

    def __hash__(self):
        return hash((self.n, self._nbrs, self._weights))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}{', weighted' if self.weighted else ''})"

    def with_weights(self, weights) -> "Graph":
        return Graph(self.n, self._nbrs, weights, self.labels)


def from_edge_list(n: int, edges: Iterable[tuple[int, int]], weights=None, labels=None) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse, loops are rejected."""
    if n < 0:
        raise MalformedInputError(f"negative vertex count {n}")
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedInputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise MalformedInputError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, nbrs, weights, labels)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    nbrs = [list(iter_bits(full & ~g.nbr_mask(v) & ~(1 << v))) for v in range(g.n)]
    return Graph(g.n, nbrs, g._weights, g.labels)


def bipartite_2coloring(g: Graph) -> TwoColoring | None:
    """Proper 2-coloring by BFS, or ``None`` if ``g`` has an odd cycle.

    Each component's smallest vertex gets color 0.
    """
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if color[v] < 0:
                    color[v] = color[u] ^ 1
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    return tuple(color)


def is_proper_coloring(g: Graph, coloring) -> bool:
    if len(coloring) != g.n:
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def bfs_distances(g: Graph, source: Iterable[int]) -> list[int]:
    """Multi-source BFS distances; ``-1`` marks unreachable vertices."""
    dist = [-1] * g.n
    queue = deque()
    for s in source:
        if dist[s] < 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def bfs_layers(g: Graph, source: Iterable[int]) -> tuple[list[list[int]], list[int]]:
    """Layers ``L_1..L_lambda`` around ``source`` plus the unreached vertices.

    ``layers[k-1]`` holds the vertices at distance exactly ``k``.
    """
    source = list(source)
    if not source:
        raise ValueError("bfs_layers needs a non-empty source set")
    for s in source:
        if not 0 <= s < g.n:
            raise MalformedInputError(f"source vertex {s} out of range")
    dist = bfs_distances(g, source)
    depth = max(dist, default=0)
    layers = [[] for _ in range(depth)]
    unreached = []
    for v, d in enumerate(dist):
        if d < 0:
            unreached.append(v)
        elif d > 0:
            layers[d - 1].append(v)
    return layers, unreached


def min_degree_vertex(g: Graph) -> int:
    if g.n == 0:
        raise ValueError("empty graph has no minimum-degree vertex")
    return min(range(g.n), key=lambda v: (g.degree(v), v))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices`` relabelled densely in increasing id order.

    Returns the subgraph and ``mapping`` with ``mapping[new] = old``.
    """
    mapping = sorted(set(vertices))
    for v in mapping:
        if not 0 <= v < g.n:
            raise MalformedInputError(f"vertex {v} out of range 0..{g.n - 1}")
    index = {old: new for new, old in enumerate(mapping)}
    nbrs = [[index[u] for u in g.neighbors(v) if u in index] for v in mapping]
    weights = [g._weights[v] for v in mapping] if g.weighted else None
    labels = [g.labels[v] for v in mapping] if g.labels is not None else None
    return Graph(len(mapping), nbrs, weights, labels), mapping


def induced_by_mask(g: Graph, mask: int) -> tuple[Graph, list[int]]:
    return induced_subgraph(g, iter_bits(mask))


def disjoint_union(a: Graph, b: Graph, cross_edges: Iterable[tuple[int, int]] = ()) -> Graph:
    """Union of ``a`` and ``b`` (``b`` shifted by ``a.n``) plus optional cross edges."""
    edges = a.edges() + [(u + a.n, v + a.n) for u, v in b.edges()]
    edges += [(u, v + a.n) for u, v in cross_edges]
    weights = None
    if a.weighted or b.weighted:
        weights = list(a.weights) + list(b.weights)
    return from_edge_list(a.n + b.n, edges, weights)


# -- DIMACS-like text format ------------------------------------------------

def _parse_weight(token: str, lineno: int, col: int):
    try:
        w = int(token)
    except ValueError:
        try:
            w = float(token)
        except ValueError:
            raise MalformedInputError(f"bad weight {token!r}", lineno, col) from None
    return w


def _int_token(token: str, lineno: int, col: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise MalformedInputError(f"bad integer {token!r}", lineno, col) from None


def read_dimacs(stream: TextIO | str) -> Graph:
    """Parse ``p edge n m`` / ``e u v`` / ``w v weight`` lines (1-based ids).

    Errors carry the 1-based line and column of the offending token.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    n = None
    declared_m = None
    edges = []
    weights = None
    for lineno, raw in enumerate(stream, start=1):
        found = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", raw)]
        if not found or found[0][0].startswith("c"):
            continue
        tokens = [t for t, _ in found]
        cols = [c for _, c in found]
        kind, first = tokens[0], cols[0]
        if kind == "p":
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise MalformedInputError("expected 'p edge <n> <m>'", lineno, first)
            if n is not None:
                raise MalformedInputError("duplicate problem line", lineno, first)
            n = _int_token(tokens[2], lineno, cols[2])
            declared_m = _int_token(tokens[3], lineno, cols[3])
            if n < 0 or declared_m < 0:
                raise MalformedInputError("negative size in problem line", lineno, first)
        elif kind == "e":
            if n is None:
                raise MalformedInputError("edge before problem line", lineno, first)
            if len(tokens) != 3:
                raise MalformedInputError("expected 'e <u> <v>'", lineno, first)
            ends = []
            for tok, col in zip(tokens[1:], cols[1:]):
                x = _int_token(tok, lineno, col) - 1
                if not 0 <= x < n:
                    raise MalformedInputError(f"vertex {x + 1} out of range 1..{n}", lineno, col)
                ends.append(x)
            if ends[0] == ends[1]:
                raise MalformedInputError(f"self-loop at vertex {ends[0] + 1}", lineno, cols[1])
            edges.append(tuple(ends))
        elif kind == "w":
            if n is None:
                raise MalformedInputError("weight before problem line", lineno, first)
            if len(tokens) != 3:
                raise MalformedInputError("expected 'w <v> <weight>'", lineno, first)
            v = _int_token(tokens[1], lineno, cols[1]) - 1
            if not 0 <= v < n:
                raise MalformedInputError(f"vertex {v + 1} out of range 1..{n}", lineno, cols[1])
            w = _parse_weight(tokens[2], lineno, cols[2])
            if not (math.isfinite(w) and w >= 0):
                raise MalformedInputError(f"weight {tokens[2]} must be finite and >= 0", lineno, cols[2])
            if weights is None:
                weights = [1] * n
            weights[v] = w
        else:
            raise MalformedInputError(f"unknown line type {kind!r}", lineno, first)
    if n is None:
        raise MalformedInputError("missing 'p edge' line")
    g = from_edge_list(n, edges, weights)
    if declared_m != len(edges) and declared_m != g.m:
        raise MalformedInputError(f"header declares {declared_m} edges, found {len(edges)}")
    return g


def write_dimacs(g: Graph, stream: TextIO | None = None) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    if g.weighted:
        lines += [f"w {v + 1} {w!r}" for v, w in enumerate(g.weights)]
    text = "\n".join(lines) + "\n"
    if stream is not None:
        stream.write(text)
    return text
