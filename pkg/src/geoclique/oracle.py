"""Exhaustive ground truth: clique, independent set, odd girth, iocp <= 1, VC-dimension.

Every oracle refuses inputs above its budget instead of truncating.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .graphkit import Graph, complement, iter_bits
from .solution import CliqueSolution


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    clique_max_n: int = 24
    mis_max_n: int = 24
    girth_max_n: int = 24
    iocp_max_n: int = 14
    vc_max_n: int = 16
    time_cap: float | None = None

    def __post_init__(self):
        caps = (self.clique_max_n, self.mis_max_n, self.girth_max_n, self.iocp_max_n, self.vc_max_n)
        if min(caps) <= 0 or (self.time_cap is not None and self.time_cap <= 0):
            raise ValueError("oracle caps must be positive")


DEFAULT_BUDGET = OracleBudget()


class _Clock:
    def __init__(self, cap):
        self.deadline = None if cap is None else time.monotonic() + cap
        self.ticks = 0

    def tick(self):
        self.ticks += 1
        if self.deadline is not None and self.ticks & 1023 == 1 and time.monotonic() > self.deadline:
            raise BudgetExceeded("oracle time cap exceeded")


def _require(n, cap, what):
    if n > cap:
        raise BudgetExceeded(f"{what} oracle refuses n={n} (cap {cap})")


def brute_force_max_clique(g: Graph, weighted: bool | None = None,
                           budget: OracleBudget = DEFAULT_BUDGET) -> CliqueSolution:
    """Exact maximum (weight) clique: Bron-Kerbosch with Tomita pivoting plus bound pruning."""
    _require(g.n, budget.clique_max_n, "clique")
    if weighted is None:
        weighted = g.weighted
    w = g.weights if weighted else (1,) * g.n
    clock = _Clock(budget.time_cap)
    masks = [g.nbr_mask(v) for v in range(g.n)]
    best = [0, ()]

    def mass(mask):
        return sum(w[v] for v in iter_bits(mask))

    def expand(r, r_w, p, x):
        clock.tick()
        if not p and not x:
            if r_w > best[0] or (r_w == best[0] and not best[1]):
                best[0], best[1] = r_w, tuple(r)
            return
        if r_w + mass(p) <= best[0] and best[1]:
            return
        pivot = max(iter_bits(p | x), key=lambda u: (masks[u] & p).bit_count())
        for v in iter_bits(p & ~masks[pivot]):
            r.append(v)
            expand(r, r_w + w[v], p & masks[v], x & masks[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand([], 0, (1 << g.n) - 1, 0)
    sol = CliqueSolution(tuple(sorted(best[1])), "brute-force")
    return sol.verify(g)


def brute_force_mis(g: Graph, weighted: bool | None = None,
                    budget: OracleBudget = DEFAULT_BUDGET) -> list[int]:
    """Exact maximum (weight) independent set.

    Branches on the closed neighborhood of a minimum-degree vertex (every
    maximal independent set meets it), pruning by remaining total weight.
    """
    _require(g.n, budget.mis_max_n, "MIS")
    if weighted is None:
        weighted = g.weighted
    w = g.weights if weighted else (1,) * g.n
    clock = _Clock(budget.time_cap)
    masks = [g.nbr_mask(v) for v in range(g.n)]
    best = [-1, ()]

    def search(rest, chosen, cw):
        clock.tick()
        if not rest:
            if cw > best[0]:
                best[0], best[1] = cw, tuple(chosen)
            return
        if cw + sum(w[v] for v in iter_bits(rest)) <= best[0]:
            return
        v = min(iter_bits(rest), key=lambda u: ((masks[u] & rest).bit_count(), u))
        for u in iter_bits((masks[v] | (1 << v)) & rest):
            chosen.append(u)
            search(rest & ~(masks[u] | (1 << u)), chosen, cw + w[u])
            chosen.pop()

    search((1 << g.n) - 1, [], 0)
    return sorted(best[1])


def brute_force_odd_girth(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int | None:
    """Minimum odd cycle length by DFS over simple paths; ``None`` if bipartite."""
    _require(g.n, budget.girth_max_n, "odd girth")
    clock = _Clock(budget.time_cap)
    best = [g.n + 1]

    def dfs(start, u, visited, length):
        clock.tick()
        # length = number of vertices on the path start..u
        for v in g.neighbors(u):
            if v == start and length >= 3 and length % 2 == 1:
                best[0] = min(best[0], length)
            elif v > start and not visited >> v & 1 and length + 1 < best[0]:
                dfs(start, v, visited | 1 << v, length + 1)

    for s in range(g.n):
        dfs(s, s, 1 << s, 1)
        if best[0] == 3:
            break
    return best[0] if best[0] <= g.n else None


def induced_odd_cycles(g: Graph, clock=None) -> list[tuple]:
    """All induced (chordless) odd cycles, each once in canonical form.

    Canonical form: the smallest vertex first, then the direction whose
    second vertex is smaller than the last.
    """
    clock = clock or _Clock(None)
    masks = [g.nbr_mask(v) for v in range(g.n)]
    out = []

    def extend(path, inner_mask):
        # inner_mask: path vertices except the last one
        clock.tick()
        s, last = path[0], path[-1]
        for v in g.neighbors(last):
            if v <= s or (inner_mask | (1 << last)) >> v & 1:
                continue
            # a chordless path may touch only `last` and, to close, `s`
            if masks[v] & inner_mask & ~(1 << s):
                continue
            if len(path) >= 2 and masks[v] >> s & 1:
                if (len(path) + 1) % 2 == 1 and path[1] < v:
                    out.append(tuple(path) + (v,))
                continue
            path.append(v)
            extend(path, inner_mask | (1 << last))
            path.pop()

    for s in range(g.n):
        extend([s], 0)
    return out


def induced_odd_cycles_by_subsets(g: Graph) -> list[int]:
    """Masks of vertex sets inducing an odd cycle, by subset enumeration (n <= ~16)."""
    masks = [g.nbr_mask(v) for v in range(g.n)]
    found = []
    for k in range(3, g.n + 1, 2):
        for combo in combinations(range(g.n), k):
            s = 0
            for v in combo:
                s |= 1 << v
            if any((masks[v] & s).bit_count() != 2 for v in combo):
                continue
            # 2-regular: a cycle iff connected
            seen = 1 << combo[0]
            frontier = seen
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= masks[v] & s
                frontier = nxt & ~seen
                seen |= nxt
            if seen == s:
                found.append(s)
    return found


def _anti_adjacent_pair(g: Graph, cycle_masks: list[int]):
    closed = []
    for c in cycle_masks:
        m = c
        for v in iter_bits(c):
            m |= g.nbr_mask(v)
        closed.append(m)
    for i in range(len(cycle_masks)):
        for j in range(i + 1, len(cycle_masks)):
            if not closed[i] & cycle_masks[j]:
                return i, j
    return None


def check_iocp_le_one(g: Graph, budget: OracleBudget = DEFAULT_BUDGET):
    """``(True, None)`` iff no two induced odd cycles are disjoint and anti-adjacent.

    On failure returns ``(False, (cycle_a, cycle_b))``.
    """
    _require(g.n, budget.iocp_max_n, "iocp")
    cycles = induced_odd_cycles(g, _Clock(budget.time_cap))
    masks = []
    for c in cycles:
        m = 0
        for v in c:
            m |= 1 << v
        masks.append(m)
    pair = _anti_adjacent_pair(g, masks)
    if pair is None:
        return True, None
    return False, (cycles[pair[0]], cycles[pair[1]])


def check_iocp_le_one_by_subsets(g: Graph, budget: OracleBudget = DEFAULT_BUDGET):
    """Second implementation of :func:`check_iocp_le_one` from subset enumeration."""
    _require(g.n, budget.iocp_max_n, "iocp")
    masks = induced_odd_cycles_by_subsets(g)
    pair = _anti_adjacent_pair(g, masks)
    if pair is None:
        return True, None
    return False, (tuple(iter_bits(masks[pair[0]])), tuple(iter_bits(masks[pair[1]])))


def vc_dimension_neighborhood(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """VC-dimension of the open-neighborhood hypergraph, by increasing set size.

    Subsets of a shattered set are shattered, so the search stops at the first
    size with no shattered set.
    """
    _require(g.n, budget.vc_max_n, "VC-dimension")
    clock = _Clock(budget.time_cap)
    masks = [g.nbr_mask(v) for v in range(g.n)]
    best = 0
    for k in range(1, g.n + 1):
        if 1 << k > g.n:
            break
        hit = False
        for combo in combinations(range(g.n), k):
            clock.tick()
            x = 0
            for v in combo:
                x |= 1 << v
            if len({m & x for m in masks}) == 1 << k:
                hit = True
                break
        if not hit:
            break
        best = k
    return best


def max_clique_size_via_complement(g: Graph) -> int:
    return len(brute_force_mis(complement(g), weighted=False))
