"""Randomized approximation scheme for maximum (weight) independent set.

Targets graphs with bounded neighborhood VC-dimension ``d``, independence
number at least ``beta * n`` and induced odd cycle packing number at most
``i``. One iteration samples a candidate set ``S``, removes ``N[S]``, and
turns the residual graph bipartite by deleting a cheap odd-cycle transversal
built around a shortest odd cycle; the best union over all iterations wins.

Class membership is never checked. When a subgraph that the analysis
promises to be bipartite is not, the violation is recorded and (in robust
mode) a fallback keeps the output a valid independent set.
"""
from __future__ import annotations

import math
import random
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from fractions import Fraction

import mpmath

from .bipartite import solve_bipartite
from .graphkit import (
    Graph,
    bipartite_2coloring,
    bfs_distances,
    induced_subgraph,
    is_proper_coloring,
    iter_bits,
)
from .oddcycle import OddCycle, shortest_odd_cycle
from .oracle import OracleBudget, brute_force_mis

PAPER = "paper"
PRACTICAL = "practical"

# paper mode refuses to brute-force beyond this many vertices
PAPER_BRUTE_FORCE_LIMIT = 30
# paper mode refuses to start more sampling iterations than this
PAPER_MAX_ITERATIONS = 10**7
# t is only computed exactly when it has at most this many decimal digits
EXACT_T_DIGITS = 100_000


class ClassAssumptionViolated(RuntimeError):
    """A subgraph the analysis promises to be bipartite has an odd cycle."""

    def __init__(self, where: str, detail=None):
        super().__init__(f"class assumption violated in {where}" + (f": {detail}" if detail else ""))
        self.where = where
        self.detail = detail


class RefusalError(RuntimeError):
    """Paper-faithful constants make the requested run infeasible."""


def _rational(x) -> Fraction:
    return Fraction(x).limit_denominator(10**9)


@dataclass(frozen=True)
class EptasParams:
    epsilon: float
    beta: float = 1.0
    d: int = 4
    i: int = 1
    mode: str = PRACTICAL
    failure_prob: float = 1e-10
    seed: int = 0
    s_cap: int | None = None  # default: n // 4 (at least 1)
    t_cap: int = 1000
    brute_force_n: int = 8  # practical mode solves graphs this small exactly
    robust: bool = True

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0 < self.beta <= 1:
            raise ValueError(f"beta must lie in (0, 1], got {self.beta}")
        if self.d < 1 or self.i < 1:
            raise ValueError("d and i must be positive integers")
        if self.mode not in (PAPER, PRACTICAL):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 < self.failure_prob < 1:
            raise ValueError("failure_prob must lie in (0, 1)")
        if (self.s_cap is not None and self.s_cap < 1) or self.t_cap < 1:
            raise ValueError("caps must be >= 1")

    @property
    def beta_eps(self) -> Fraction:
        return _rational(self.beta) * _rational(self.epsilon)


@dataclass(frozen=True)
class DerivedConstants:
    c: Fraction
    delta: Fraction
    s: int
    t: int
    z: int
    s_paper: int
    t_paper: int | None  # None when too large to write down exactly
    t_paper_log10: float
    layer_window: int  # ceil(2 / (beta eps)): candidate layers to cut
    n_blocks: int  # floor(2 / (beta eps)) + 1
    mode: str

    def as_dict(self) -> dict:
        return {
            "c": float(self.c), "delta": float(self.delta), "s": self.s, "t": self.t, "z": self.z,
            "s_paper": self.s_paper,
            "t_paper": int_to_str(self.t_paper) if self.t_paper is not None else None,
            "t_paper_log10": self.t_paper_log10,
            "layer_window": self.layer_window, "n_blocks": self.n_blocks, "mode": self.mode,
        }


def int_to_str(x: int) -> str:
    """Decimal digits of an arbitrarily large int (lifts the str() digit limit)."""
    limit = sys.get_int_max_str_digits()
    sys.set_int_max_str_digits(0)
    try:
        return str(x)
    finally:
        sys.set_int_max_str_digits(limit)


def _ceil_mp(x) -> int:
    return int(mpmath.ceil(x))


def paper_s(d: int, delta: Fraction) -> int:
    with mpmath.workdps(50):
        inv = mpmath.mpf(delta.denominator) / delta.numerator
        return _ceil_mp(10 * d * inv * mpmath.log(inv))


def paper_t(beta: Fraction, s: int, failure_prob: float) -> tuple[int | None, float]:
    """``ceil(log p / log(1 - (beta/2)^s))`` exactly when feasible, plus its log10."""
    with mpmath.workdps(30):
        log10_x = s * mpmath.log10(mpmath.mpf(beta.numerator) / (2 * beta.denominator))
        # t ~ ln(1/p) / x
        t_log10 = float(mpmath.log10(-mpmath.log(failure_prob)) - log10_x)
    if t_log10 > EXACT_T_DIGITS:
        return None, t_log10
    # the decimal literal, not its binary float (1e-10 is not exact in binary)
    prob = Fraction(repr(failure_prob))
    with mpmath.workdps(int(t_log10) + 40):
        x = (mpmath.mpf(beta.numerator) / (2 * beta.denominator)) ** s
        log_p = mpmath.log(mpmath.mpf(prob.numerator) / prob.denominator)
        t = _ceil_mp(log_p / mpmath.log1p(-x))
    return t, t_log10


def compute_constants(p: EptasParams, n: int | None = None, epsilon: float | None = None) -> DerivedConstants:
    """Constants c, delta, s, t, z. ``epsilon`` overrides ``p.epsilon`` (iocp recursion)."""
    n_key = n if p.mode == PRACTICAL and p.s_cap is None else None
    eps = p.epsilon if epsilon is None else epsilon
    return constants_for(eps, p.beta, p.d, p.failure_prob, p.mode, p.s_cap, p.t_cap, n_key)


@lru_cache(maxsize=4096)
def constants_for(epsilon: float, beta: float, d: int, failure_prob: float = 1e-10,
                  mode: str = PAPER, s_cap: int | None = None, t_cap: int = 1000,
                  n: int | None = None) -> DerivedConstants:
    """Formula substitution without the ``epsilon < 1`` restriction of :class:`EptasParams`.

    ``epsilon = 1`` is accepted as a limit case for inspection.
    """
    if not 0 < epsilon <= 1 or not 0 < beta <= 1 or d < 1:
        raise ValueError(f"out of range: epsilon={epsilon}, beta={beta}, d={d}")
    if not 0 < failure_prob < 1:
        raise ValueError("failure_prob must lie in (0, 1)")
    if mode not in (PAPER, PRACTICAL):
        raise ValueError(f"unknown mode {mode!r}")
    eps = _rational(epsilon)
    beta = _rational(beta)
    inv = 1 / (beta * eps)
    c = 8 * (inv * inv + inv + 1)
    delta = eps / c
    z = math.ceil(4 * inv) + 2
    s_paper = paper_s(d, delta)
    t_paper, t_log10 = paper_t(beta, s_paper, failure_prob)
    s, t = s_paper, t_paper
    if mode == PRACTICAL:
        cap = s_cap if s_cap is not None else max(1, (n or 0) // 4)
        s = max(1, min(s_paper, cap))
        t_eff, _ = paper_t(beta, s, failure_prob)
        t = t_cap if t_eff is None else min(t_eff, t_cap)
    return DerivedConstants(c, delta, s, t, z, s_paper, t_paper, t_log10,
                            math.ceil(2 * inv), math.floor(2 * inv) + 1, mode)


# -- randomness ------------------------------------------------------------

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, *tags: int) -> int:
    """Stream seed for one iteration / sub-call: ``seed xor hash(tags)``."""
    h = 0
    for tag in tags:
        h = _splitmix64(h ^ len(tags))
        while True:
            h = _splitmix64(h ^ (tag & _MASK64))
            tag >>= 64
            if not tag:
                break
    return (seed & _MASK64) ^ h


def sample_candidate(h: Graph, s: int, weighted: bool, rng: random.Random) -> list[int] | None:
    """Draw ``s`` distinct vertices; ``None`` if they span an edge.

    Uniform, or (``weighted``) proportional to weight without replacement by
    an exponential race: keys ``Exp(1) / w`` and the ``s`` smallest win.
    """
    if s > h.n:
        raise ValueError(f"cannot sample {s} of {h.n} vertices")
    if weighted:
        keys = []
        for v in range(h.n):
            e = rng.expovariate(1.0)
            w = h.weight(v)
            keys.append((e / w if w > 0 else math.inf, v))
        keys.sort()
        sample = sorted(v for _, v in keys[:s])
    else:
        sample = sorted(rng.sample(range(h.n), s))
    return sample if h.is_independent(sample) else None


# -- long odd cycle machinery ----------------------------------------------

@dataclass
class LongCycleState:
    """Layers, strata and blocks around a long shortest odd cycle of ``H'``."""

    cycle: OddCycle
    layers: list
    unreached: list
    dist: list
    stratum: dict  # vertex -> 1-based cycle index of its stratum
    cut_index: int | None  # 1-based layer removed, None when lambda is small
    core: list  # vertices of H''
    far: list  # layers beyond the cut
    blocks: list  # blocks[gamma] = vertices of S^gamma inside H''
    z: int

    @property
    def depth(self) -> int:
        return len(self.layers)


def build_layers_strata(hp: Graph, cycle: OddCycle, p: EptasParams, dc: DerivedConstants,
                        check_branch: bool = True) -> LongCycleState:
    """BFS layers from the cycle, optional cut of the lightest early layer, strata and blocks."""
    g = len(cycle)
    if check_branch and g <= dc.c:
        raise ValueError(f"cycle of length {g} is short (c = {float(dc.c):.3f}); wrong branch")
    weight = hp.weight
    dist = bfs_distances(hp, cycle.vertices)
    depth = max(dist, default=0)
    layers = [[] for _ in range(depth)]
    unreached = []
    for v, dv in enumerate(dist):
        if dv < 0:
            unreached.append(v)
        elif dv > 0:
            layers[dv - 1].append(v)

    bound = 2 / p.beta_eps
    cut = None
    if depth > bound:
        window = min(dc.layer_window, depth)
        cut = min(range(1, window + 1), key=lambda k: (sum(weight(v) for v in layers[k - 1]), k))
        core = list(cycle.vertices) + [v for k in range(1, cut) for v in layers[k - 1]]
        far = [v for k in range(cut + 1, depth + 1) for v in layers[k - 1]]
    else:
        core = list(cycle.vertices) + [v for layer in layers for v in layer]
        far = []

    # stratum index: minimum cycle index reachable along a shortest path
    stratum = {v: idx + 1 for idx, v in enumerate(cycle.vertices)}
    for k, layer in enumerate(layers, start=1):
        for w in layer:
            stratum[w] = min(stratum[u] for u in hp.neighbors(w) if dist[u] == k - 1)

    z = dc.z
    core_set = set(core)
    blocks = [[] for _ in range(dc.n_blocks)]
    for v in core:
        gamma = (stratum[v] - 1) // z
        if gamma < dc.n_blocks:
            blocks[gamma].append(v)
    for blk in blocks:
        assert set(blk) <= core_set
    return LongCycleState(cycle, layers, unreached, dist, stratum, cut, core, far, blocks, z)


def claim2_coloring(hp: Graph, state: LongCycleState, gamma: int) -> dict:
    """Constructive 2-coloring of ``H'' - S^gamma``.

    The path left on the cycle alternates colors starting after the removed
    window; each stratum vertex takes the color of its cycle anchor flipped
    once per layer. Raises :class:`ClassAssumptionViolated` carrying the
    monochromatic edge when the coloring is improper.
    """
    g = len(state.cycle)
    z = state.z
    lo, hi = gamma * z + 1, (gamma + 1) * z
    if hi > g:
        raise ValueError(f"block {gamma} exceeds the cycle (g={g}, z={z})")
    anchor_color = {}
    for pos, idx in enumerate(list(range(hi + 1, g + 1)) + list(range(1, lo))):
        anchor_color[idx] = pos & 1
    removed = set(state.blocks[gamma])
    color = {}
    for v in state.core:
        if v in removed:
            continue
        j = state.stratum[v]
        if j not in anchor_color:
            # only possible when the block list missed a stratum
            raise ClassAssumptionViolated("claim2", f"vertex {v} anchored inside the removed window")
        color[v] = anchor_color[j] ^ (state.dist[v] & 1)
    for u in color:
        for v in hp.neighbors(u):
            if v in color and color[u] == color[v]:
                raise ClassAssumptionViolated("claim2", (u, v))
    return color


# -- solving -----------------------------------------------------------------

@dataclass
class EptasResult:
    vertices: tuple
    weight: float
    diagnostics: dict = field(default_factory=dict)
    per_iteration: list = field(default_factory=list, repr=False)  # value per iteration, None if rejected

    @property
    def size(self) -> int:
        return len(self.vertices)


class _Solver:
    """One invocation of the scheme on a fixed graph with a fixed iocp budget."""

    def __init__(self, h: Graph, p: EptasParams, budget: int, epsilon: float, seed: int, weighted: bool):
        self.h = h
        self.p = p
        self.budget = budget
        self.epsilon = epsilon
        self.seed = seed
        self.weighted = weighted
        self.dc = compute_constants(p, h.n, epsilon)
        self.stats = Counter()
        self.violations = []

    # weight helpers
    def w(self, vertices) -> float:
        return sum(self.h.weight(v) for v in vertices) if self.weighted else len(vertices)

    def key(self, vertices):
        vs = tuple(sorted(vertices))
        return (-self.w(vs), vs) if self.weighted else (-len(vs), vs)

    def exact(self, g: Graph) -> list[int]:
        cap = max(g.n, 1)
        return brute_force_mis(g, self.weighted, OracleBudget(mis_max_n=cap, clique_max_n=cap))

    def run(self, workers: int = 1) -> EptasResult:
        h, p, dc = self.h, self.p, self.dc
        diag = {"n": h.n, "constants": dc.as_dict(), "iocp_budget": self.budget, "epsilon": self.epsilon}
        if h.n == 0:
            return EptasResult((), 0, {**diag, "branch": "empty"})
        small = (p.mode == PAPER and _rational(p.beta) * h.n < 2 * dc.s) or \
                (p.mode == PRACTICAL and h.n <= p.brute_force_n)
        if small:
            if p.mode == PAPER and h.n > PAPER_BRUTE_FORCE_LIMIT:
                raise RefusalError(f"paper constants demand brute force on n={h.n} > {PAPER_BRUTE_FORCE_LIMIT}")
            sol = self.exact(h)
            return EptasResult(tuple(sol), self.w(sol), {**diag, "branch": "brute-force", "iterations": 0})
        if dc.t is None or dc.t > PAPER_MAX_ITERATIONS:
            raise RefusalError(f"paper constants demand t ~ 10^{dc.t_paper_log10:.1f} iterations")

        t = dc.t
        chunks = _split(range(t), max(1, workers))
        if workers > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(self._run_chunk, chunks))
        else:
            parts = [self._run_chunk(chunk) for chunk in chunks]

        best = None
        per_iter = []
        for part in parts:
            for it_key, record in part["records"]:
                per_iter.append(record)
            if part["best"] is not None and (best is None or self.key(part["best"][0]) < self.key(best[0])):
                best = part["best"]
            self.stats.update(part["stats"])
            self.violations.extend(part["violations"])
        if best is None:
            vertices, info = (), {"branch": "no-accepted-sample"}
        else:
            vertices, info = best
        vertices = tuple(sorted(vertices))
        diag.update({
            "iterations": t,
            "accepted": self.stats["accepted"],
            "branches": {k[7:]: v for k, v in sorted(self.stats.items()) if k.startswith("branch:")},
            "claim2_checks": self.stats["claim2_checks"],
            "claim2_violations": self.stats["claim2_violations"],
            "violations": self.violations[:20],
            "violation_count": len(self.violations),
            "best": info,
        })
        return EptasResult(vertices, self.w(vertices), diag, per_iter)

    def _run_chunk(self, chunk) -> dict:
        memo = {}
        best = None
        records = []
        stats = Counter()
        violations = []
        for it in chunk:
            rng = random.Random(derive_seed(self.seed, it))
            sample = sample_candidate(self.h, self.dc.s, self.weighted, rng)
            if sample is None:
                stats["rejected"] += 1
                records.append((it, None))
                continue
            stats["accepted"] += 1
            smask = 0
            for v in sample:
                smask |= 1 << v
            if smask not in memo:
                local = Counter()
                local_viol = []
                sol, info = self._iteration(sample, smask, local, local_viol)
                memo[smask] = (sol, info, local, local_viol)
            sol, info, local, local_viol = memo[smask]
            stats.update(local)
            violations.extend(local_viol)
            records.append((it, self.w(sol)))
            if best is None or self.key(sol) < self.key(best[0]):
                best = (sol, info)
        return {"best": best, "records": records, "stats": stats, "violations": violations}

    def _iteration(self, sample, smask, stats, violations):
        h = self.h
        rest = ((1 << h.n) - 1) & ~h.closed_nbr_mask(sample)
        hp, mapping = induced_subgraph(h, iter_bits(rest))
        sub_seed = derive_seed(self.seed, smask, 0x5EED)
        part, info = self.solve_residual(hp, stats, violations, sub_seed)
        sol = sorted(sample + [mapping[v] for v in part])
        assert h.is_independent(sol)
        return sol, info

    def solve_residual(self, hp: Graph, stats, violations, sub_seed: int):
        """Everything after ``H' = H - N[S]``: returns (independent set of hp, info)."""
        cycle = shortest_odd_cycle(hp)
        if cycle is None:
            stats["branch:bipartite"] += 1
            return solve_bipartite(hp, bipartite_2coloring(hp), self.weighted), {"branch": "bipartite"}
        g = len(cycle)
        dc = self.dc
        if g <= dc.c:
            stats["branch:short"] += 1
            rest = list(iter_bits(((1 << hp.n) - 1) & ~hp.closed_nbr_mask(cycle.vertices)))
            sol = self.solve_promised_bipartite(hp, rest, "short-cycle remainder", stats, violations, sub_seed, 1)
            return sol, {"branch": "short", "g": g}

        stats["branch:long"] += 1
        state = build_layers_strata(hp, cycle, replace(self.p, epsilon=self.epsilon), dc)
        remainder = state.far + state.unreached
        sol = self.solve_promised_bipartite(hp, remainder, "far layers", stats, violations, sub_seed, 2)

        assert len(cycle) >= dc.z * dc.n_blocks, "cycle too short for the block partition"
        block_w = [sum(hp.weight(v) for v in blk) if self.weighted else len(blk) for blk in state.blocks]
        gamma = min(range(len(state.blocks)), key=lambda k: (block_w[k], k))
        total = sum(hp.weight(v) for v in state.core) if self.weighted else len(state.core)
        assert block_w[gamma] * len(state.blocks) <= total + 1e-9
        removed = set(state.blocks[gamma])
        kept = [v for v in state.core if v not in removed]
        stats["claim2_checks"] += 1
        try:
            color = claim2_coloring(hp, state, gamma)
        except ClassAssumptionViolated as exc:
            stats["claim2_violations"] += 1
            violations.append({"where": "claim2", "edge": exc.detail})
            if not self.p.robust:
                raise
            core_sol = self.fallback(hp, kept, stats, violations, sub_seed, 3)
        else:
            sub, mapping = induced_subgraph(hp, kept)
            coloring = tuple(color[v] for v in mapping)
            core_sol = [mapping[v] for v in solve_bipartite(sub, coloring, self.weighted)]
        info = {"branch": "long", "g": g, "lambda": state.depth, "cut_layer": state.cut_index, "gamma": gamma}
        return sorted(sol + core_sol), info

    def solve_promised_bipartite(self, hp, vertices, where, stats, violations, sub_seed, tag):
        if not vertices:
            return []
        sub, mapping = induced_subgraph(hp, vertices)
        coloring = bipartite_2coloring(sub)
        if coloring is not None:
            return [mapping[v] for v in solve_bipartite(sub, coloring, self.weighted)]
        if self.budget > 1:
            # iocp recursion: the remainder has packing number <= budget - 1
            stats["recursions"] += 1
            inner = _Solver(sub, self.p, self.budget - 1, self.epsilon, derive_seed(sub_seed, tag), self.weighted)
            res = inner.run()
            stats.update({k: v for k, v in inner.stats.items() if not k.startswith("branch:")})
            violations.extend(inner.violations)
            return [mapping[v] for v in res.vertices]
        violations.append({"where": where, "n": sub.n})
        stats["violations"] += 1
        if not self.p.robust:
            raise ClassAssumptionViolated(where, f"{sub.n}-vertex remainder is not bipartite")
        return [mapping[v] for v in greedy_oct_mis(sub, self.weighted)]

    def fallback(self, hp, vertices, stats, violations, sub_seed, tag):
        sub, mapping = induced_subgraph(hp, vertices)
        coloring = bipartite_2coloring(sub)
        if coloring is not None:
            return [mapping[v] for v in solve_bipartite(sub, coloring, self.weighted)]
        return self.solve_promised_bipartite(hp, vertices, "claim2 fallback", stats, violations, sub_seed, tag)


def greedy_oct_mis(g: Graph, weighted: bool) -> list[int]:
    """Delete a greedy odd-cycle transversal, then solve the bipartite rest exactly.

    The transversal repeatedly takes the highest-degree vertex (smallest id on
    ties) of a shortest odd cycle.
    """
    alive = list(range(g.n))
    while True:
        sub, mapping = induced_subgraph(g, alive)
        cycle = shortest_odd_cycle(sub)
        if cycle is None:
            return [mapping[v] for v in solve_bipartite(sub, bipartite_2coloring(sub), weighted)]
        victim = min(cycle.vertices, key=lambda v: (-sub.degree(v), v))
        alive.remove(mapping[victim])


def _split(seq, k):
    seq = list(seq)
    size = -(-len(seq) // k) if seq else 1
    return [seq[i:i + size] for i in range(0, len(seq), size)] or [[]]


def run_eptas(h: Graph, p: EptasParams, workers: int = 1, weighted: bool | None = None) -> EptasResult:
    """Single-packing variant (``iocp <= 1``); always returns an independent set of ``h``."""
    weighted = h.weighted if weighted is None else weighted
    res = _Solver(h, p, 1, p.epsilon, p.seed, weighted).run(workers)
    assert h.is_independent(res.vertices)
    return res


def run_eptas_iocp(h: Graph, p: EptasParams, workers: int = 1, weighted: bool | None = None) -> EptasResult:
    """Variant for ``iocp <= p.i``: inner accuracy ``epsilon / i`` and recursion on remainders."""
    if p.i == 1:
        return run_eptas(h, p, workers, weighted)
    weighted = h.weighted if weighted is None else weighted
    res = _Solver(h, p, p.i, p.epsilon / p.i, p.seed, weighted).run(workers)
    assert h.is_independent(res.vertices)
    return res
