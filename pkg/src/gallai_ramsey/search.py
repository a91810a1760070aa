"""Two-color Ramsey witness search: pruned exhaustive DFS and min-conflicts.

Color 1 must avoid pattern ``a`` and color 2 must avoid pattern ``b``.
"""

from __future__ import annotations

import enum
import itertools
import logging
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .core import (
    EdgeColoredCompleteGraph,
    PatternGraph,
    copy_through_edge,
    find_mono_copy,
    pattern,
)

log = logging.getLogger(__name__)

__all__ = [
    "SearchBudget",
    "Outcome",
    "SearchResult",
    "SearchInconclusive",
    "witness_search",
    "compute_ramsey",
    "local_search_witness",
    "is_witness",
    "paley_coloring",
]


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 200_000_000
    time_limit: float = 600.0
    seed: int = 0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.time_limit <= 0:
            raise ValueError("search budget caps must be positive")


class Outcome(str, enum.Enum):
    WITNESS = "witness"
    EXHAUSTIVE_NONE = "exhaustive-none"
    BUDGET_EXHAUSTED = "budget-exhausted"
    TIMEOUT = "timeout"


@dataclass
class SearchResult:
    outcome: Outcome
    graph: Optional[EdgeColoredCompleteGraph] = None
    nodes: int = 0
    elapsed: float = 0.0
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.WITNESS


class SearchInconclusive(RuntimeError):
    """The budget ran out before the answer was certain."""


class _OutOfBudget(Exception):
    pass


def is_witness(g: EdgeColoredCompleteGraph, a, b) -> bool:
    """Re-check a 2-coloring with the detectors: no ``a`` in color 1, no ``b`` in color 2."""
    if g.k != 2:
        g = g.with_palette(2)
    return find_mono_copy(g, pattern(a), 1) is None and find_mono_copy(g, pattern(b), 2) is None


def _graph_from_adj(n: int, red: list[int]) -> EdgeColoredCompleteGraph:
    m = np.full((n, n), 2, dtype=np.uint8)
    for u in range(n):
        for v in range(n):
            if red[u] >> v & 1:
                m[u, v] = 1
    np.fill_diagonal(m, 0)
    return EdgeColoredCompleteGraph._trusted(m, 2)


# --------------------------------------------------------------------------
# Isomorph rejection on the first six vertices
# --------------------------------------------------------------------------

_PREFIX = 6


def _colex_index(u: int, v: int) -> int:
    return v * (v - 1) // 2 + u


@lru_cache(maxsize=None)
def _prefix_canonical_table() -> np.ndarray:
    """Minimum image, over all vertex permutations, of every red-edge mask on K6."""
    n_edges = _PREFIX * (_PREFIX - 1) // 2
    masks = np.arange(1 << n_edges, dtype=np.int64)
    bits = [(masks >> i) & 1 for i in range(n_edges)]
    pairs = [(u, v) for v in range(1, _PREFIX) for u in range(v)]
    best = masks.copy()
    for perm in itertools.permutations(range(_PREFIX)):
        img = np.zeros_like(masks)
        for i, (u, v) in enumerate(pairs):
            a, b = sorted((perm[u], perm[v]))
            img |= bits[i] << _colex_index(a, b)
        np.minimum(best, img, out=best)
    return best


# --------------------------------------------------------------------------
# Exhaustive DFS
# --------------------------------------------------------------------------

def _edge_sequence(n: int, edge_order: str) -> list[tuple[int, int]]:
    if edge_order == "colex":
        # each new vertex enters as late as possible
        return [(u, v) for v in range(1, n) for u in range(v)]
    if edge_order == "lex":
        return [(u, v) for u in range(n) for v in range(u + 1, n)]
    raise ValueError(f"unknown edge order {edge_order!r}")


def _dfs(a: PatternGraph, b: PatternGraph, n: int, budget: SearchBudget,
         edge_order: str = "colex", deadline: Optional[float] = None) -> SearchResult:
    start = time.monotonic()
    deadline = start + budget.time_limit if deadline is None else deadline
    edges = _edge_sequence(n, edge_order)
    n_edges = len(edges)
    rng = random.Random(budget.seed)
    try_order = [(0, 1) if rng.random() < 0.5 else (1, 0) for _ in edges] if budget.seed else [(0, 1)] * n_edges
    adj = [[0] * n, [0] * n]
    checks = [
        lambda rows, u, v, p=a: copy_through_edge(rows, p, u, v),
        lambda rows, u, v, p=b: copy_through_edge(rows, p, u, v),
    ]
    canon_depth = _colex_index(_PREFIX - 2, _PREFIX - 1) if edge_order == "colex" and n >= _PREFIX else -1
    table = _prefix_canonical_table() if canon_depth >= 0 else None
    prefix_bits = (1 << _PREFIX) - 1
    nodes = 0
    max_nodes = budget.max_nodes
    rejected = 0

    def prefix_mask() -> int:
        red = adj[0]
        mask = 0
        for v in range(1, _PREFIX):
            row = red[v] & prefix_bits
            for u in range(v):
                if row >> u & 1:
                    mask |= 1 << _colex_index(u, v)
        return mask

    def rec(d: int) -> bool:
        nonlocal nodes, rejected
        if d == n_edges:
            return True
        u, v = edges[d]
        bu, bv = 1 << u, 1 << v
        for c in try_order[d]:
            nodes += 1
            if nodes >= max_nodes:
                raise _OutOfBudget
            if not nodes & 0xFFF and time.monotonic() > deadline:
                raise _OutOfBudget
            rows = adj[c]
            rows[u] |= bv
            rows[v] |= bu
            if not checks[c](rows, u, v):
                if d == canon_depth:
                    mask = prefix_mask()
                    if table[mask] != mask:
                        rejected += 1
                        rows[u] ^= bv
                        rows[v] ^= bu
                        continue
                if rec(d + 1):
                    return True
            rows[u] ^= bv
            rows[v] ^= bu
        return False

    try:
        found = rec(0)
    except _OutOfBudget:
        return SearchResult(Outcome.BUDGET_EXHAUSTED, None, nodes, time.monotonic() - start,
                            {"rejected_prefixes": rejected})
    elapsed = time.monotonic() - start
    if not found:
        return SearchResult(Outcome.EXHAUSTIVE_NONE, None, nodes, elapsed, {"rejected_prefixes": rejected})
    g = _graph_from_adj(n, adj[0])
    if not is_witness(g, a, b):  # pragma: no cover - detector disagreement
        raise AssertionError("DFS produced a coloring the detectors reject")
    return SearchResult(Outcome.WITNESS, g, nodes, elapsed, {"rejected_prefixes": rejected})


def witness_search(a, b, n: int, budget: Optional[SearchBudget] = None, *,
                   edge_order: str = "colex") -> SearchResult:
    """Exhaustive search for a 2-coloring of K_n with no ``a`` in color 1 and no ``b`` in color 2.

    Outcomes are ``witness`` (re-verified), ``exhaustive-none`` (the search
    space was covered, so no such coloring exists) or ``budget-exhausted``.
    Edges are colored vertex by vertex and each assignment is pruned as soon as
    it closes a forbidden copy. Once the first six vertices are fully colored
    only the lexicographically least relabeling of that prefix is extended.
    """
    a, b = pattern(a), pattern(b)
    if n < max(a.order, b.order):
        raise ValueError(f"n={n} is below the pattern orders")
    return _dfs(a, b, n, budget or SearchBudget(), edge_order)


def compute_ramsey(a, b, n_max: int, budget: Optional[SearchBudget] = None) -> int:
    """Smallest n <= n_max at which the DFS proves no witness exists.

    A re-verified witness at ``n - 1`` is required. Raises
    :class:`SearchInconclusive` when the budget runs out first or no such n is
    reached by ``n_max``.
    """
    a, b = pattern(a), pattern(b)
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    budget = budget or SearchBudget()
    deadline = time.monotonic() + budget.time_limit
    previous: Optional[EdgeColoredCompleteGraph] = None
    for n in range(2, n_max + 1):
        res = _dfs(a, b, n, budget, deadline=deadline)
        log.info("R(%s,%s): n=%d %s after %d nodes", a.name, b.name, n, res.outcome.value, res.nodes)
        if res.outcome is Outcome.WITNESS:
            previous = res.graph
            continue
        if res.outcome is Outcome.EXHAUSTIVE_NONE:
            if previous is None or previous.n != n - 1 or not is_witness(previous, a, b):
                raise SearchInconclusive(f"no verified witness below n={n}")
            return n
        raise SearchInconclusive(f"budget exhausted at n={n} for ({a.name},{b.name})")
    raise SearchInconclusive(f"witnesses exist for every n <= {n_max}")


# --------------------------------------------------------------------------
# Stochastic search
# --------------------------------------------------------------------------

def paley_coloring(q: int = 17) -> EdgeColoredCompleteGraph:
    """Color 1 on pairs whose difference is a nonzero square mod the prime ``q``."""
    if q % 4 != 1:
        raise ValueError("need a prime q = 1 mod 4")
    squares = {(x * x) % q for x in range(1, q)}
    m = np.zeros((q, q), dtype=np.uint8)
    for i in range(q):
        for j in range(q):
            if i != j:
                m[i, j] = 1 if (j - i) % q in squares else 2
    return EdgeColoredCompleteGraph._trusted(m, 2)


def local_search_witness(a, b, n: int, budget: Optional[SearchBudget] = None, *,
                         initial: Optional[EdgeColoredCompleteGraph] = None,
                         noise: float = 0.1, sample: int = 6,
                         restart_after: int = 20_000) -> SearchResult:
    """Min-conflicts walk over single-edge recolorings.

    The score is the number of edges lying in some forbidden copy of their own
    color. Each step samples a few conflicting edges, flips the one giving the
    lowest score, and with probability ``noise`` flips a random conflicting
    edge instead. Deterministic for a fixed ``budget.seed``. Returns
    ``timeout`` when no witness turns up in time; that proves nothing.
    """
    a, b = pattern(a), pattern(b)
    if n < max(a.order, b.order):
        raise ValueError(f"n={n} is below the pattern orders")
    budget = budget or SearchBudget(time_limit=60.0)
    rng = random.Random(budget.seed)
    start = time.monotonic()
    deadline = start + budget.time_limit
    pats = (a, b)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    col: dict[tuple[int, int], int] = {}
    adj = [[0] * n, [0] * n]

    def load(g: Optional[EdgeColoredCompleteGraph]) -> None:
        for rows in adj:
            rows[:] = [0] * n
        for (u, v) in edges:
            c = (g.color(u, v) - 1) if g is not None else rng.randrange(2)
            col[u, v] = c
            adj[c][u] |= 1 << v
            adj[c][v] |= 1 << u

    def flip(e: tuple[int, int]) -> None:
        u, v = e
        c = col[e]
        adj[c][u] ^= 1 << v
        adj[c][v] ^= 1 << u
        adj[1 - c][u] ^= 1 << v
        adj[1 - c][v] ^= 1 << u
        col[e] = 1 - c

    def conflicts() -> list[tuple[int, int]]:
        return [e for e in edges if copy_through_edge(adj[col[e]], pats[col[e]], *e)]

    if initial is not None:
        if initial.n != n or not initial.used_colors <= {1, 2}:
            raise ValueError("initial coloring must be a 2-coloring of K_n")
    load(initial)
    bad = conflicts()
    best_score = len(bad)
    steps = since_best = restarts = 0
    while bad:
        if time.monotonic() > deadline or steps >= budget.max_nodes:
            return SearchResult(Outcome.TIMEOUT, None, steps, time.monotonic() - start,
                                {"restarts": restarts, "best_score": best_score})
        steps += 1
        if rng.random() < noise:
            flip(rng.choice(bad))
            bad = conflicts()
        else:
            best_e, best_bad = None, None
            for e in rng.sample(bad, min(sample, len(bad))):
                flip(e)
                cand = conflicts()
                flip(e)
                if best_bad is None or len(cand) < len(best_bad):
                    best_e, best_bad = e, cand
            flip(best_e)
            bad = best_bad
        if len(bad) < best_score:
            best_score, since_best = len(bad), 0
        else:
            since_best += 1
            if since_best > restart_after:
                restarts += 1
                since_best = 0
                load(None)
                bad = conflicts()
    g = _graph_from_adj(n, adj[0])
    if not is_witness(g, a, b):  # pragma: no cover - detector disagreement
        raise AssertionError("local search produced a coloring the detectors reject")
    return SearchResult(Outcome.WITNESS, g, steps, time.monotonic() - start, {"restarts": restarts})
