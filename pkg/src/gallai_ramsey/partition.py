"""Gallai partitions: find, verify, and coarsen.

A Gallai partition splits the vertices into at least two parts so that each
pair of parts is joined in a single color and at most two colors occur
between parts overall.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import EdgeColoredCompleteGraph

__all__ = [
    "GallaiPartition",
    "PartitionViolation",
    "NoPartitionFound",
    "find_gallai_partition",
    "verify_partition",
    "coarsen_to_minimal",
    "partition_from_parts",
]


class NoPartitionFound(RuntimeError):
    """Raised only when the input is not a Gallai coloring."""


@dataclass(frozen=True)
class GallaiPartition:
    parts: tuple[tuple[int, ...], ...]
    cross_colors: tuple[int, ...]
    reduced: EdgeColoredCompleteGraph

    @property
    def q(self) -> int:
        return len(self.parts)

    def labels(self, n: int) -> np.ndarray:
        lab = np.empty(n, dtype=np.int64)
        for i, part in enumerate(self.parts):
            lab[list(part)] = i
        return lab


@dataclass(frozen=True)
class PartitionViolation:
    parts: tuple[int, int]
    colors: tuple[int, ...]
    reason: str

    def __str__(self) -> str:
        i, j = self.parts
        return f"{self.reason}: parts {i},{j} colors {list(self.colors)}"


def _canonical(parts: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((tuple(sorted(p)) for p in parts), key=lambda p: p[0]))


def _check_cover(n: int, parts: Sequence[Sequence[int]]) -> np.ndarray:
    lab = np.full(n, -1, dtype=np.int64)
    for i, part in enumerate(parts):
        if not len(part):
            raise ValueError("partition has an empty part")
        for v in part:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range")
            if lab[v] != -1:
                raise ValueError(f"vertex {v} lies in two parts")
            lab[v] = i
    missing = np.flatnonzero(lab < 0)
    if missing.size:
        raise ValueError(f"vertices {missing.tolist()} are in no part")
    return lab


def _pair_colors(m: np.ndarray, lab: np.ndarray, q: int) -> dict[tuple[int, int], set[int]]:
    iu, ju = np.triu_indices(m.shape[0], 1)
    li, lj = lab[iu], lab[ju]
    cross = li != lj
    a = np.minimum(li[cross], lj[cross])
    b = np.maximum(li[cross], lj[cross])
    c = m[iu[cross], ju[cross]].astype(np.int64)
    keys = np.unique(np.stack([a, b, c], axis=1), axis=0) if c.size else np.empty((0, 3), np.int64)
    out: dict[tuple[int, int], set[int]] = {}
    for i, j, col in keys.tolist():
        out.setdefault((i, j), set()).add(col)
    return out


def verify_partition(g: EdgeColoredCompleteGraph, parts) -> tuple[bool, Optional[PartitionViolation]]:
    """Check the Gallai-partition conditions; report the first violating pair."""
    if isinstance(parts, GallaiPartition):
        parts = parts.parts
    lab = _check_cover(g.n, parts)
    q = len(parts)
    if q < 2:
        return False, PartitionViolation((0, 0), (), "fewer than two parts")
    colors = _pair_colors(g.matrix, lab, q)
    for key in sorted(colors):
        if len(colors[key]) > 1:
            return False, PartitionViolation(key, tuple(sorted(colors[key])), "pair not monochromatic")
    used = sorted(set().union(*colors.values()))
    if len(used) > 2:
        return False, PartitionViolation(min(colors), tuple(used), "more than two cross colors")
    return True, None


def partition_from_parts(g: EdgeColoredCompleteGraph, parts) -> GallaiPartition:
    """Wrap valid parts with their cross colors and reduced graph."""
    parts = _canonical(parts)
    ok, why = verify_partition(g, parts)
    if not ok:
        raise ValueError(f"not a Gallai partition: {why}")
    reps = [p[0] for p in parts]
    sub = g.matrix[np.ix_(reps, reps)]
    reduced = EdgeColoredCompleteGraph._trusted(sub.copy(), g.k)
    return GallaiPartition(parts, tuple(sorted(reduced.used_colors)), reduced)


def _merge_repair(m: np.ndarray, lab: np.ndarray, a: int, b: int) -> Optional[list[list[int]]]:
    """Merge parts until every cross pair is monochromatic; cross colors stay in {a, b}."""
    q = int(lab.max()) + 1
    # float64 so the products go through BLAS; counts stay far below 2**53
    one_hot = np.zeros((m.shape[0], q))
    one_hot[np.arange(m.shape[0]), lab] = 1.0
    ca = one_hot.T @ (m == a) @ one_hot
    cb = one_hot.T @ (m == b) @ one_hot if b != a else np.zeros_like(ca)
    alive = list(range(q))
    members = [list(np.flatnonzero(lab == i)) for i in range(q)]
    while len(alive) >= 2:
        idx = np.array(alive)
        sa = ca[np.ix_(idx, idx)] > 0
        sb = cb[np.ix_(idx, idx)] > 0
        bad = np.triu(sa & sb, 1)
        if not bad.any():
            break
        # lowest-indexed violating pair (parts ordered by smallest vertex)
        i, j = np.argwhere(bad)[0]
        keep, drop = alive[i], alive[j]
        ca[keep, :] += ca[drop, :]
        ca[:, keep] += ca[:, drop]
        cb[keep, :] += cb[drop, :]
        cb[:, keep] += cb[:, drop]
        members[keep].extend(members[drop])
        alive.pop(j)
    if len(alive) < 2:
        return None
    return [sorted(members[i]) for i in alive]


def find_gallai_partition(g: EdgeColoredCompleteGraph) -> GallaiPartition:
    """Find some Gallai partition of a rainbow-triangle-free coloring.

    For each color set {a} and then {a, b}, the components of the edges
    colored outside the set seed the parts; parts joined in both colors are
    merged until every pair is monochromatic. The first set leaving at least
    two parts wins. Parts are sorted by smallest vertex.
    """
    if g.n < 2:
        raise ValueError("a Gallai partition needs at least two vertices")
    m = g.matrix
    colors = sorted(g.used_colors)
    candidates = [(a, a) for a in colors] + list(combinations(colors, 2))
    off = ~np.eye(g.n, dtype=bool)
    for a, b in candidates:
        other = (m != a) & (m != b) & off
        # a sparse input skips scipy's masked-array validation of dense graphs
        n_comp, lab = connected_components(csr_matrix(other), directed=False)
        if n_comp < 2:
            continue
        # relabel components by their smallest vertex
        order = np.argsort([np.flatnonzero(lab == i)[0] for i in range(n_comp)])
        remap = np.empty(n_comp, dtype=np.int64)
        remap[order] = np.arange(n_comp)
        parts = _merge_repair(m, remap[lab], a, b)
        if parts is not None:
            return partition_from_parts(g, parts)
    raise NoPartitionFound("no Gallai partition; the coloring has a rainbow triangle")


def coarsen_to_minimal(g: EdgeColoredCompleteGraph, partition) -> GallaiPartition:
    """Merge parts greedily while the partition stays valid.

    Parts ``i, j`` may merge when every other part sees both in the same
    color and at least two parts remain. The lowest-indexed mergeable pair is
    taken each round. The result admits no further single merge; it is not
    guaranteed to have the fewest parts overall.
    """
    if not isinstance(partition, GallaiPartition):
        partition = partition_from_parts(g, partition)
    ok, why = verify_partition(g, partition)
    if not ok:
        raise ValueError(f"not a Gallai partition: {why}")
    parts = [list(p) for p in partition.parts]
    red = partition.reduced.matrix.astype(np.int64)
    while len(parts) > 2:
        q = len(parts)
        merged = False
        for i in range(q):
            for j in range(i + 1, q):
                rest = [x for x in range(q) if x != i and x != j]
                if np.array_equal(red[i, rest], red[j, rest]):
                    parts[i] = sorted(parts[i] + parts[j])
                    del parts[j]
                    keep = [x for x in range(q) if x != j]
                    red = red[np.ix_(keep, keep)]
                    merged = True
                    break
            if merged:
                break
        if not merged:
            break
    return partition_from_parts(g, parts)
