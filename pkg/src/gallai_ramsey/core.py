"""Edge-colored complete graphs, the small pattern catalog, and detectors.

Vertices are ``0..n-1``. Colors are ``1..k``. Per-color adjacency is kept as
one Python ``int`` bitset per vertex, so common neighbourhoods are a single
``&`` and the detectors below never enumerate vertex subsets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np

__all__ = [
    "EdgeColoredCompleteGraph",
    "PatternGraph",
    "Embedding",
    "pattern_catalog",
    "pattern",
    "rainbow_triangle",
    "find_mono_copy",
    "copy_through_edge",
    "forbidden_copy",
    "read_gcol",
    "write_gcol",
    "parse_gcol",
    "format_gcol",
    "to_json",
    "from_json",
    "to_dot",
]


# --------------------------------------------------------------------------
# Bit helpers
# --------------------------------------------------------------------------

def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


# --------------------------------------------------------------------------
# Graph
# --------------------------------------------------------------------------

class EdgeColoredCompleteGraph:
    """A complete graph on ``n`` vertices with one color in ``1..k`` per edge.

    The graph is immutable. Internally the colors live in a symmetric
    ``uint8``/``uint16`` matrix with a zero diagonal; :attr:`colors` gives the
    flat row-major upper triangle used by the file formats.
    """

    def __init__(self, n: int, k: int, colors: Sequence[int] | np.ndarray):
        if n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={n}")
        if k < 0:
            raise ValueError(f"palette size must be nonnegative, got k={k}")
        flat = np.asarray(colors, dtype=np.int64).ravel()
        expected = n * (n - 1) // 2
        if flat.size != expected:
            raise ValueError(f"expected {expected} edge colors for n={n}, got {flat.size}")
        if flat.size and (flat.min() < 1 or flat.max() > k):
            raise ValueError(f"edge colors must lie in 1..{k}")
        m = np.zeros((n, n), dtype=_dtype_for(k))
        iu = np.triu_indices(n, 1)
        m[iu] = flat
        m.T[iu] = flat
        self._init(n, k, m)

    def _init(self, n: int, k: int, m: np.ndarray) -> None:
        m.setflags(write=False)
        self.n = n
        self.k = k
        self._m = m

    @classmethod
    def from_matrix(cls, matrix, k: Optional[int] = None) -> "EdgeColoredCompleteGraph":
        """Build from a full symmetric matrix; the diagonal is ignored."""
        a = np.asarray(matrix, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("color matrix must be square")
        n = a.shape[0]
        iu = np.triu_indices(n, 1)
        if not np.array_equal(a[iu], a.T[iu]):
            raise ValueError("color matrix must be symmetric")
        if k is None:
            k = int(a[iu].max()) if n > 1 else 0
        return cls(n, k, a[iu])

    @classmethod
    def _trusted(cls, m: np.ndarray, k: int) -> "EdgeColoredCompleteGraph":
        # Skips validation; callers guarantee a symmetric zero-diagonal matrix.
        g = cls.__new__(cls)
        g._init(m.shape[0], k, np.ascontiguousarray(m, dtype=_dtype_for(k)))
        return g

    @classmethod
    def monochromatic(cls, n: int, color: int = 1, k: Optional[int] = None) -> "EdgeColoredCompleteGraph":
        k = color if k is None else k
        if n > 1 and not 1 <= color <= k:
            raise ValueError(f"color {color} outside palette 1..{k}")
        m = np.full((n, n), color if n > 1 else 0, dtype=_dtype_for(k))
        np.fill_diagonal(m, 0)
        return cls._trusted(m, k)

    @classmethod
    def single_vertex(cls, k: int = 0) -> "EdgeColoredCompleteGraph":
        return cls(1, k, [])

    # -- accessors -----------------------------------------------------------

    @property
    def matrix(self) -> np.ndarray:
        """Read-only symmetric color matrix (diagonal 0)."""
        return self._m

    @cached_property
    def colors(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self._m[np.triu_indices(self.n, 1)])

    def color(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("no edge on a single vertex")
        return int(self._m[i, j])

    @cached_property
    def used_colors(self) -> frozenset[int]:
        if self.n < 2:
            return frozenset()
        return frozenset(int(c) for c in np.unique(self._m[np.triu_indices(self.n, 1)]))

    def adjacency(self, c: int) -> list[int]:
        """Bitset rows of the color-``c`` graph (bit ``j`` of row ``i``)."""
        return self._adjacency[c]

    @cached_property
    def _adjacency(self) -> dict[int, list[int]]:
        # Idempotent cache; computed once per color on first use.
        return _LazyAdjacency(self._m)

    def induced(self, vertices: Sequence[int]) -> "EdgeColoredCompleteGraph":
        idx = np.asarray(vertices, dtype=np.int64)
        if len(set(idx.tolist())) != idx.size:
            raise ValueError("induced subgraph needs distinct vertices")
        return EdgeColoredCompleteGraph._trusted(self._m[np.ix_(idx, idx)].copy(), self.k)

    def relabel_colors(self, mapping: dict[int, int], k: Optional[int] = None) -> "EdgeColoredCompleteGraph":
        k = max(mapping.values(), default=0) if k is None else k
        lut = np.zeros(max(self.k, max(mapping, default=0)) + 1, dtype=np.int64)
        for old, new in mapping.items():
            lut[old] = new
        m = lut[self._m]
        np.fill_diagonal(m, 0)
        if self.n > 1 and m[np.triu_indices(self.n, 1)].min() < 1:
            raise ValueError("color mapping does not cover every used color")
        return EdgeColoredCompleteGraph._trusted(m, k)

    def with_palette(self, k: int) -> "EdgeColoredCompleteGraph":
        if self.used_colors and max(self.used_colors) > k:
            raise ValueError(f"palette {k} too small for used colors")
        return EdgeColoredCompleteGraph._trusted(self._m.copy(), k)

    # -- dunder --------------------------------------------------------------

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColoredCompleteGraph):
            return NotImplemented
        return self.n == other.n and self.k == other.k and np.array_equal(self._m, other._m)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self._m.tobytes()))

    def __repr__(self) -> str:
        return f"EdgeColoredCompleteGraph(n={self.n}, k={self.k})"


def _dtype_for(k: int):
    return np.uint8 if k < 256 else np.uint16


class _LazyAdjacency(dict):
    def __init__(self, m: np.ndarray):
        super().__init__()
        self._src = m

    def __missing__(self, c: int) -> list[int]:
        rows = _bitset_rows(self._src == c)
        self[c] = rows
        return rows


def _bitset_rows(mask: np.ndarray) -> list[int]:
    n = mask.shape[0]
    if n == 0:
        return []
    packed = np.packbits(mask, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


# --------------------------------------------------------------------------
# Patterns
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PatternGraph:
    name: str
    order: int
    edges: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Embedding:
    """Host vertices listed in pattern-vertex order."""

    map: tuple[int, ...]

    def validate(self, g: EdgeColoredCompleteGraph, p: PatternGraph, c: int) -> bool:
        if len(self.map) != p.order or len(set(self.map)) != p.order:
            return False
        if any(not 0 <= v < g.n for v in self.map):
            return False
        return all(g.color(self.map[a], self.map[b]) == c for a, b in p.edges)


_CATALOG = (
    PatternGraph("K3", 3, ((0, 1), (0, 2), (1, 2))),
    # center 0, leaves 1,2,3
    PatternGraph("S3", 4, ((0, 1), (0, 2), (0, 3))),
    PatternGraph("S3plus", 4, ((0, 1), (0, 2), (0, 3), (1, 2))),
    # spine 0-1, pages 2,3,4
    PatternGraph("B3", 5, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4))),
    PatternGraph("B3plus", 5, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3))),
    PatternGraph("K4", 4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
)
_BY_NAME = {p.name: p for p in _CATALOG}
_ALIASES = {"S3+": "S3plus", "B3+": "B3plus", "s3plus": "S3plus", "b3plus": "B3plus"}


def pattern_catalog() -> list[PatternGraph]:
    return list(_CATALOG)


def pattern(name: str | PatternGraph) -> PatternGraph:
    """Look up a catalog pattern by name (``S3+``/``B3+`` accepted)."""
    if isinstance(name, PatternGraph):
        return name
    key = _ALIASES.get(name, name)
    for cand in (key, key.upper(), key.capitalize()):
        if cand in _BY_NAME:
            return _BY_NAME[cand]
    raise KeyError(f"unknown pattern {name!r}; choose from {sorted(_BY_NAME)}")


# --------------------------------------------------------------------------
# Rainbow triangles
# --------------------------------------------------------------------------

def rainbow_triangle(g: EdgeColoredCompleteGraph) -> Optional[tuple[int, int, int]]:
    """Return a triangle with three distinct edge colors, or ``None``."""
    if g.n < 3 or len(g.used_colors) < 3:
        return None
    m = g.matrix
    n = g.n
    for u in range(n - 2):
        row = m[u, u + 1:]
        sub = m[u + 1:, u + 1:]
        # rows/cols index x, y > u; diagonal of sub is 0 and row[x] != row[x] is False
        hit = (row[:, None] != row[None, :]) & (sub != row[:, None]) & (sub != row[None, :])
        if hit.any():
            x, y = np.argwhere(hit)[0]
            return (u, u + 1 + int(x), u + 1 + int(y))
    return None


# --------------------------------------------------------------------------
# Monochromatic copies
# --------------------------------------------------------------------------

def _twin_reps(adj: list[int]) -> int:
    """Bitmask holding one vertex per class of identical neighbourhoods.

    Same-neighbourhood vertices are non-adjacent and interchangeable in every
    kernel below, and a common neighbourhood is always a union of whole classes.
    """
    seen: dict[int, int] = {}
    reps = 0
    for v, row in enumerate(adj):
        if row not in seen:
            seen[row] = v
            reps |= 1 << v
    return reps


def _kernel_k3(adj: list[int]):
    reps = _twin_reps(adj)
    for u in iter_bits(reps):
        for v in iter_bits(adj[u] & reps & ~((2 << u) - 1)):
            w = adj[u] & adj[v]
            if w:
                return (u, v, lowest_bit(w))
    return None


def _kernel_k4(adj: list[int]):
    reps = _twin_reps(adj)
    for u in iter_bits(reps):
        for v in iter_bits(adj[u] & reps & ~((2 << u) - 1)):
            w = adj[u] & adj[v] & reps
            for x in iter_bits(w):
                y = adj[x] & w
                if y:
                    return (u, v, x, lowest_bit(y))
    return None


def _kernel_s3(adj: list[int]):
    for u, row in enumerate(adj):
        if row.bit_count() >= 3:
            return (u, *list(iter_bits(row))[:3])
    return None


def _kernel_s3plus(adj: list[int]):
    # triangle plus one more edge at some triangle vertex
    deg3 = 0
    for v, row in enumerate(adj):
        if row.bit_count() >= 3:
            deg3 |= 1 << v
    if not deg3:
        return None
    reps = _twin_reps(adj)
    for u in iter_bits(reps):
        for v in iter_bits(adj[u] & reps & ~((2 << u) - 1)):
            w = adj[u] & adj[v]
            if not w:
                continue
            if deg3 >> u & 1:
                x = lowest_bit(w)
                return (u, v, x, lowest_bit(adj[u] & ~(1 << v) & ~(1 << x)))
            if deg3 >> v & 1:
                x = lowest_bit(w)
                return (v, u, x, lowest_bit(adj[v] & ~(1 << u) & ~(1 << x)))
            hub = w & deg3
            if hub:
                x = lowest_bit(hub)
                return (x, u, v, lowest_bit(adj[x] & ~(1 << u) & ~(1 << v)))
    return None


def _kernel_b3(adj: list[int]):
    reps = _twin_reps(adj)
    for u in iter_bits(reps):
        for v in iter_bits(adj[u] & reps & ~((2 << u) - 1)):
            w = adj[u] & adj[v]
            if w.bit_count() >= 3:
                return (u, v, *list(iter_bits(w))[:3])
    return None


def _kernel_b3plus(adj: list[int]):
    # spine uv with >= 3 common neighbours, one pair of which is adjacent
    reps = _twin_reps(adj)
    for u in iter_bits(reps):
        for v in iter_bits(adj[u] & reps & ~((2 << u) - 1)):
            w = adj[u] & adj[v]
            if w.bit_count() < 3:
                continue
            for x in iter_bits(w & reps):
                y = adj[x] & w
                if y:
                    y = lowest_bit(y)
                    z = lowest_bit(w & ~(1 << x) & ~(1 << y))
                    return (u, v, x, y, z)
    return None


_KERNELS = {
    "K3": _kernel_k3,
    "S3": _kernel_s3,
    "S3plus": _kernel_s3plus,
    "B3": _kernel_b3,
    "B3plus": _kernel_b3plus,
    "K4": _kernel_k4,
}


def mono_copy_in(adj: list[int], p: PatternGraph) -> Optional[tuple[int, ...]]:
    """Run the pattern kernel on raw bitset rows of a single color class."""
    if p.order > len(adj):
        return None
    return _KERNELS[p.name](adj)


def find_mono_copy(g: EdgeColoredCompleteGraph, p: PatternGraph | str, c: int) -> Optional[Embedding]:
    """Find a (not necessarily induced) copy of ``p`` whose edges all have color ``c``."""
    p = pattern(p)
    if not 1 <= c <= g.k:
        raise ValueError(f"color {c} outside palette 1..{g.k}")
    if p.order > g.n:
        return None
    hit = _KERNELS[p.name](g.adjacency(c))
    return None if hit is None else Embedding(tuple(hit))


# --------------------------------------------------------------------------
# Copies through a given edge (incremental checks for the searches)
# --------------------------------------------------------------------------

def _through_k3(adj, u, v):
    return bool(adj[u] & adj[v])


def _through_k4(adj, u, v):
    w = adj[u] & adj[v]
    return any(adj[x] & w for x in iter_bits(w))


def _through_s3(adj, u, v):
    return adj[u].bit_count() >= 3 or adj[v].bit_count() >= 3


def _through_s3plus(adj, u, v):
    w = adj[u] & adj[v]
    if w:
        if adj[u].bit_count() >= 3 or adj[v].bit_count() >= 3:
            return True
        if any(adj[x].bit_count() >= 3 for x in iter_bits(w)):
            return True
    # uv as the pendant edge: one endpoint sits in a triangle avoiding the other
    for a, b in ((u, v), (v, u)):
        rest = adj[a] & ~(1 << b)
        if any(adj[x] & rest for x in iter_bits(rest)):
            return True
    return False


def _spine_b3(adj, p, q):
    return (adj[p] & adj[q]).bit_count() >= 3


def _spine_b3plus(adj, p, q):
    w = adj[p] & adj[q]
    return w.bit_count() >= 3 and any(adj[x] & w for x in iter_bits(w))


def _through_book(spine_ok, page_edge: bool):
    def check(adj, u, v):
        if spine_ok(adj, u, v):
            return True
        w = adj[u] & adj[v]
        for x in iter_bits(w):
            if spine_ok(adj, u, x) or spine_ok(adj, v, x):
                return True
            if page_edge:
                # uv as the edge between two pages; spine inside w
                for y in iter_bits(adj[x] & w):
                    if spine_ok(adj, x, y):
                        return True
        return False
    return check


_THROUGH = {
    "K3": _through_k3,
    "S3": _through_s3,
    "S3plus": _through_s3plus,
    "B3": _through_book(_spine_b3, False),
    "B3plus": _through_book(_spine_b3plus, True),
    "K4": _through_k4,
}


def copy_through_edge(adj: list[int], p: PatternGraph | str, u: int, v: int) -> bool:
    """True iff the color class ``adj`` (which contains edge ``uv``) has a copy
    of ``p`` using that edge."""
    return _THROUGH[pattern(p).name](adj, u, v)


# --------------------------------------------------------------------------
# Role-aware check
# --------------------------------------------------------------------------

def forbidden_copy(g: EdgeColoredCompleteGraph, params) -> Optional[tuple[int, PatternGraph, Embedding]]:
    """Find a B3+ in colors ``1..r``, S3+ in the next ``s`` or K3 in the last ``t``."""
    if g.k != params.k:
        raise ValueError(f"palette mismatch: graph has k={g.k}, parameters give k={params.k}")
    for c in range(1, g.k + 1):
        p = pattern(params.role(c))
        emb = find_mono_copy(g, p, c)
        if emb is not None:
            return c, p, emb
    return None


# --------------------------------------------------------------------------
# File formats
# --------------------------------------------------------------------------

def format_gcol(g: EdgeColoredCompleteGraph) -> str:
    lines = [f"{g.n} {g.k}"]
    m = g.matrix
    for i in range(g.n - 1):
        lines.append(" ".join(str(int(c)) for c in m[i, i + 1:]))
    return "\n".join(lines) + "\n"


def parse_gcol(text: str) -> EdgeColoredCompleteGraph:
    rows = [ln.split() for ln in text.splitlines()]
    while rows and not rows[-1]:
        rows.pop()
    if not rows or len(rows[0]) != 2:
        raise ValueError("gcol header must be 'n k'")
    try:
        n, k = int(rows[0][0]), int(rows[0][1])
    except ValueError as exc:
        raise ValueError(f"bad gcol header: {rows[0]}") from exc
    body = rows[1:]
    if len(body) != max(n - 1, 0):
        raise ValueError(f"expected {n - 1} color rows, got {len(body)}")
    flat: list[int] = []
    for i, row in enumerate(body):
        if len(row) != n - 1 - i:
            raise ValueError(f"row {i + 1} should hold {n - 1 - i} colors, got {len(row)}")
        flat.extend(int(x) for x in row)
    return EdgeColoredCompleteGraph(n, k, flat)


def write_gcol(g: EdgeColoredCompleteGraph, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_gcol(g))


def read_gcol(path) -> EdgeColoredCompleteGraph:
    with open(path) as fh:
        return parse_gcol(fh.read())


def to_json(g: EdgeColoredCompleteGraph) -> str:
    return json.dumps({"n": g.n, "k": g.k, "colors": list(g.colors)}, separators=(",", ":"))


def from_json(text: str | dict) -> EdgeColoredCompleteGraph:
    data = json.loads(text) if isinstance(text, str) else text
    return EdgeColoredCompleteGraph(int(data["n"]), int(data["k"]), data["colors"])


_PENS = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan")


def _pen(c: int, k: int) -> str:
    if k <= len(_PENS):
        return _PENS[c - 1]
    return f"{(c - 1) / k:.3f} 0.850 0.850"  # HSV, evenly spaced hues


def to_dot(g: EdgeColoredCompleteGraph, name: str = "G") -> str:
    out = [f"graph {name} {{", "  node [shape=circle];"]
    out.extend(f"  {v};" for v in range(g.n))
    m = g.matrix
    for i in range(g.n):
        for j in range(i + 1, g.n):
            c = int(m[i, j])
            out.append(f'  {i} -- {j} [color="{_pen(c, g.k)}", label="{c}"];')
    out.append("}")
    return "\n".join(out) + "\n"
