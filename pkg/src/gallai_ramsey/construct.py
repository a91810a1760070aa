"""Lower-bound colorings built by iterated blow-ups of small Ramsey colorings."""

from __future__ import annotations

import hashlib
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .core import (
    EdgeColoredCompleteGraph,
    Embedding,
    PatternGraph,
    find_mono_copy,
    forbidden_copy,
    format_gcol,
    parse_gcol,
    pattern,
    rainbow_triangle,
)
from .formula import Parameters, as_params, classical_ramsey, condition_label, f
from .search import (
    Outcome,
    SearchBudget,
    local_search_witness,
    paley_coloring,
    witness_search,
)

log = logging.getLogger(__name__)

__all__ = [
    "SharpnessExample",
    "ColorRouting",
    "QCache",
    "Certificate",
    "ConstructionError",
    "SearchExhausted",
    "Q_PAIRS",
    "default_cache_dir",
    "find_sharpness",
    "sharpness_q",
    "blow_up",
    "base_graph",
    "construction_plan",
    "construct_lower_bound",
    "verify_construction",
    "lower_bound_grid",
]

# Q1..Q6 in the order the construction names them
Q_PAIRS = {
    "Q1": ("K3", "K3"),
    "Q2": ("K3", "S3plus"),
    "Q3": ("K3", "B3plus"),
    "Q4": ("S3plus", "S3plus"),
    "Q5": ("S3plus", "B3plus"),
    "Q6": ("B3plus", "B3plus"),
}
_RANK = {"K3": 0, "S3plus": 1, "B3plus": 2}


class ConstructionError(RuntimeError):
    """A constructed coloring failed its own consistency checks."""


class SearchExhausted(RuntimeError):
    """No sharpness example could be found within the search budget."""


@dataclass(frozen=True)
class SharpnessExample:
    """2-coloring of K_{R(a,b)-1}: no ``avoid_color1`` in color 1, no ``avoid_color2`` in color 2."""

    graph: EdgeColoredCompleteGraph
    avoid_color1: PatternGraph
    avoid_color2: PatternGraph

    @property
    def order(self) -> int:
        return self.graph.n

    def verify(self) -> bool:
        g = self.graph
        return (
            g.k == 2
            and g.n == classical_ramsey(self.avoid_color1, self.avoid_color2) - 1
            and find_mono_copy(g, self.avoid_color1, 1) is None
            and find_mono_copy(g, self.avoid_color2, 2) is None
        )

    def swapped(self) -> "SharpnessExample":
        return SharpnessExample(self.graph.relabel_colors({1: 2, 2: 1}, k=2),
                                self.avoid_color2, self.avoid_color1)


# --------------------------------------------------------------------------
# Cache
# --------------------------------------------------------------------------

def default_cache_dir() -> Path:
    return Path(os.environ.get("GALLAI_CACHE", "qcache"))


class QCache:
    """Sharpness examples stored as ``<a>__<b>.<sha256 prefix>.gcol`` files.

    With ``directory=None`` the cache lives in memory only. Files whose hash
    or certificate does not check out are ignored.
    """

    def __init__(self, directory: Optional[os.PathLike | str] = None):
        self.directory = Path(directory) if directory is not None else None
        self._memo: dict[tuple[str, str], SharpnessExample] = {}

    @staticmethod
    def filename(a: str, b: str, text: str) -> str:
        digest = hashlib.sha256(text.encode()).hexdigest()[:16]
        return f"{a}__{b}.{digest}.gcol"

    def get(self, a: str, b: str) -> Optional[SharpnessExample]:
        key = (a, b)
        if key in self._memo:
            return self._memo[key]
        if self.directory is None or not self.directory.is_dir():
            return None
        for path in sorted(self.directory.glob(f"{a}__{b}.*.gcol")):
            text = path.read_text()
            if path.name != self.filename(a, b, text):
                log.warning("ignoring %s: content hash mismatch", path)
                continue
            try:
                ex = SharpnessExample(parse_gcol(text), pattern(a), pattern(b))
            except ValueError as exc:
                log.warning("ignoring %s: %s", path, exc)
                continue
            if not ex.verify():
                log.warning("ignoring %s: certificate does not verify", path)
                continue
            self._memo[key] = ex
            return ex
        return None

    def put(self, ex: SharpnessExample) -> Optional[Path]:
        a, b = ex.avoid_color1.name, ex.avoid_color2.name
        self._memo[(a, b)] = ex
        if self.directory is None:
            return None
        self.directory.mkdir(parents=True, exist_ok=True)
        text = format_gcol(ex.graph)
        path = self.directory / self.filename(a, b, text)
        if not path.exists():
            tmp = path.with_suffix(".tmp")
            tmp.write_text(text)
            tmp.replace(path)
        return path


_MEMORY_CACHE = QCache(None)


def _as_cache(cache) -> QCache:
    if cache is None:
        return _MEMORY_CACHE
    if isinstance(cache, QCache):
        return cache
    return QCache(cache)


def _blowup_safe(name: str) -> str:
    # K4 is a subgraph of B3+; a K4-free color class stays B3+-free in every blow-up
    return "K4" if name == "B3plus" else name


def _search_example(a: PatternGraph, b: PatternGraph, budget: SearchBudget) -> EdgeColoredCompleteGraph:
    n = classical_ramsey(a, b) - 1
    targets = [(pattern(_blowup_safe(a.name)), pattern(_blowup_safe(b.name))), (a, b)]
    if targets[0] == targets[1]:
        targets.pop()
    for sa, sb in targets:
        if n <= 9:
            res = witness_search(sa, sb, n, budget)
            if res.outcome is Outcome.EXHAUSTIVE_NONE and (sa, sb) == (a, b):
                raise SearchExhausted(f"no 2-coloring of K{n} avoids ({a.name},{b.name})")
        else:
            start = paley_coloring(n) if n == 17 else None
            res = local_search_witness(sa, sb, n, budget, initial=start)
        if res.found:
            log.info("sharpness example (%s,%s) found via (%s,%s) after %d nodes",
                     a.name, b.name, sa.name, sb.name, res.nodes)
            return res.graph
    raise SearchExhausted(f"search budget exhausted for ({a.name},{b.name}) on K{n}")


def find_sharpness(a, b, cache=None, budget: Optional[SearchBudget] = None) -> SharpnessExample:
    """Certified 2-coloring of K_{R(a,b)-1} avoiding ``a`` in color 1 and ``b`` in color 2.

    Looks in the cache first, else searches (DFS up to order 9, seeded local
    search from the order-17 quadratic-residue coloring above that) and stores
    the re-verified result. Searches first ask for B3+ colors to be K4-free,
    which keeps the example usable as the outer graph of a blow-up.
    """
    a, b = pattern(a), pattern(b)
    classical_ramsey(a, b)  # rejects pairs outside the table
    if _RANK[a.name] > _RANK[b.name]:
        return find_sharpness(b, a, cache, budget).swapped()
    store = _as_cache(cache)
    ex = store.get(a.name, b.name)
    if ex is not None:
        return ex
    g = _search_example(a, b, budget or SearchBudget(time_limit=1800.0))
    ex = SharpnessExample(g, a, b)
    if not ex.verify():  # pragma: no cover - searches re-verify already
        raise ConstructionError(f"search returned an invalid example for ({a.name},{b.name})")
    store.put(ex)
    return ex


def sharpness_q(j: int | str, cache=None) -> SharpnessExample:
    """``sharpness_q(3)`` is the (K3, B3+) example, and so on for Q1..Q6."""
    key = j if isinstance(j, str) else f"Q{j}"
    a, b = Q_PAIRS[key]
    return find_sharpness(a, b, cache)


# --------------------------------------------------------------------------
# Blow-up
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ColorRouting:
    """``colors[i]`` is the global color given to outer color ``i + 1``."""

    colors: tuple[int, ...]
    roles: tuple[str, ...] = ()

    def __post_init__(self):
        if len(set(self.colors)) != len(self.colors):
            raise ValueError(f"routed colors must be distinct: {self.colors}")
        if any(c < 1 for c in self.colors):
            raise ValueError("routed colors must be positive")
        if self.roles and len(self.roles) != len(self.colors):
            raise ValueError("one role per routed color")


def blow_up(outer: EdgeColoredCompleteGraph, inner: EdgeColoredCompleteGraph,
            routing: ColorRouting | Sequence[int]) -> EdgeColoredCompleteGraph:
    """Replace each outer vertex by a copy of ``inner``.

    Vertex ``x`` of block ``i`` becomes ``i * |inner| + x``. Every pair across
    blocks ``i, j`` gets the routed color of the outer edge ``ij``.
    """
    if not isinstance(routing, ColorRouting):
        routing = ColorRouting(tuple(routing))
    if outer.used_colors - set(range(1, len(routing.colors) + 1)):
        raise ValueError("routing does not cover every outer color")
    clash = set(routing.colors) & inner.used_colors
    if clash:
        raise ValueError(f"routing collision with inner palette: {sorted(clash)}")
    m = inner.n
    lut = np.array((0,) + routing.colors, dtype=np.int64)
    routed = lut[outer.matrix.astype(np.int64)]
    big = np.kron(routed, np.ones((m, m), dtype=np.int64))
    big += np.kron(np.eye(outer.n, dtype=np.int64), inner.matrix.astype(np.int64))
    k = max(inner.k, max(routing.colors))
    return EdgeColoredCompleteGraph._trusted(big, k)


# --------------------------------------------------------------------------
# Base graphs and the recursive construction
# --------------------------------------------------------------------------

@dataclass
class _Base:
    graph: EdgeColoredCompleteGraph
    used: dict[str, list[int]]
    description: str


def _roles(p: Parameters) -> dict[str, list[int]]:
    return {role: list(p.colors_of(role)) for role in ("B3plus", "S3plus", "K3")}


def _mono(n: int, c: int, k: int) -> EdgeColoredCompleteGraph:
    return EdgeColoredCompleteGraph.monochromatic(n, c, k)


def _base(p: Parameters, cache) -> _Base:
    # lowest-index color of each role first
    R, S, T = (_roles(p)[x] for x in ("B3plus", "S3plus", "K3"))
    k = p.k
    r, s, t = p.as_tuple()
    single = EdgeColoredCompleteGraph.single_vertex(k)

    def q(name):
        return sharpness_q(name, cache).graph

    def used(r_=(), s_=(), t_=()):
        return {"B3plus": list(r_), "S3plus": list(s_), "K3": list(t_)}

    if k == 0:
        return _Base(single, used(), "single vertex")
    label = condition_label(p)
    if label == "c1":
        return _Base(single, used(), "single vertex")
    if label == "c2":
        return _Base(_mono(2, T[0], k), used(t_=T[:1]), f"K2 in color {T[0]}")
    if label == "c3":
        g = blow_up(q("Q3"), single, (T[0], R[0]))
        return _Base(g, used(R[:1], (), T[:1]), f"Q3 in colors ({T[0]},{R[0]})")
    if label == "c4":
        return _Base(_mono(4, R[0], k), used(R[:1]), f"K4 in color {R[0]}")
    if label == "c5":
        if s % 2 == 0:
            g = blow_up(q("Q4"), single, (S[0], S[1]))
            return _Base(g, used((), S[:2]), f"Q4 in colors ({S[0]},{S[1]})")
        g = blow_up(q("Q2"), single, (T[0], S[0]))
        return _Base(g, used((), S[:1], T[:1]), f"Q2 in colors ({T[0]},{S[0]})")
    if label == "c6":
        k3 = _mono(3, S[0], k)
        if s % 2 == 1:
            return _Base(k3, used((), S[:1]), f"K3 in color {S[0]}")
        g = blow_up(q("Q1"), k3, (S[1], T[0]))
        return _Base(g, used((), S[:2], T[:1]), f"Q1 in colors ({S[1]},{T[0]}) on K3 in color {S[0]}")
    if label == "c7":
        if s % 2 == 0:
            q4 = blow_up(q("Q4"), single, (S[0], S[1]))
            g = blow_up(q("Q3"), q4, (T[0], R[0]))
            return _Base(g, used(R[:1], S[:2], T[:1]),
                         f"Q3 in colors ({T[0]},{R[0]}) on Q4 in colors ({S[0]},{S[1]})")
        g3 = blow_up(q("Q3"), _mono(3, S[0], k), (T[0], R[0]))
        g = blow_up(_mono(2, 1, 1), g3, (T[1],))
        return _Base(g, used(R[:1], S[:1], T[:2]),
                     f"K2 in color {T[1]} on (Q3 in colors ({T[0]},{R[0]}) on K3 in color {S[0]})")
    if label == "c8":
        q4 = blow_up(q("Q4"), single, (S[0], S[1]))
        g = blow_up(q("Q3"), q4, (S[2], R[0]))
        return _Base(g, used(R[:1], S[:3]),
                     f"Q3 in colors ({S[2]},{R[0]}) on Q4 in colors ({S[0]},{S[1]})")
    if label == "c9":
        g = blow_up(q("Q5"), single, (S[0], R[0]))
        return _Base(g, used(R[:1], S[:1]), f"Q5 in colors ({S[0]},{R[0]})")
    # c10
    k3 = _mono(3, S[0], k)
    if s % 2 == 1:
        g = blow_up(q("Q3"), k3, (T[0], R[0]))
        return _Base(g, used(R[:1], S[:1], T[:1]), f"Q3 in colors ({T[0]},{R[0]}) on K3 in color {S[0]}")
    g = blow_up(q("Q3"), k3, (S[1], R[0]))
    return _Base(g, used(R[:1], S[:2]), f"Q3 in colors ({S[1]},{R[0]}) on K3 in color {S[0]}")


def base_graph(p, cache=None) -> EdgeColoredCompleteGraph:
    """Starting coloring for the condition of ``p`` (palette size ``p.k``)."""
    return _base(as_params(p), cache).graph


@dataclass(frozen=True)
class PlanStep:
    q: str
    colors: tuple[int, int]
    role: str


@dataclass
class ConstructionPlan:
    params: Parameters
    condition: Optional[str]
    base: str
    base_order: int
    base_colors: dict[str, list[int]]
    steps: list[PlanStep] = field(default_factory=list)

    @property
    def order(self) -> int:
        size = self.base_order
        for step in self.steps:
            size *= 17 if step.q == "Q6" else 5
        return size


def _plan(p: Parameters, cache) -> tuple[_Base, ConstructionPlan]:
    base = _base(p, cache)
    label = condition_label(p) if p.k else None
    plan = ConstructionPlan(p, label, base.description, base.graph.n, base.used)
    for role, q in (("B3plus", "Q6"), ("S3plus", "Q1"), ("K3", "Q1")):
        rest = [c for c in p.colors_of(role) if c not in base.used[role]]
        if len(rest) % 2:
            raise ConstructionError(f"odd number of {role} colors left after the base for {p}")
        for i in range(0, len(rest), 2):
            plan.steps.append(PlanStep(q, (rest[i], rest[i + 1]), role))
    return base, plan


def construction_plan(p, cache=None) -> ConstructionPlan:
    """The base and the ordered list of blow-ups used for ``p``.

    Remaining colors are consumed in pairs: first the B3+ colors (Q6), then
    the S3+ colors (Q1), then the K3 colors (Q1), ascending within each role.
    """
    return _plan(as_params(p), cache)[1]


def construct_lower_bound(p, cache=None, *, check: bool = True) -> EdgeColoredCompleteGraph:
    """Gallai coloring of order f(p) with no assigned monochromatic pattern.

    Raises :class:`ConstructionError` if the result has the wrong order or,
    with ``check=True``, if it has a rainbow triangle or a forbidden copy.
    """
    p = as_params(p)
    if p.k == 0:
        raise ValueError("construction needs k >= 1")
    base, plan = _plan(p, cache)
    g = base.graph
    for step in plan.steps:
        outer = sharpness_q(step.q, cache).graph
        if step.role == "S3plus" and g.n < 2:
            raise ConstructionError("S3+ pair blown up on a single vertex")
        g = blow_up(outer, g, ColorRouting(step.colors, (step.role, step.role)))
    g = g.with_palette(p.k)
    if g.n != f(p):
        raise ConstructionError(f"order {g.n} != f{p} = {f(p)}")
    if check:
        cert = verify_construction(g, p)
        if not cert.ok:
            raise ConstructionError(f"construction for {p} failed: {cert}")
    return g


@dataclass
class Certificate:
    order_ok: bool
    gallai_ok: bool
    avoid_ok: bool
    order: int
    expected_order: int
    rainbow: Optional[tuple[int, int, int]] = None
    violation: Optional[tuple[int, PatternGraph, Embedding]] = None

    @property
    def ok(self) -> bool:
        return self.order_ok and self.gallai_ok and self.avoid_ok

    def as_dict(self) -> dict:
        out = {
            "order_ok": self.order_ok,
            "gallai_ok": self.gallai_ok,
            "avoid_ok": self.avoid_ok,
            "order": self.order,
            "expected_order": self.expected_order,
        }
        if self.rainbow is not None:
            out["rainbow_triangle"] = list(self.rainbow)
        if self.violation is not None:
            c, pat, emb = self.violation
            out["violation"] = {"color": c, "pattern": pat.name, "embedding": list(emb.map)}
        return out


def verify_construction(g: EdgeColoredCompleteGraph, p, threads: int = 1) -> Certificate:
    """Check order = f(p), no rainbow triangle, and no forbidden copy.

    With ``threads > 1`` the rainbow scan and the per-color searches run in a
    thread pool of that size.
    """
    p = as_params(p)
    if g.k != p.k:
        raise ValueError(f"palette mismatch: graph has k={g.k}, parameters give k={p.k}")
    expected = f(p)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rain_job = pool.submit(rainbow_triangle, g)
            jobs = [(c, pattern(p.role(c))) for c in range(1, p.k + 1)]
            found = list(pool.map(lambda cp: find_mono_copy(g, cp[1], cp[0]), jobs))
            rainbow = rain_job.result()
        violation = next(((c, pat, emb) for (c, pat), emb in zip(jobs, found) if emb is not None), None)
    else:
        rainbow = rainbow_triangle(g)
        violation = forbidden_copy(g, p)
    return Certificate(g.n == expected, rainbow is None, violation is None,
                       g.n, expected, rainbow, violation)


def lower_bound_grid(limit: int = 1500) -> list[Parameters]:
    """Every triple with k >= 1 and f <= limit, sorted by (f, r, s, t)."""
    out = []
    bound = 1
    while 2 ** (bound // 2) <= limit:  # f at least doubles with every two extra colors
        bound += 1
    for r in range(bound + 1):
        for s in range(bound + 1):
            for t in range(bound + 1):
                if r + s + t and f((r, s, t)) <= limit:
                    out.append(Parameters(r, s, t))
    return sorted(out, key=lambda q: (f(q), q.as_tuple()))
