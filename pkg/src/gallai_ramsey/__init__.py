"""Gallai-Ramsey numbers gr_k(K3 : r*B3+, s*S3+, t*K3): values, lower-bound
constructions, Gallai partitions and the small Ramsey searches behind them."""

from .core import (
    EdgeColoredCompleteGraph,
    Embedding,
    PatternGraph,
    find_mono_copy,
    forbidden_copy,
    pattern,
    pattern_catalog,
    rainbow_triangle,
    read_gcol,
    write_gcol,
)
from .formula import (
    Parameters,
    check_inequalities,
    classical_ramsey,
    condition_label,
    f,
    gallai_ramsey_value,
)
from .construct import (
    ColorRouting,
    SharpnessExample,
    blow_up,
    base_graph,
    construct_lower_bound,
    find_sharpness,
    verify_construction,
)
from .partition import (
    GallaiPartition,
    coarsen_to_minimal,
    find_gallai_partition,
    verify_partition,
)
from .search import (
    SearchBudget,
    compute_ramsey,
    local_search_witness,
    witness_search,
)

__version__ = "0.1.0"

__all__ = [
    "EdgeColoredCompleteGraph",
    "Embedding",
    "PatternGraph",
    "find_mono_copy",
    "forbidden_copy",
    "pattern",
    "pattern_catalog",
    "rainbow_triangle",
    "read_gcol",
    "write_gcol",
    "Parameters",
    "check_inequalities",
    "classical_ramsey",
    "condition_label",
    "f",
    "gallai_ramsey_value",
    "ColorRouting",
    "SharpnessExample",
    "blow_up",
    "base_graph",
    "construct_lower_bound",
    "find_sharpness",
    "verify_construction",
    "GallaiPartition",
    "coarsen_to_minimal",
    "find_gallai_partition",
    "verify_partition",
    "SearchBudget",
    "compute_ramsey",
    "local_search_witness",
    "witness_search",
]
