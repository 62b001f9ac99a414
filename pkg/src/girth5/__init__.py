"""Search, verification, and bookkeeping for dense graphs of girth >= 5."""

from .graph import (
    DEFAULT_MIN_GIRTH,
    MAX_ORDER,
    Graph,
    GraphError,
    add_isolated_vertex,
    delete_vertex,
    distance_at_most,
    enumerate_legal_edges,
    girth,
    girth_at_least,
    is_legal_edge,
    max_degree_sum_legal_edges,
    pair,
)
from .graph6 import ParseError, decode_graph6, encode_graph6
from .canon import are_isomorphic, canonical_form, canonical_key
from .search import (
    DeletionLedger,
    LegalEdgeTracker,
    SearchParams,
    SearchResult,
    eligible_deletions,
    local_search,
)
from .bounds import (
    BoundRecord,
    DegreeSetReport,
    WitnessReport,
    degree_set_report,
    exact_max_size,
    moore_bound,
    verify_witness,
)
from .store import BestStore, load_seed_store, save_store_snapshot
from .pipeline import (
    BoundsTable,
    RunConfig,
    compute_lower_bounds,
    derive_rng_seed,
    down_run,
    narrow_window_params,
    render_table,
    up_run,
    wide_window_params,
)

__version__ = "0.1.0"

__all__ = [
    "BestStore",
    "BoundRecord",
    "BoundsTable",
    "DEFAULT_MIN_GIRTH",
    "DegreeSetReport",
    "DeletionLedger",
    "Graph",
    "GraphError",
    "LegalEdgeTracker",
    "MAX_ORDER",
    "ParseError",
    "RunConfig",
    "SearchParams",
    "SearchResult",
    "WitnessReport",
    "add_isolated_vertex",
    "are_isomorphic",
    "canonical_form",
    "canonical_key",
    "compute_lower_bounds",
    "decode_graph6",
    "degree_set_report",
    "delete_vertex",
    "derive_rng_seed",
    "distance_at_most",
    "down_run",
    "eligible_deletions",
    "encode_graph6",
    "enumerate_legal_edges",
    "exact_max_size",
    "girth",
    "girth_at_least",
    "is_legal_edge",
    "load_seed_store",
    "local_search",
    "max_degree_sum_legal_edges",
    "moore_bound",
    "narrow_window_params",
    "pair",
    "render_table",
    "save_store_snapshot",
    "up_run",
    "verify_witness",
    "wide_window_params",
    "__version__",
]
