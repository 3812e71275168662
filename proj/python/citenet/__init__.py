"""Citation-network analysis: build, partition and profile literature networks."""

from ._core import (
    CitationGraph,
    CitenetError,
    ConvergenceError,
    Corpus,
    Document,
    EmptyResult,
    ExpandFrom,
    InvalidArgument,
    IoError,
    PruneMode,
    RunConfig,
    betweenness,
    build_network,
    clustering,
    cmd_all,
    cmd_analyze,
    cmd_build,
    cmd_layout,
    cmd_timeline,
    codelength,
    corpus_graph,
    degrees,
    detect_communities,
    generate_dominant_area,
    generate_planted,
    load_corpus,
    nmi,
    term_score,
    visit_rates,
)

__all__ = [name for name in dir() if not name.startswith("_")]
