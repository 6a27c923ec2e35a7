"""Triangle-constraint grid puzzles with learned incompletability predicates."""

from ._core import (
    FormatError,
    GenerationError,
    InvalidPuzzle,
    OracleLimitExceeded,
    Predicate,
    PredicateError,
    Puzzle,
    baseline_predicate,
    completable,
    gen_from_path,
    gen_random_triangles,
    ilp_files,
    labeled_examples,
    learned_predicate,
    load_predicate,
    parse_predicate,
    shared_edge_count,
    solutions,
    solve,
    verify,
)

__all__ = [
    "FormatError",
    "GenerationError",
    "InvalidPuzzle",
    "OracleLimitExceeded",
    "Predicate",
    "PredicateError",
    "Puzzle",
    "baseline_predicate",
    "completable",
    "gen_from_path",
    "gen_random_triangles",
    "ilp_files",
    "labeled_examples",
    "learned_predicate",
    "load_predicate",
    "parse_predicate",
    "shared_edge_count",
    "solutions",
    "solve",
    "verify",
]
