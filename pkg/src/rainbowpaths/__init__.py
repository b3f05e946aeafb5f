"""Solvers for locally rainbow walks and paths in vertex-colored digraphs.

A walk is locally rainbow at radius r when every stretch of r+1
consecutive vertices (or the whole walk, if shorter) shows pairwise
distinct colors. The package bundles dynamic programs for bounded-length
walks, simple paths, and small-detour paths, representative-family
pruning that keeps their state spaces small, polynomial shortcuts for
tiny radii, brute-force oracles, hardness-construction generators, and a
file format with a CLI around it all.
"""

from .core import (
    MODES,
    ColoredDigraph,
    ColorSeq,
    Query,
    Witness,
    blocked_slots,
    claimed_slots,
    decode_blocked_slots,
    dist_from_source,
    dist_to_target,
    encoded_slot_index,
    is_locally_rainbow,
    prune_to_target,
    r_compatible,
    verify_witness,
)
from .detour import Band, build_band, distance_separators, solve_detour
from .instances import (
    CnfInput,
    PHSInput,
    gen_3sat_instance,
    gen_phs_instance,
    gen_random,
    parse_instance,
    phs_layout,
    read_dimacs,
    read_phs_sets,
    sat_layout,
    write_instance,
)
from .oracle import oracle_3sat, oracle_path, oracle_phs, oracle_walk
from .path import segment_window_family, solve_path, solve_r2_symmetric
from .repfam import (
    LabeledSetFamily,
    SeqFamily,
    is_ordered_representative,
    is_unordered_representative,
    ordered_bound,
    ordered_representative,
    partial_representative,
    unordered_bound,
    unordered_representative,
)
from .walk import any_length_cap, solve_r1, solve_walk, solve_walk_any_length

__version__ = "0.1.0"

__all__ = [
    "MODES",
    "Band",
    "CnfInput",
    "ColorSeq",
    "ColoredDigraph",
    "LabeledSetFamily",
    "PHSInput",
    "Query",
    "SeqFamily",
    "Witness",
    "any_length_cap",
    "blocked_slots",
    "build_band",
    "claimed_slots",
    "decode_blocked_slots",
    "dist_from_source",
    "dist_to_target",
    "distance_separators",
    "encoded_slot_index",
    "gen_3sat_instance",
    "gen_phs_instance",
    "gen_random",
    "is_locally_rainbow",
    "is_ordered_representative",
    "is_unordered_representative",
    "oracle_3sat",
    "oracle_path",
    "oracle_phs",
    "oracle_walk",
    "ordered_bound",
    "ordered_representative",
    "parse_instance",
    "partial_representative",
    "phs_layout",
    "prune_to_target",
    "r_compatible",
    "read_dimacs",
    "read_phs_sets",
    "sat_layout",
    "segment_window_family",
    "solve_detour",
    "solve_path",
    "solve_r1",
    "solve_r2_symmetric",
    "solve_walk",
    "solve_walk_any_length",
    "unordered_bound",
    "unordered_representative",
    "verify_witness",
    "write_instance",
]
