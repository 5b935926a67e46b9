"""Hard-drop Tetris: engine, 3-PARTITION reduction, certifier and search."""

from .certify import Partition, Trace, canonical_trace, certify, verify_trace
from .engine import (
    Board,
    PieceKind,
    Placement,
    TopOut,
    apply_placement,
    covered_holes,
    drop_row,
    enumerate_placements,
    narrow_wells,
    orientation_count,
    piece_cells,
)
from .gadgets import Badness, BucketProfile, Gadget, check_lemma, gadget_transition, local_placements
from .reduction import Instance, Layout, budget_report, build_board, build_sequence, reduce, validate
from .solve import SearchConfig, Status, bad_state, search_clearable, solve_3partition

__all__ = [
    "Badness", "Board", "BucketProfile", "Gadget", "Instance", "Layout", "Partition", "PieceKind",
    "Placement", "SearchConfig", "Status", "TopOut", "Trace", "apply_placement", "bad_state",
    "budget_report", "build_board", "build_sequence", "canonical_trace", "certify", "check_lemma",
    "covered_holes", "drop_row", "enumerate_placements", "gadget_transition", "local_placements",
    "narrow_wells", "orientation_count", "piece_cells", "reduce", "search_clearable", "solve_3partition",
    "validate", "verify_trace",
]
