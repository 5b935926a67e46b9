"""Decision procedures: exact 3-PARTITION backtracking and a depth-first
clearability search over hard-drop placements."""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .certify import Partition, Trace
from .engine import Board, PieceKind, Placement, apply_placement, covered_holes, enumerate_placements, narrow_wells
from .gadgets import WELL_DEPTH
from .reduction import Instance, Layout

log = logging.getLogger(__name__)


def solve_3partition(instance: Instance) -> Partition | None:
    """First assignment, in lexicographic order, splitting the numbers into triples summing to the target.

    A number may only open the lowest-index empty bucket, which discards
    relabelled duplicates without losing the lexicographically first witness.
    """
    s, target, a = instance.subsets, instance.target, instance.numbers
    if len(a) != 3 * s or sum(a) != s * target:
        return None
    sums = [0] * s
    counts = [0] * s
    assign = [0] * len(a)

    def place(i: int) -> bool:
        if i == len(a):
            return True
        x = a[i]
        for b in range(s):
            if counts[b] == 3 or sums[b] + x > target:
                continue
            if (counts[b] == 2) != (sums[b] + x == target):
                continue
            sums[b] += x
            counts[b] += 1
            assign[i] = b
            if place(i + 1):
                return True
            sums[b] -= x
            counts[b] -= 1
            if counts[b] == 0:
                break
        return False

    return Partition(tuple(assign)) if place(0) else None


class Status(enum.Enum):
    CLEARABLE = "CLEARABLE"
    UNCLEARABLE = "UNCLEARABLE"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass(frozen=True)
class SearchConfig:
    node_budget: int = 1_000_000
    prune_bad_states: bool = False
    transposition: bool = True
    parallel_width: int = 1
    # needs every occupied row to be completable with the remaining cells; always sound
    cell_prune: bool = True
    # "clear": board empty at the end; "safe": no bad state at the end (needs a layout)
    goal: str = "clear"

    def __post_init__(self):
        if self.node_budget < 1:
            raise ValueError("node_budget must be >= 1")
        if self.parallel_width < 1:
            raise ValueError("parallel_width must be >= 1")
        if self.goal not in ("clear", "safe"):
            raise ValueError(f"unknown goal {self.goal!r}")


@dataclass(frozen=True)
class SearchVerdict:
    status: Status
    nodes: int
    witness: Trace | None = None
    frontier: int = 0

    def summary(self) -> str:
        if self.status is Status.CLEARABLE:
            return f"CLEARABLE nodes={self.nodes} witness={len(self.witness)} placements"
        if self.status is Status.UNCLEARABLE:
            return f"UNCLEARABLE nodes={self.nodes}"
        return f"BUDGET_EXCEEDED nodes={self.nodes} frontier={self.frontier}"


def bad_state(board: Board, layout: Layout) -> bool:
    """True once a reduction board can no longer be cleared with its exact piece budget.

    Covered holes anywhere, a deep width-1 shaft outside the fill column, or
    any cell at or above the bucket tops.
    """
    if any(board.rows[layout.bucket_height:]):
        return True
    if covered_holes(board):
        return True
    return any(w.col != layout.fill for w in narrow_wells(board, WELL_DEPTH))


class _BudgetExceeded(Exception):
    pass


class _Search:
    def __init__(self, sequence, config: SearchConfig, layout: Layout | None, budget: int):
        if (config.prune_bad_states or config.goal == "safe") and layout is None:
            raise ValueError("bad-state pruning and the 'safe' goal need a board layout")
        self.seq = tuple(sequence)
        self.cfg = config
        self.layout = layout
        self.budget = budget
        self.nodes = 0
        self.dead: set[tuple[tuple[int, ...], int]] = set()
        self.path: list[Placement] = []

    def goal(self, board: Board) -> bool:
        if self.cfg.goal == "clear":
            return board.is_empty
        return not bad_state(board, self.layout)

    def hopeless(self, board: Board, i: int) -> bool:
        if self.cfg.prune_bad_states and bad_state(board, self.layout):
            return True
        if self.cfg.cell_prune and self.cfg.goal == "clear":
            remaining = 4 * (len(self.seq) - i)
            full = board.full_mask
            needed = sum(board.width - m.bit_count() for m in board.rows if m and m != full)
            if needed > remaining or (board.filled_count + remaining) % board.width:
                return True
        return False

    def run(self, board: Board, i: int) -> bool:
        if i == len(self.seq):
            return self.goal(board)
        if self.hopeless(board, i):
            return False
        key = (board.rows, i)
        if self.cfg.transposition and key in self.dead:
            return False
        if self.nodes >= self.budget:
            raise _BudgetExceeded
        self.nodes += 1
        for opt in enumerate_placements(board, self.seq[i]):
            if opt.tops_out:
                continue
            after, _ = apply_placement(board, opt.placement)
            self.path.append(opt.placement)
            if self.run(after, i + 1):
                return True
            self.path.pop()
        if self.cfg.transposition:
            self.dead.add(key)
        return False


def _search_serial(board, sequence, config, layout, budget, prefix=()):
    s = _Search(sequence, config, layout, budget)
    start = len(prefix)
    s.path = list(prefix)
    try:
        found = s.run(board, start)
    except _BudgetExceeded:
        # open states left on the DFS stack when the budget ran out
        return SearchVerdict(Status.BUDGET_EXCEEDED, s.nodes, None, len(s.path) - start + 1)
    if found:
        return SearchVerdict(Status.CLEARABLE, s.nodes, Trace(tuple(s.path)))
    return SearchVerdict(Status.UNCLEARABLE, s.nodes)


def _subtree(args):
    board, sequence, config, layout, budget, first = args
    return _search_serial(board, sequence, config, layout, budget, prefix=(first,))


def search_clearable(
    board: Board,
    sequence: list[PieceKind],
    config: SearchConfig = SearchConfig(),
    layout: Layout | None = None,
) -> SearchVerdict:
    """Depth-first search for a placement trace consuming ``sequence``.

    Without pruning the search is an exact decision within the budget.
    Bad-state pruning relies on the reduction's exact cell budget and is only
    meaningful for reduction-shaped boards described by ``layout``.

    With ``parallel_width > 1`` the root moves are split across worker
    processes, each with an equal share of the node budget; the witness is
    taken from the lowest-index successful root move, so the verdict does not
    depend on scheduling.
    """
    if config.parallel_width == 1 or not sequence:
        return _search_serial(board, sequence, config, layout, config.node_budget)

    probe = _Search(sequence, config, layout, 1)
    if probe.hopeless(board, 0):
        return SearchVerdict(Status.UNCLEARABLE, 1)
    roots = []
    for opt in enumerate_placements(board, sequence[0]):
        if not opt.tops_out:
            roots.append((apply_placement(board, opt.placement)[0], opt.placement))
    if not roots:
        return SearchVerdict(Status.UNCLEARABLE, 1)
    share = max(1, (config.node_budget - 1) // len(roots))
    jobs = [(b, sequence, config, layout, share, p) for b, p in roots]
    with ProcessPoolExecutor(max_workers=config.parallel_width) as pool:
        results = list(pool.map(_subtree, jobs))
    nodes = 1 + sum(r.nodes for r in results)
    for r in results:
        if r.status is Status.CLEARABLE:
            return SearchVerdict(Status.CLEARABLE, nodes, r.witness)
    frontier = sum(r.frontier for r in results if r.status is Status.BUDGET_EXCEEDED)
    if frontier:
        return SearchVerdict(Status.BUDGET_EXCEEDED, nodes, None, frontier)
    log.debug("all %d root moves refuted", len(roots))
    return SearchVerdict(Status.UNCLEARABLE, nodes)
