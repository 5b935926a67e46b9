"""Turn a 3-PARTITION solution into a placement trace and replay it."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .engine import Board, OutOfBounds, PieceKind, Placement, TopOut, apply_placement
from .gadgets import Gadget
from .reduction import Instance, layout_for, reduce, require_valid


class Phase(enum.Enum):
    OPEN = "OPEN"
    DIGIT = "DIGIT"
    CLOSE = "CLOSE"
    FINAL = "FINAL"
    FILL = "FILL"


class InvalidPartition(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Bucket index for each number, in input order."""

    assign: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assign", tuple(self.assign))

    def subsets(self, instance: Instance) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(instance.subsets)]
        for x, b in zip(instance.numbers, self.assign):
            out[b].append(x)
        return out


def check_partition(instance: Instance, partition: Partition) -> None:
    """Every bucket must get exactly three numbers summing to the target.

    Three per bucket is what lets a bucket end exactly at its top; it is
    enforced even for instances that break the strict size bounds.
    """
    a = partition.assign
    if len(a) != len(instance.numbers):
        raise InvalidPartition(f"partition has {len(a)} entries for {len(instance.numbers)} numbers")
    bad = [b for b in a if not 0 <= b < instance.subsets]
    if bad:
        raise InvalidPartition(f"bucket index {bad[0]} outside [0, {instance.subsets})")
    for b, members in enumerate(partition.subsets(instance)):
        if sum(members) != instance.target:
            raise InvalidPartition(f"bucket {b} sums to {sum(members)}, expected {instance.target}")
        if len(members) != 3:
            raise InvalidPartition(f"bucket {b} holds {len(members)} numbers, expected 3")


@dataclass(frozen=True)
class Trace:
    placements: tuple[Placement, ...]
    phases: tuple[Phase | None, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))
        phases = tuple(self.phases) or (None,) * len(self.placements)
        if len(phases) != len(self.placements):
            raise ValueError("one phase tag per placement")
        object.__setattr__(self, "phases", phases)

    def __len__(self) -> int:
        return len(self.placements)


def canonical_trace(instance: Instance, partition: Partition, strict: bool = False) -> Trace:
    require_valid(instance, strict)
    check_partition(instance, partition)
    layout = layout_for(instance)
    placements: list[Placement] = []
    phases: list[Phase] = []

    def emit(gadget: Gadget, bucket: int, phase: Phase):
        base = layout.interiors[bucket][0]
        for p in gadget.placements:
            placements.append(p._replace(col=p.col + base))
            phases.append(phase)

    for x, bucket in zip(instance.numbers, partition.assign):
        emit(Gadget.OPEN, bucket, Phase.OPEN)
        for _ in range(x):
            emit(Gadget.DIGIT, bucket, Phase.DIGIT)
        emit(Gadget.CLOSE, bucket, Phase.CLOSE)
    for bucket in range(instance.subsets):
        emit(Gadget.FINAL, bucket, Phase.FINAL)
    for _ in range(4 + instance.target):
        placements.append(Placement(PieceKind.I, 1, layout.fill))
        phases.append(Phase.FILL)
    return Trace(tuple(placements), tuple(phases))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    cleared_lines: int
    final_board: Board
    steps: int
    failure: str | None = None
    failed_at: int | None = None

    def summary(self) -> str:
        if self.ok:
            return f"cleared {self.cleared_lines} lines; board empty after {self.steps} placements"
        where = "" if self.failed_at is None else f" at placement {self.failed_at}"
        return f"failed{where}: {self.failure} (cleared {self.cleared_lines} lines)"


@dataclass(frozen=True)
class Step:
    index: int
    placement: Placement
    phase: Phase | None
    board: Board
    cleared: int


def replay(board: Board, trace: Trace) -> Iterator[Step]:
    """Yield the board after each placement; engine errors propagate."""
    for i, (p, phase) in enumerate(zip(trace.placements, trace.phases)):
        board, cleared = apply_placement(board, p)
        yield Step(i, p, phase, board, cleared)


def verify_trace(board: Board, sequence: list[PieceKind], trace: Trace) -> Verdict:
    start = board.cleared_total

    def fail(msg, at, b):
        return Verdict(False, b.cleared_total - start, b, at, msg, at)

    if len(trace) > len(sequence):
        return fail(f"trace has {len(trace)} placements for {len(sequence)} pieces", None, board)
    for i, p in enumerate(trace.placements):
        if p.kind is not sequence[i]:
            return fail(f"kind mismatch: trace {p.kind.token}, sequence {sequence[i].token}", i, board)
        try:
            board, _ = apply_placement(board, p)
        except TopOut:
            return fail("top-out", i, board)
        except OutOfBounds as e:
            return fail(str(e), i, board)
    if len(trace) < len(sequence):
        return fail(f"pieces remaining: {len(sequence) - len(trace)}", len(trace), board)
    if not board.is_empty:
        return fail(f"board not empty: {board.filled_count} cells remain", len(trace), board)
    return Verdict(True, board.cleared_total - start, board, len(trace))


def certify(instance: Instance, partition: Partition, strict: bool = False) -> tuple[Verdict, Trace]:
    out = reduce(instance, strict)
    trace = canonical_trace(instance, partition, strict)
    return verify_trace(out.board, list(out.sequence), trace), trace
