import itertools
import random

import pytest

from hardtris.certify import (
    InvalidPartition,
    Partition,
    Phase,
    Trace,
    canonical_trace,
    certify,
    check_partition,
    replay,
    verify_trace,
)
from hardtris.engine import PieceKind, Placement, covered_holes, narrow_wells
from hardtris.reduction import Instance, layout_for, reduce

SMALL = Instance(1, 6, (2, 2, 2))
WORKED = Instance(3, 6, (4, 3, 2, 1, 1, 1, 2, 2, 2))
# {4,1,1}, {3,2,1}, {2,2,2}
WORKED_SPLIT = Partition((0, 1, 1, 0, 0, 1, 2, 2, 2))


def all_partitions(instance):
    out = []
    for assign in itertools.product(range(instance.subsets), repeat=len(instance.numbers)):
        p = Partition(assign)
        try:
            check_partition(instance, p)
        except InvalidPartition:
            continue
        out.append(p)
    return out


def test_small_trace_shape():
    trace = canonical_trace(SMALL, Partition((0, 0, 0)))
    assert len(trace) == 38
    per_number = [Phase.OPEN] + [Phase.DIGIT] * 6 + [Phase.CLOSE] * 2
    assert list(trace.phases) == per_number * 3 + [Phase.FINAL] + [Phase.FILL] * 10
    assert trace.placements[0] == Placement(PieceKind.LG, 1, 1)
    assert trace.placements[-1] == Placement(PieceKind.I, 1, 5)


def test_worked_trace_length():
    trace = canonical_trace(WORKED, WORKED_SPLIT)
    assert len(trace) == 94
    assert trace.placements[0] == Placement(PieceKind.LG, 1, 1)


@pytest.mark.parametrize("instance, partition", [(SMALL, Partition((0, 0, 0))), (WORKED, WORKED_SPLIT)])
def test_canonical_replay_clears_everything(instance, partition):
    verdict, trace = certify(instance, partition)
    assert verdict.ok, verdict.summary()
    assert verdict.cleared_lines == 16 + 4 * instance.target == 40
    assert verdict.final_board.is_empty
    assert verdict.steps == len(trace)


def test_replay_invariants():
    out = reduce(WORKED, strict=False)
    layout = layout_for(WORKED)
    h = 16 + 4 * WORKED.target
    trace = canonical_trace(WORKED, WORKED_SPLIT)
    numbers = iter(zip(WORKED.numbers, WORKED_SPLIT.assign))
    bucket = None
    finals = 0
    for step in replay(out.board, trace):
        b = step.board
        assert covered_holes(b) == []
        assert [w.col for w in narrow_wells(b, 3)] in ([layout.fill], [])
        if step.phase is Phase.FILL:
            assert step.cleared == 4
        else:
            assert step.cleared == 0
        if step.phase is Phase.OPEN:
            _, bucket = next(numbers)
            prof = layout.profile(b, bucket)
            assert prof[0] == prof[1] == prof[2]
        if step.phase is Phase.CLOSE and step.placement.kind is PieceKind.LS:
            a, m, c = layout.profile(b, bucket)
            assert (m - a, c - a) == (2, 3)
        if step.phase is Phase.FINAL:
            assert layout.profile(b, finals) == (h, h, h)
            finals += 1
    assert finals == WORKED.subsets


def test_every_valid_partition_certifies():
    parts = all_partitions(WORKED)
    assert WORKED_SPLIT in parts
    # bucket order is free: every labelling of the three triples works
    assert len(parts) > 6
    for p in parts:
        verdict, _ = certify(WORKED, p)
        assert verdict.ok


def test_input_order_does_not_matter():
    rng = random.Random(3)
    pairs = list(zip(WORKED.numbers, WORKED_SPLIT.assign))
    for _ in range(10):
        rng.shuffle(pairs)
        inst = Instance(3, 6, tuple(x for x, _ in pairs))
        verdict, _ = certify(inst, Partition(tuple(b for _, b in pairs)))
        assert verdict.ok


def test_certify_iff_partition_valid():
    inst = Instance(2, 10, (3, 3, 3, 3, 4, 4))
    for assign in itertools.product(range(2), repeat=6):
        p = Partition(assign)
        try:
            check_partition(inst, p)
            valid = True
        except InvalidPartition:
            valid = False
        if valid:
            assert certify(inst, p)[0].ok
        else:
            with pytest.raises(InvalidPartition):
                certify(inst, p)


def test_partition_rejections():
    with pytest.raises(InvalidPartition, match="sums to"):
        canonical_trace(WORKED, Partition((0, 0, 1, 1, 1, 2, 2, 2, 0)))
    with pytest.raises(InvalidPartition, match="entries"):
        canonical_trace(SMALL, Partition((0, 0)))
    with pytest.raises(InvalidPartition, match="outside"):
        canonical_trace(SMALL, Partition((0, 0, 1)))
    # right sums, wrong sizes: {6} and {2,1,1,1,1}
    lax = Instance(2, 6, (6, 2, 1, 1, 1, 1))
    with pytest.raises(InvalidPartition, match="holds 1 numbers"):
        check_partition(lax, Partition((0, 1, 1, 1, 1, 1)))


def test_truncated_trace():
    out = reduce(SMALL)
    trace = canonical_trace(SMALL, Partition((0, 0, 0)))
    short = Trace(trace.placements[:-3], trace.phases[:-3])
    verdict = verify_trace(out.board, list(out.sequence), short)
    assert not verdict.ok
    assert "pieces remaining" in verdict.failure


def test_kind_mismatch():
    out = reduce(SMALL)
    trace = canonical_trace(SMALL, Partition((0, 0, 0)))
    bad = list(trace.placements)
    bad[1] = Placement(PieceKind.RG, 0, 1)
    verdict = verify_trace(out.board, list(out.sequence), Trace(tuple(bad)))
    assert not verdict.ok and verdict.failed_at == 1
    assert "kind mismatch" in verdict.failure


def test_digit_gun_in_closed_bucket_fails():
    out = reduce(WORKED, strict=False)
    trace = canonical_trace(WORKED, WORKED_SPLIT)
    moved = list(trace.placements)
    # third piece of the first digit is a right gun for bucket 0; drop it in closed bucket 1
    assert moved[3] == Placement(PieceKind.RG, 1, 2)
    moved[3] = moved[3]._replace(col=6)
    verdict = verify_trace(out.board, list(out.sequence), Trace(tuple(moved)))
    assert not verdict.ok
    assert not verdict.final_board.is_empty


def test_top_out_is_reported():
    out = reduce(SMALL)
    # vertical I pieces stacked on the left separator overflow the 5 buffer rows
    many = Trace(tuple(Placement(PieceKind.I, 1, 0) for _ in range(3)))
    verdict = verify_trace(out.board, [PieceKind.I] * 3, many)
    assert verdict.failure == "top-out" and verdict.failed_at == 1
