import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardtris.engine import PieceKind, Placement
from hardtris.gadgets import (
    CLOSED,
    LEMMAS,
    OPEN,
    Badness,
    BucketProfile,
    Gadget,
    GadgetEntryError,
    bucket_program,
    check_lemma,
    compose,
    gadget_transition,
    local_placements,
)

LG, RG, I, Sq, LS, RS, T = (PieceKind[k] for k in ("LG", "RG", "I", "Sq", "LS", "RS", "T"))


def tally(outcomes):
    return {b: sum(o.badness is b for o in outcomes) for b in Badness}


@pytest.mark.parametrize(
    "kind, count", [(RG, 6), (LG, 6), (T, 6), (LS, 3), (RS, 3), (Sq, 2), (I, 3)]
)
@pytest.mark.parametrize("profile", [CLOSED, OPEN, BucketProfile((2, 0, 5))])
def test_three_wide_placement_counts(profile, kind, count):
    assert len(local_placements(profile, kind)) == count


def test_right_gun_on_closed_bucket_is_never_good():
    outcomes = local_placements(CLOSED, RG)
    assert len(outcomes) == 6
    assert tally(outcomes)[Badness.GOOD] == 0


def test_left_gun_opens_exactly_one_way():
    outcomes = local_placements(CLOSED, LG)
    good = [o for o in outcomes if o.badness is Badness.GOOD]
    assert len(good) == 1
    assert good[0].placement == Placement(LG, 1, 0)
    assert good[0].profile == BucketProfile.flat(4)


def test_t_and_left_snake_on_closed_bucket():
    t = tally(local_placements(CLOSED, T))
    assert t == {Badness.GOOD: 0, Badness.WELL: 1, Badness.HOLE: 5}
    ls = local_placements(CLOSED, LS)
    assert tally(ls) == {Badness.GOOD: 0, Badness.WELL: 1, Badness.HOLE: 2}
    well = next(o for o in ls if o.badness is Badness.WELL)
    assert well.wells[0].col == 0
    assert well.profile == BucketProfile((1, 5, 6))


def test_hole_outcomes_report_cells_not_profiles():
    o = local_placements(CLOSED, RG)[0]
    assert o.badness is Badness.HOLE
    assert o.profile is None
    assert (0, 1) in o.holes


def test_profile_helpers():
    assert CLOSED.closed_base == 0 and CLOSED.flat_height is None
    assert BucketProfile.closed(4).heights == (5, 7, 8)
    assert OPEN.flat_height == 0 and OPEN.closed_base is None
    with pytest.raises(ValueError):
        BucketProfile((1, 2))


def test_gadget_transitions():
    assert gadget_transition(CLOSED, Gadget.OPEN) == BucketProfile.flat(4)
    assert gadget_transition(BucketProfile.flat(4), Gadget.DIGIT) == BucketProfile.flat(8)
    assert gadget_transition(OPEN, Gadget.CLOSE) == CLOSED
    assert gadget_transition(BucketProfile.flat(12), Gadget.CLOSE) == BucketProfile.closed(12)
    assert gadget_transition(BucketProfile.closed(7), Gadget.FINAL) == BucketProfile.flat(11)


@pytest.mark.parametrize(
    "profile, gadget",
    [(OPEN, Gadget.OPEN), (CLOSED, Gadget.DIGIT), (CLOSED, Gadget.CLOSE), (BucketProfile((1, 2, 3)), Gadget.FINAL)],
)
def test_gadget_entry_mismatch(profile, gadget):
    with pytest.raises(GadgetEntryError):
        gadget_transition(profile, gadget)


def test_close_then_open_is_a_four_row_shift():
    for k in range(0, 20, 4):
        assert compose(BucketProfile.flat(k), [Gadget.CLOSE, Gadget.OPEN]) == BucketProfile.flat(k + 4)


@given(st.lists(st.integers(1, 6), min_size=3, max_size=3))
def test_bucket_program_ends_at_bucket_top(numbers):
    target = sum(numbers)
    assert compose(CLOSED, bucket_program(numbers)) == BucketProfile.flat(16 + 4 * target)


def test_check_lemma_five():
    r = check_lemma(5, 0)
    assert (r.examined, r.good) == (6, 0)
    assert r.lines == [] and r.holds


def test_check_lemma_eight_counts():
    r = check_lemma(8, 0)
    assert [(p.examined, p.good) for p in r.plies] == [(6, 1), (6, 2), (12, 1)]
    assert r.canonical_identified
    assert r.lines[0][1] == BucketProfile.flat(4)


def test_check_lemma_nine():
    r = check_lemma(9, 1)
    assert (r.plies[0].examined, r.plies[0].good) == (6, 3)
    assert [line for line, _ in r.lines] == [Gadget.CLOSE.placements]
    assert r.lines[0][1] == CLOSED
    assert r.min_lookahead == 0
    assert r.counterexamples == []


@pytest.mark.parametrize("lemma", sorted(LEMMAS))
@pytest.mark.parametrize("lookahead", [0, 1, 2])
def test_every_lemma_holds(lemma, lookahead):
    r = check_lemma(lemma, lookahead)
    assert r.holds, r.failures
    assert r.min_lookahead == 0


def test_report_has_one_line_per_placement():
    text = check_lemma(10, 1).lines_text()
    rows = [ln for ln in text if ln.startswith("  ")]
    assert len(rows) == 6
    assert "  1 0 GOOD 4,4,4" in rows
    assert text[-1] == "claim: holds"


def test_unknown_lemma():
    with pytest.raises(ValueError):
        check_lemma(4)
    with pytest.raises(ValueError):
        check_lemma(5, -1)
