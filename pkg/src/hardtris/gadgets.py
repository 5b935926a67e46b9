"""Single-bucket analysis: every way a piece can land in a 3-wide bucket, and
whether the canonical open / digit / close moves are the only safe ones.

A bucket is modelled by the heights of its three interior columns above a
common floor.  The analysis embeds that profile in a five-column board
(bucket against the left wall, a tall separator, an empty fill column) so
that the engine's ordinary drop and clear rules apply and no row can ever
complete.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import cycle, islice

from .engine import (
    Board,
    Cell,
    PieceKind,
    Placement,
    Well,
    apply_placement,
    covered_holes,
    enumerate_placements,
    narrow_wells,
)
from .reduction import Layout

# A width-1 shaft this deep next to a wall only an I can fill.  Depth-3 shafts
# are tolerated here because the close sequence legitimately passes through one.
WELL_DEPTH = 4
HEADROOM = 16

LG, RG, T, LS = PieceKind.LG, PieceKind.RG, PieceKind.T, PieceKind.LS


class Badness(enum.Enum):
    GOOD = "GOOD"
    HOLE = "HOLE"
    WELL = "WELL"


@dataclass(frozen=True)
class BucketProfile:
    heights: tuple[int, int, int]

    def __post_init__(self):
        h = tuple(self.heights)
        if len(h) != 3 or min(h) < 0:
            raise ValueError(f"bucket profile needs three non-negative heights, got {h}")
        object.__setattr__(self, "heights", h)

    @classmethod
    def flat(cls, k: int = 0) -> "BucketProfile":
        return cls((k, k, k))

    @classmethod
    def closed(cls, base: int = 0) -> "BucketProfile":
        return cls((base + 1, base + 3, base + 4))

    @property
    def flat_height(self) -> int | None:
        a, b, c = self.heights
        return a if a == b == c else None

    @property
    def closed_base(self) -> int | None:
        a, b, c = self.heights
        return a - 1 if a >= 1 and (b, c) == (a + 2, a + 3) else None

    def __str__(self) -> str:
        return "(%d, %d, %d)" % self.heights


CLOSED = BucketProfile.closed(0)
OPEN = BucketProfile.flat(0)


def bucket_board(profile: BucketProfile) -> tuple[Board, Layout]:
    height = max(profile.heights) + HEADROOM
    layout = Layout.mini(height)
    cells = [(layout.separators[0], r) for r in range(height)]
    for c, h in zip(layout.interiors[0], profile.heights):
        cells.extend((c, r) for r in range(h))
    return Board.from_cells(layout.width, height, cells), layout


def classify(board: Board, interior: tuple[int, ...]) -> tuple[Badness, list[Cell], list[Well]]:
    holes = [cell for cell in covered_holes(board) if cell[0] in interior]
    wells = [w for w in narrow_wells(board, WELL_DEPTH) if w.col in interior]
    if holes:
        return Badness.HOLE, holes, wells
    if wells:
        return Badness.WELL, holes, wells
    return Badness.GOOD, holes, wells


@dataclass(frozen=True)
class LocalOutcome:
    placement: Placement
    badness: Badness
    heights: tuple[int, int, int]
    holes: tuple[Cell, ...]
    wells: tuple[Well, ...]
    board: Board = field(repr=False, compare=False)

    @property
    def profile(self) -> BucketProfile | None:
        """Resulting profile, or None when holes make the heights meaningless."""
        return None if self.holes else BucketProfile(self.heights)


def _outcomes(board: Board, layout: Layout, kind: PieceKind) -> list[LocalOutcome]:
    interior = layout.interiors[0]
    out = []
    for opt in enumerate_placements(board, kind, window=(interior[0], interior[-1] + 1)):
        # HEADROOM keeps every local drop well below the top
        after, _ = apply_placement(board, opt.placement)
        badness, holes, wells = classify(after, interior)
        heights = tuple(after.column_heights[c] for c in interior)
        out.append(LocalOutcome(opt.placement, badness, heights, tuple(holes), tuple(wells), after))
    return out


def local_placements(profile: BucketProfile, kind: PieceKind) -> list[LocalOutcome]:
    board, layout = bucket_board(profile)
    return _outcomes(board, layout, kind)


class Gadget(enum.Enum):
    OPEN = "OPEN"
    DIGIT = "DIGIT"
    CLOSE = "CLOSE"
    FINAL = "FINAL"

    @property
    def placements(self) -> tuple[Placement, ...]:
        """Canonical drops, columns relative to the bucket's leftmost interior column."""
        return _CANONICAL[self]

    @property
    def pieces(self) -> tuple[PieceKind, ...]:
        return tuple(p.kind for p in self.placements)


_CANONICAL = {
    Gadget.OPEN: (Placement(LG, 1, 0),),
    Gadget.DIGIT: (Placement(T, 0, 0), Placement(T, 3, 0), Placement(RG, 1, 1)),
    Gadget.CLOSE: (Placement(RG, 0, 0), Placement(LS, 0, 1)),
    Gadget.FINAL: (Placement(LG, 1, 0),),
}


class GadgetEntryError(ValueError):
    pass


def gadget_transition(profile: BucketProfile, gadget: Gadget) -> BucketProfile:
    if gadget in (Gadget.OPEN, Gadget.FINAL):
        if profile.closed_base is None:
            raise GadgetEntryError(f"{gadget.value} needs a closed bucket, got {profile}")
    elif profile.flat_height is None:
        raise GadgetEntryError(f"{gadget.value} needs a flat bucket, got {profile}")
    board, layout = bucket_board(profile)
    interior = layout.interiors[0]
    for p in gadget.placements:
        board, _ = apply_placement(board, p._replace(col=p.col + interior[0]))
        badness, holes, wells = classify(board, interior)
        if badness is not Badness.GOOD:
            raise AssertionError(f"{gadget.value} step {p} left the bucket {badness.value}: {holes or wells}")
    return BucketProfile(layout.profile(board, 0))


# -- lemma harness -----------------------------------------------------------


@dataclass(frozen=True)
class LemmaClaim:
    entry: BucketProfile
    pieces: tuple[PieceKind, ...]
    # (examined, good, well) per ply, aggregated over all surviving states; None = not claimed
    plies: tuple[tuple[int | None, int | None, int | None], ...]
    canonical: tuple[Placement, ...] | None
    exit: BucketProfile | None
    continuation: tuple[PieceKind, ...]


_DIGIT = Gadget.DIGIT.pieces
LEMMAS: dict[int, LemmaClaim] = {
    5: LemmaClaim(CLOSED, (RG,), ((6, 0, None),), None, None, (LG,) + _DIGIT),
    6: LemmaClaim(CLOSED, (T,), ((6, 0, 1),), None, None, (LG,) + _DIGIT),
    7: LemmaClaim(CLOSED, (LS,), ((3, 0, 1),), None, None, (LG,) + _DIGIT),
    8: LemmaClaim(
        OPEN, _DIGIT, ((6, 1, None), (6, 2, None), (12, 1, None)),
        Gadget.DIGIT.placements, BucketProfile.flat(4), _DIGIT,
    ),
    9: LemmaClaim(
        OPEN, Gadget.CLOSE.pieces, ((6, 3, None), (None, None, None)),
        Gadget.CLOSE.placements, CLOSED, (LG,) + _DIGIT,
    ),
    10: LemmaClaim(CLOSED, (LG,), ((6, 1, None),), Gadget.OPEN.placements, BucketProfile.flat(4), _DIGIT),
}

MAX_LOOKAHEAD = 4


@dataclass
class PlyStats:
    kind: PieceKind
    examined: int = 0
    good: int = 0
    well: int = 0
    hole: int = 0
    # (line so far, outcome) for every examined placement
    rows: list[tuple[tuple[Placement, ...], LocalOutcome]] = field(default_factory=list)


@dataclass
class LemmaReport:
    lemma: int
    lookahead: int
    claim: LemmaClaim
    plies: list[PlyStats]
    lines: list[tuple[tuple[Placement, ...], BucketProfile]]
    min_lookahead: int | None
    failures: list[str]

    @property
    def examined(self) -> int:
        return self.plies[0].examined

    @property
    def good(self) -> int:
        return self.plies[0].good

    @property
    def canonical_identified(self) -> bool:
        c = self.claim.canonical
        return c is not None and [line for line, _ in self.lines] == [c]

    @property
    def counterexamples(self) -> list[tuple[Placement, ...]]:
        return [line for line, _ in self.lines if line != self.claim.canonical]

    @property
    def holds(self) -> bool:
        return not self.failures

    def lines_text(self) -> list[str]:
        c = self.claim
        out = [
            f"lemma {self.lemma}: entry {c.entry} pieces {' '.join(k.token for k in c.pieces)}"
            f" lookahead {self.lookahead}"
        ]
        for i, ply in enumerate(self.plies, 1):
            out.append(
                f"ply {i} {ply.kind.token}: {ply.examined} placements, {ply.good} good,"
                f" {ply.well} well, {ply.hole} hole"
            )
            for prefix, o in ply.rows:
                via = " ".join(f"[{p}]" for p in prefix)
                heights = ",".join(map(str, o.heights))
                out.append(
                    f"  {o.placement.orient} {o.placement.col} {o.badness.value} {heights}"
                    + (f" after {via}" if via else "")
                )
        for line, prof in self.lines:
            tag = "canonical" if line == c.canonical else "counterexample"
            out.append(f"line: {' ; '.join(map(str, line))} -> {prof} {tag}")
        if not self.lines:
            out.append("line: none survives")
        out.append(
            "minimal sufficient lookahead: "
            + ("none within %d" % MAX_LOOKAHEAD if self.min_lookahead is None else str(self.min_lookahead))
        )
        out.extend(f"failed: {f}" for f in self.failures)
        out.append(f"claim: {'holds' if self.holds else 'VIOLATED'}")
        return out


def _survives(board: Board, layout: Layout, pieces: tuple[PieceKind, ...], plies: int) -> bool:
    if plies == 0:
        return True
    for o in _outcomes(board, layout, pieces[0]):
        if o.badness is Badness.GOOD and _survives(o.board, layout, pieces[1:], plies - 1):
            return True
    return False


def _explore(claim: LemmaClaim):
    board, layout = bucket_board(claim.entry)
    plies = [PlyStats(k) for k in claim.pieces]
    frontier = [((), board)]
    for ply, kind in zip(plies, claim.pieces):
        nxt = []
        for prefix, b in frontier:
            for o in _outcomes(b, layout, kind):
                ply.examined += 1
                ply.rows.append((prefix, o))
                if o.badness is Badness.GOOD:
                    ply.good += 1
                    nxt.append((prefix + (o.placement,), o.board))
                elif o.badness is Badness.WELL:
                    ply.well += 1
                else:
                    ply.hole += 1
        frontier = nxt
    return layout, plies, frontier


def check_lemma(lemma: int, lookahead: int = 1) -> LemmaReport:
    """Exhaustively replay the lemma's pieces on its entry bucket and compare against its claim."""
    if lemma not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma}; expected one of {sorted(LEMMAS)}")
    if lookahead < 0:
        raise ValueError("lookahead must be >= 0")
    claim = LEMMAS[lemma]
    layout, plies, frontier = _explore(claim)
    cont = tuple(islice(cycle(claim.continuation), max(lookahead, MAX_LOOKAHEAD)))
    expected = [] if claim.canonical is None else [claim.canonical]

    def surviving(k: int):
        return [
            (line, BucketProfile(layout.profile(b, 0)))
            for line, b in frontier
            if _survives(b, layout, cont, k)
        ]

    lines = surviving(lookahead)
    min_lookahead = next(
        (k for k in range(MAX_LOOKAHEAD + 1) if [ln for ln, _ in surviving(k)] == expected), None
    )

    failures = []
    for i, (ply, want) in enumerate(zip(plies, claim.plies), 1):
        for name, got, exp in zip(("examined", "good", "well"), (ply.examined, ply.good, ply.well), want):
            if exp is not None and got != exp:
                failures.append(f"ply {i}: {name} {got}, expected {exp}")
    if [ln for ln, _ in lines] != expected:
        failures.append(f"{len(lines)} line(s) survive, expected {len(expected)}")
    elif claim.exit is not None and lines[0][1] != claim.exit:
        failures.append(f"canonical line ends at {lines[0][1]}, expected {claim.exit}")
    return LemmaReport(lemma, lookahead, claim, plies, lines, min_lookahead, failures)


def bucket_program(numbers: list[int]) -> list[Gadget]:
    """Gadgets one bucket receives for the given numbers, ending with its final opener."""
    out: list[Gadget] = []
    for x in numbers:
        out.append(Gadget.OPEN)
        out.extend([Gadget.DIGIT] * x)
        out.append(Gadget.CLOSE)
    out.append(Gadget.FINAL)
    return out


def compose(profile: BucketProfile, gadgets: list[Gadget]) -> BucketProfile:
    for g in gadgets:
        profile = gadget_transition(profile, g)
    return profile
