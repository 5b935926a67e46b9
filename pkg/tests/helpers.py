"""Shared generators for the test suite."""

import random

from hardtris.engine import Board, PieceKind, Placement, TopOut, apply_placement, enumerate_placements
from hardtris.gadgets import Gadget
from hardtris.reduction import Layout, starting_board

ALL_KINDS = list(PieceKind)


def random_board(rng: random.Random, width: int, height: int, density: float = 0.4) -> Board:
    """Random rows, never full, filled mostly near the bottom."""
    rows = []
    full = (1 << width) - 1
    for r in range(height):
        p = density * (1 - r / height)
        mask = sum(1 << c for c in range(width) if rng.random() < p)
        if mask == full:
            mask &= ~(1 << rng.randrange(width))
        rows.append(mask)
    return Board(width, height, tuple(rows))


def mini_program(rng: random.Random, levels: int) -> list[Placement]:
    """Canonical play for a mini board whose bucket rises ``levels`` gadgets above the opener."""
    layout = Layout.mini(4 + 4 * levels)
    gadgets = [Gadget.OPEN]
    for _ in range(levels):
        gadgets += rng.choice([[Gadget.DIGIT], [Gadget.CLOSE, Gadget.FINAL]])
    out = [p for g in gadgets for p in g.placements]
    out += [Placement(PieceKind.I, 1, layout.fill)] * (layout.bucket_height // 4)
    return out


def mini_case(rng: random.Random, max_pieces: int = 6):
    """A reduction-shaped mini board plus a piece sequence of at most ``max_pieces``.

    The sequence is the tail of canonical play.  Sometimes one earlier drop
    is replaced by a random one, or a tail piece is replaced or two are
    swapped, so both clearable and unclearable cases occur.
    """
    while True:
        levels = rng.choice([1, 1, 2])
        layout = Layout.mini(4 + 4 * levels)
        board = starting_board(layout, layout.bucket_height + 5)
        program = mini_program(rng, levels)
        cut = max(0, len(program) - rng.randint(2, max_pieces))
        deviate = rng.randrange(cut) if cut and rng.random() < 0.25 else None
        try:
            for i, p in enumerate(program[:cut]):
                if i == deviate:
                    p = rng.choice([o.placement for o in enumerate_placements(board, p.kind)])
                board, _ = apply_placement(board, p)
        except TopOut:
            continue
        break
    seq = [p.kind for p in program[cut:]]
    roll = rng.random()
    if roll < 0.35:
        seq[rng.randrange(len(seq))] = rng.choice(ALL_KINDS)
    elif roll < 0.5:
        i, j = rng.sample(range(len(seq)), 2)
        seq[i], seq[j] = seq[j], seq[i]
    return board, seq, layout

# one line per acceptance criterion, printed again in the terminal summary
ACCEPTANCE_LINES: list[str] = []
