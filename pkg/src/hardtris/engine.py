"""Hard-drop Tetris engine.

The player picks an orientation and a column while the piece is still in the
top buffer; the piece then falls straight down and locks.  Full rows vanish
immediately and every surviving row above them shifts down as a whole row
(no per-cell settling).

Coordinates are ``(col, row)`` with row 0 at the bottom.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple


class PieceKind(enum.Enum):
    LG = "LG"  # left gun
    RG = "RG"  # right gun
    I = "I"
    Sq = "SQ"
    LS = "LS"  # left snake
    RS = "RS"  # right snake
    T = "T"

    @classmethod
    def parse(cls, token: str) -> "PieceKind":
        try:
            return cls(token.upper())
        except ValueError:
            raise ValueError(f"unknown piece kind {token!r}") from None

    @property
    def token(self) -> str:
        return self.value


Cell = tuple[int, int]

# (col, row) offsets, normalized so min col = min row = 0.
ORIENTATIONS: dict[PieceKind, tuple[frozenset[Cell], ...]] = {
    PieceKind.I: (
        frozenset({(0, 0), (1, 0), (2, 0), (3, 0)}),
        frozenset({(0, 0), (0, 1), (0, 2), (0, 3)}),
    ),
    PieceKind.Sq: (frozenset({(0, 0), (1, 0), (0, 1), (1, 1)}),),
    PieceKind.T: (
        frozenset({(0, 0), (1, 0), (2, 0), (1, 1)}),  # stem up
        frozenset({(1, 0), (1, 1), (1, 2), (0, 1)}),  # stem left
        frozenset({(1, 0), (0, 1), (1, 1), (2, 1)}),  # stem down
        frozenset({(0, 0), (0, 1), (0, 2), (1, 1)}),  # stem right
    ),
    PieceKind.RG: (
        frozenset({(0, 0), (1, 0), (2, 0), (2, 1)}),
        frozenset({(1, 0), (1, 1), (1, 2), (0, 2)}),
        frozenset({(0, 0), (0, 1), (1, 1), (2, 1)}),
        frozenset({(0, 0), (0, 1), (0, 2), (1, 0)}),
    ),
    PieceKind.LG: (
        frozenset({(0, 0), (1, 0), (2, 0), (0, 1)}),
        frozenset({(0, 0), (0, 1), (0, 2), (1, 2)}),
        frozenset({(2, 0), (0, 1), (1, 1), (2, 1)}),
        frozenset({(1, 0), (1, 1), (1, 2), (0, 0)}),
    ),
    PieceKind.LS: (
        frozenset({(0, 0), (0, 1), (1, 1), (1, 2)}),
        frozenset({(1, 0), (2, 0), (0, 1), (1, 1)}),
    ),
    PieceKind.RS: (
        frozenset({(1, 0), (1, 1), (0, 1), (0, 2)}),
        frozenset({(0, 0), (1, 0), (1, 1), (2, 1)}),
    ),
}


class InvalidOrientation(ValueError):
    def __init__(self, kind: PieceKind, orient: int):
        super().__init__(
            f"{kind.token} has {len(ORIENTATIONS[kind])} orientation(s); got index {orient}"
        )
        self.kind = kind
        self.orient = orient


class OutOfBounds(ValueError):
    pass


class TopOut(Exception):
    """The piece came to rest with a cell at or above the board height."""

    def __init__(self, placement: "Placement", row: int, board: "Board"):
        super().__init__(f"top-out: {placement} rests at row {row}")
        self.placement = placement
        self.row = row
        self.board = board


@dataclass(frozen=True)
class _Shape:
    cells: tuple[Cell, ...]
    width: int
    height: int
    # lowest occupied row offset for each piece column
    bottoms: tuple[int, ...]
    # bitmask per row offset, relative to the piece's column 0
    masks: tuple[int, ...]


def _shape(cells: frozenset[Cell]) -> _Shape:
    width = max(c for c, _ in cells) + 1
    height = max(r for _, r in cells) + 1
    bottoms = tuple(min(r for c, r in cells if c == dc) for dc in range(width))
    masks = tuple(sum(1 << c for c, r in cells if r == dr) for dr in range(height))
    return _Shape(tuple(sorted(cells)), width, height, bottoms, masks)


_SHAPES = {kind: tuple(_shape(o) for o in table) for kind, table in ORIENTATIONS.items()}


def _lookup(kind: PieceKind, orient: int) -> _Shape:
    shapes = _SHAPES[kind]
    if not 0 <= orient < len(shapes):
        raise InvalidOrientation(kind, orient)
    return shapes[orient]


def piece_cells(kind: PieceKind, orient: int) -> list[Cell]:
    return list(_lookup(kind, orient).cells)


def orientation_count(kind: PieceKind) -> int:
    return len(ORIENTATIONS[kind])


def piece_width(kind: PieceKind, orient: int) -> int:
    return _lookup(kind, orient).width


class Placement(NamedTuple):
    kind: PieceKind
    orient: int
    col: int

    def __str__(self) -> str:
        return f"{self.kind.token} {self.orient} {self.col}"


@dataclass(frozen=True)
class Board:
    """Occupancy grid stored as one bitmask per row, bottom row first.

    ``cleared_total`` is bookkeeping only and does not take part in equality.
    """

    width: int
    height: int
    rows: tuple[int, ...]
    cleared_total: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"board must be non-degenerate, got {self.width}x{self.height}")
        if len(self.rows) != self.height:
            raise ValueError(f"expected {self.height} rows, got {len(self.rows)}")
        full = self.full_mask
        for r, mask in enumerate(self.rows):
            if mask < 0 or mask > full:
                raise ValueError(f"row {r} has cells outside width {self.width}")
            if mask == full:
                raise ValueError(f"row {r} is completely full")

    @classmethod
    def empty(cls, width: int, height: int) -> "Board":
        return cls(width, height, (0,) * height)

    @classmethod
    def from_cells(cls, width: int, height: int, cells: Iterable[Cell]) -> "Board":
        rows = [0] * height
        for c, r in cells:
            if not (0 <= c < width and 0 <= r < height):
                raise ValueError(f"cell {(c, r)} outside {width}x{height}")
            rows[r] |= 1 << c
        return cls(width, height, tuple(rows))

    @classmethod
    def from_strings(cls, lines: list[str]) -> "Board":
        """Build from '#'/'.' rows given top row first."""
        if not lines:
            raise ValueError("no rows")
        width = len(lines[0])
        rows = []
        for line in reversed(lines):
            if len(line) != width or set(line) - {"#", "."}:
                raise ValueError(f"bad board row {line!r}")
            rows.append(sum(1 << c for c, ch in enumerate(line) if ch == "#"))
        return cls(width, len(lines), tuple(rows))

    @property
    def full_mask(self) -> int:
        return (1 << self.width) - 1

    def filled(self, col: int, row: int) -> bool:
        return bool(self.rows[row] >> col & 1)

    def cells(self) -> list[Cell]:
        return [(c, r) for r, m in enumerate(self.rows) for c in range(self.width) if m >> c & 1]

    @cached_property
    def filled_count(self) -> int:
        return sum(m.bit_count() for m in self.rows)

    @property
    def is_empty(self) -> bool:
        return not any(self.rows)

    @cached_property
    def column_heights(self) -> tuple[int, ...]:
        """One past the highest filled cell of each column (0 if the column is empty)."""
        heights = [0] * self.width
        pending = self.full_mask
        for r in range(self.height - 1, -1, -1):
            hit = self.rows[r] & pending
            while hit:
                low = hit & -hit
                heights[low.bit_length() - 1] = r + 1
                hit ^= low
            pending &= ~self.rows[r]
            if not pending:
                break
        return tuple(heights)

    def to_strings(self) -> list[str]:
        return [
            "".join("#" if m >> c & 1 else "." for c in range(self.width))
            for m in reversed(self.rows)
        ]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def _check_bounds(board: Board, shape: _Shape, col: int) -> None:
    if col < 0 or col + shape.width > board.width:
        raise OutOfBounds(f"piece of width {shape.width} at column {col} leaves a {board.width}-wide board")


def _rest_row(board: Board, shape: _Shape, col: int) -> int:
    heights = board.column_heights
    return max(heights[col + dc] - b for dc, b in enumerate(shape.bottoms)) if shape.bottoms else 0


def drop_row(board: Board, kind: PieceKind, orient: int, col: int) -> int:
    """Row of the piece's bottom offset once it has fallen straight down from above the stack."""
    shape = _lookup(kind, orient)
    _check_bounds(board, shape, col)
    return max(0, _rest_row(board, shape, col))


def placed_cells(board: Board, p: Placement) -> list[Cell]:
    """Cells the piece occupies at rest, before any line clear."""
    row = drop_row(board, p.kind, p.orient, p.col)
    return [(p.col + c, row + r) for c, r in _lookup(p.kind, p.orient).cells]


def apply_placement(board: Board, p: Placement) -> tuple[Board, int]:
    shape = _lookup(p.kind, p.orient)
    _check_bounds(board, shape, p.col)
    row = max(0, _rest_row(board, shape, p.col))
    if row + shape.height > board.height:
        raise TopOut(p, row + shape.height - 1, board)
    rows = list(board.rows)
    for dr, mask in enumerate(shape.masks):
        rows[row + dr] |= mask << p.col
    full = board.full_mask
    kept = [m for m in rows if m != full]
    cleared = board.height - len(kept)
    if cleared:
        kept.extend([0] * cleared)
    return Board(board.width, board.height, tuple(kept), board.cleared_total + cleared), cleared


class Option(NamedTuple):
    """One candidate drop for a piece: the decision, where it rests, and whether it loses."""

    placement: Placement
    row: int
    tops_out: bool


def enumerate_placements(
    board: Board, kind: PieceKind, window: tuple[int, int] | None = None
) -> list[Option]:
    """Every in-bounds (orientation, column), orientation-major then column ascending.

    ``window`` restricts the piece to columns ``[lo, hi)``.
    """
    lo, hi = window if window is not None else (0, board.width)
    out = []
    for orient, shape in enumerate(_SHAPES[kind]):
        for col in range(lo, hi - shape.width + 1):
            row = max(0, _rest_row(board, shape, col))
            out.append(Option(Placement(kind, orient, col), row, row + shape.height > board.height))
    return out


def covered_holes(board: Board) -> list[Cell]:
    heights = board.column_heights
    return [
        (c, r)
        for c in range(board.width)
        for r in range(heights[c])
        if not board.rows[r] >> c & 1
    ]


class Well(NamedTuple):
    col: int
    bottom: int
    depth: int


def narrow_wells(board: Board, min_depth: int) -> list[Well]:
    """Open width-1 shafts: empty cells above a column's top whose side neighbours are filled or wall."""
    if min_depth < 1:
        raise ValueError("min_depth must be >= 1")
    heights = board.column_heights
    out = []
    for c in range(board.width):
        bottom = heights[c]
        sides = (1 << (c - 1) if c > 0 else 0) | (1 << (c + 1) if c + 1 < board.width else 0)
        depth = 0
        r = bottom
        while r < board.height and board.rows[r] & sides == sides:
            depth += 1
            r += 1
        if depth >= min_depth:
            out.append(Well(c, bottom, depth))
    return out
