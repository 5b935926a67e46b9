"""Compile a 3-PARTITION instance into a starting board and a piece sequence.

Column layout for ``s`` buckets (width ``4s + 3``)::

    | b0 b0 b0 | b1 b1 b1 | ... | F |
    ^          ^                ^   ^
    separators at 4b, plus one on each side of the fill column F = 4s + 1

Every bucket starts with a right gun and a left snake planted at the bottom,
which leaves the interior heights at (1, 3, 4).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import Board, PieceKind

BUFFER_ROWS = 5
# interior cells of the planted right gun and left snake, as (interior column, row)
PLANTED_LOCK = ((0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (2, 2), (2, 3))


class InvalidInstance(ValueError):
    def __init__(self, violations: list["Violation"]):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = violations


@dataclass(frozen=True)
class Instance:
    """``subsets`` buckets, each of which must sum to ``target``."""

    subsets: int
    target: int
    numbers: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "numbers", tuple(self.numbers))


@dataclass(frozen=True)
class Violation:
    index: int | None
    message: str

    def __str__(self) -> str:
        return self.message if self.index is None else f"a[{self.index}]: {self.message}"


def validate(instance: Instance, strict: bool = True) -> list[Violation]:
    """Return every violated constraint; an empty list means the instance is usable.

    Strict mode also enforces target/4 < a_i < target/2, which forces exactly
    three numbers into every subset.
    """
    s, target, a = instance.subsets, instance.target, instance.numbers
    out = []
    if s < 1:
        out.append(Violation(None, f"need at least one subset, got {s}"))
    if target < 1:
        out.append(Violation(None, f"target must be positive, got {target}"))
    if len(a) != 3 * s:
        out.append(Violation(None, f"expected {3 * s} numbers, got {len(a)}"))
    for i, x in enumerate(a):
        if x < 1:
            out.append(Violation(i, f"{x} is not positive"))
    if sum(a) != s * target:
        out.append(Violation(None, f"numbers sum to {sum(a)}, expected {s}*{target} = {s * target}"))
    if strict and target >= 1:
        lo, hi = Fraction(target, 4), Fraction(target, 2)
        for i, x in enumerate(a):
            if not lo < x < hi:
                out.append(Violation(i, f"{x} outside open interval ({lo}, {hi})"))
    return out


def require_valid(instance: Instance, strict: bool) -> None:
    violations = validate(instance, strict)
    if violations:
        raise InvalidInstance(violations)


@dataclass(frozen=True)
class Layout:
    """Column roles of a reduction-style board.

    ``separators`` are solid up to ``bucket_height``; ``interiors`` lists the three
    columns of each bucket; ``fill`` is the width-1 column reserved for I pieces.
    """

    width: int
    bucket_height: int
    separators: tuple[int, ...]
    interiors: tuple[tuple[int, int, int], ...]
    fill: int

    @classmethod
    def standard(cls, subsets: int, bucket_height: int) -> "Layout":
        return cls(
            width=4 * subsets + 3,
            bucket_height=bucket_height,
            separators=tuple(4 * b for b in range(subsets + 1)) + (4 * subsets + 2,),
            interiors=tuple((4 * b + 1, 4 * b + 2, 4 * b + 3) for b in range(subsets)),
            fill=4 * subsets + 1,
        )

    @classmethod
    def mini(cls, bucket_height: int) -> "Layout":
        """Five columns: bucket against the left wall, one separator, the fill column."""
        return cls(5, bucket_height, (3,), ((0, 1, 2),), 4)

    def role(self, col: int) -> str:
        if col == self.fill:
            return "fill"
        if col in self.separators:
            return "separator"
        for b, cols in enumerate(self.interiors):
            if col in cols:
                return f"bucket {b}"
        return "unassigned"

    def ruler(self) -> str:
        chars = []
        for c in range(self.width):
            role = self.role(c)
            if role == "fill":
                chars.append("F")
            elif role == "separator":
                chars.append("|")
            elif role.startswith("bucket"):
                chars.append(str(int(role.split()[1]) % 10))
            else:
                chars.append(" ")
        return "".join(chars)

    def profile(self, board: Board, bucket: int) -> tuple[int, int, int]:
        heights = board.column_heights
        return tuple(heights[c] for c in self.interiors[bucket])


def bucket_height(target: int) -> int:
    return 16 + 4 * target


def board_height(target: int) -> int:
    return bucket_height(target) + BUFFER_ROWS


def layout_for(instance: Instance) -> Layout:
    return Layout.standard(instance.subsets, bucket_height(instance.target))


def starting_board(layout: Layout, height: int) -> Board:
    """Separators solid to the bucket height and a planted lock in every bucket."""
    cells = [(c, r) for c in layout.separators for r in range(layout.bucket_height)]
    for cols in layout.interiors:
        cells.extend((cols[dc], r) for dc, r in PLANTED_LOCK)
    return Board.from_cells(layout.width, height, cells)


def build_board(instance: Instance, strict: bool = True) -> Board:
    require_valid(instance, strict)
    return starting_board(layout_for(instance), board_height(instance.target))


def build_sequence(instance: Instance, strict: bool = True) -> list[PieceKind]:
    require_valid(instance, strict)
    LG, RG, T, LS, I = PieceKind.LG, PieceKind.RG, PieceKind.T, PieceKind.LS, PieceKind.I
    seq: list[PieceKind] = []
    for x in instance.numbers:
        seq.append(LG)
        seq.extend([T, T, RG] * x)
        seq.extend([RG, LS])
    seq.extend([LG] * instance.subsets)
    seq.extend([I] * (4 + instance.target))
    return seq


def sequence_length(instance: Instance) -> int:
    s, b = instance.subsets, instance.target
    return 10 * s + 3 * s * b + b + 4


@dataclass(frozen=True)
class ReductionOutput:
    instance: Instance
    board: Board
    sequence: tuple[PieceKind, ...]
    layout: Layout

    @property
    def bucket_height(self) -> int:
        return self.layout.bucket_height


def reduce(instance: Instance, strict: bool = True) -> ReductionOutput:
    return ReductionOutput(
        instance,
        build_board(instance, strict),
        tuple(build_sequence(instance, strict)),
        layout_for(instance),
    )


@dataclass(frozen=True)
class BudgetReport:
    piece_cells: int
    fillable_cells: int
    fillable_formula: int
    per_bucket: dict[str, int]
    bucket_capacity: int

    @property
    def holds(self) -> bool:
        return (
            self.piece_cells == self.fillable_cells == self.fillable_formula
            and sum(self.per_bucket.values()) == self.bucket_capacity
        )

    def lines(self) -> list[str]:
        parts = " + ".join(f"{k} {v}" for k, v in self.per_bucket.items())
        return [
            f"piece cells: {self.piece_cells}",
            f"fillable cells: {self.fillable_cells} (formula {self.fillable_formula})",
            f"per bucket: {parts} = {sum(self.per_bucket.values())} (capacity {self.bucket_capacity})",
            f"budget: {'exact' if self.holds else 'MISMATCH'}",
        ]


def budget_report(instance: Instance, strict: bool = True) -> BudgetReport:
    """Cell accounting: the pieces fill exactly the empty cells below the bucket tops."""
    out = reduce(instance, strict)
    s, b = instance.subsets, instance.target
    h = bucket_height(b)
    below = out.board.rows[:h]
    fillable = h * out.board.width - sum(m.bit_count() for m in below)
    return BudgetReport(
        piece_cells=4 * len(out.sequence),
        fillable_cells=fillable,
        fillable_formula=3 * s * h - 8 * s + h,
        per_bucket={
            "planted": len(PLANTED_LOCK),
            "opens": 3 * 4,
            "digits": 12 * b,
            "closes": 3 * 8,
            "final": 4,
        },
        bucket_capacity=3 * h,
    )
