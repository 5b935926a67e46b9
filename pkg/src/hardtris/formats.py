"""Line-oriented text formats.

``.3p``   first line ``s B``, then the 3s numbers; ``#`` starts a comment.
``.brd``  first line ``W H``, then H rows of ``#``/``.``, top row first.
``.seq``  whitespace-separated piece tokens (LG RG I SQ LS RS T).
``.trc``  one ``KIND orient col`` per line, optionally followed by a phase tag.
``.part`` the bucket index of each number, whitespace-separated; ``#`` comments.
"""

from __future__ import annotations

from .certify import Partition, Phase, Trace
from .engine import Board, PieceKind, Placement
from .reduction import Instance, Layout


class ParseError(ValueError):
    pass


def _strip_comments(text: str) -> list[str]:
    lines = (line.split("#", 1)[0].strip() for line in text.splitlines())
    return [line for line in lines if line]


def _ints(tokens: list[str], what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"{what}: expected integers, got {' '.join(tokens)!r}") from None


def parse_instance(text: str) -> Instance:
    lines = _strip_comments(text)
    if not lines:
        raise ParseError("instance: empty file")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(f"instance: header must be 's B', got {lines[0]!r}")
    s, target = _ints(header, "instance header")
    numbers = _ints(" ".join(lines[1:]).split(), "instance numbers")
    return Instance(s, target, tuple(numbers))


def emit_instance(instance: Instance) -> str:
    return f"{instance.subsets} {instance.target}\n{' '.join(map(str, instance.numbers))}\n"


def parse_board(text: str) -> Board:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError("board: empty file")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(f"board: header must be 'W H', got {lines[0]!r}")
    width, height = _ints(header, "board header")
    rows = lines[1:]
    if len(rows) != height:
        raise ParseError(f"board: header says {height} rows, found {len(rows)}")
    if any(len(r) != width for r in rows):
        raise ParseError(f"board: every row must have {width} cells")
    try:
        return Board.from_strings(rows)
    except ValueError as e:
        raise ParseError(f"board: {e}") from None


def emit_board(board: Board) -> str:
    return f"{board.width} {board.height}\n" + "\n".join(board.to_strings()) + "\n"


def parse_sequence(text: str) -> list[PieceKind]:
    try:
        return [PieceKind.parse(t) for t in text.split()]
    except ValueError as e:
        raise ParseError(f"sequence: {e}") from None


def emit_sequence(seq: list[PieceKind]) -> str:
    return " ".join(k.token for k in seq) + "\n"


def parse_trace(text: str) -> Trace:
    placements, phases = [], []
    for n, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) not in (3, 4):
            raise ParseError(f"trace line {n}: expected 'KIND orient col [PHASE]', got {line!r}")
        try:
            kind = PieceKind.parse(tokens[0])
            phase = Phase(tokens[3]) if len(tokens) == 4 else None
        except ValueError as e:
            raise ParseError(f"trace line {n}: {e}") from None
        orient, col = _ints(tokens[1:3], f"trace line {n}")
        placements.append(Placement(kind, orient, col))
        phases.append(phase)
    return Trace(tuple(placements), tuple(phases))


def emit_trace(trace: Trace) -> str:
    out = []
    for p, phase in zip(trace.placements, trace.phases):
        out.append(f"{p}" + (f" {phase.value}" if phase is not None else ""))
    return "".join(line + "\n" for line in out)


def parse_partition(text: str) -> Partition:
    return Partition(tuple(_ints(" ".join(_strip_comments(text)).split(), "partition")))


def emit_partition(partition: Partition) -> str:
    return " ".join(map(str, partition.assign)) + "\n"


def render(board: Board, layout: Layout | None = None) -> str:
    """'#'/'.' grid, top row first; with a layout, a column-role ruler underneath."""
    lines = board.to_strings()
    if layout is not None:
        lines.append(layout.ruler())
    return "\n".join(lines) + "\n"


def infer_layout(board: Board) -> Layout | None:
    """Standard reduction layout for a board whose shape matches one (5 buffer rows)."""
    if (board.width - 3) % 4 or board.width < 7 or board.height <= 5:
        return None
    return Layout.standard((board.width - 3) // 4, board.height - 5)
