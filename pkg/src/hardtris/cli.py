"""Command-line entry point.

Exit codes: 0 success / claim holds, 1 negative result or violated claim,
2 usage, I/O or parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import formats
from .certify import InvalidPartition, Trace, certify, replay
from .engine import OutOfBounds, TopOut
from .gadgets import LEMMAS, check_lemma
from .reduction import InvalidInstance, budget_report, reduce, validate
from .solve import SearchConfig, Status, search_clearable, solve_3partition

OK, NEGATIVE, USAGE = 0, 1, 2


class _Fail(Exception):
    def __init__(self, message: str, code: int = USAGE):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise _Fail(f"cannot read {path}: {e.strerror}") from None


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as e:
        raise _Fail(f"cannot write {path}: {e.strerror}") from None


def _strict(args) -> bool:
    return args.mode == "strict"


def _add_mode(p: argparse.ArgumentParser, default: str) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--strict", dest="mode", action="store_const", const="strict",
                   help="enforce B/4 < a_i < B/2")
    g.add_argument("--lax", dest="mode", action="store_const", const="lax",
                   help="only check count, positivity and sum")
    p.set_defaults(mode=default)


def cmd_validate(args) -> int:
    instance = formats.parse_instance(_read(args.instance))
    violations = validate(instance, _strict(args))
    for v in violations:
        print(f"violation: {v}")
    print(f"{args.mode}: {'ok' if not violations else f'{len(violations)} violation(s)'}")
    return OK if not violations else NEGATIVE


def cmd_build(args) -> int:
    instance = formats.parse_instance(_read(args.instance))
    out = reduce(instance, _strict(args))
    stem = Path(args.instance).with_suffix("")
    board_path = Path(args.board) if args.board else stem.with_suffix(".brd")
    seq_path = Path(args.sequence) if args.sequence else stem.with_suffix(".seq")
    _write(board_path, formats.emit_board(out.board))
    _write(seq_path, formats.emit_sequence(list(out.sequence)))
    print(f"board: {out.board.width}x{out.board.height}, {out.board.filled_count} filled cells -> {board_path}")
    print(f"sequence: {len(out.sequence)} pieces -> {seq_path}")
    report = budget_report(instance, _strict(args))
    for line in report.lines():
        print(line)
    return OK if report.holds else NEGATIVE


def cmd_certify(args) -> int:
    instance = formats.parse_instance(_read(args.instance))
    violations = validate(instance, _strict(args))
    if violations:
        for v in violations:
            print(f"violation: {v}")
        return NEGATIVE
    if args.auto:
        partition = solve_3partition(instance)
        if partition is None:
            print("no partition exists")
            return NEGATIVE
        print(f"partition: {' '.join(map(str, partition.assign))}")
    else:
        partition = formats.parse_partition(_read(args.partition))
    try:
        verdict, trace = certify(instance, partition, _strict(args))
    except InvalidPartition as e:
        print(f"rejected partition: {e}")
        return NEGATIVE
    trace_path = Path(args.trace) if args.trace else Path(args.instance).with_suffix(".trc")
    _write(trace_path, formats.emit_trace(trace))
    print(f"trace: {len(trace)} placements -> {trace_path}")
    print(verdict.summary())
    return OK if verdict.ok else NEGATIVE


def cmd_lemmas(args) -> int:
    ids = [args.lemma] if args.lemma is not None else sorted(LEMMAS)
    code = OK
    for n in ids:
        report = check_lemma(n, args.lookahead)
        lines = report.lines_text()
        if args.brief:
            lines = [ln for ln in lines if not ln.startswith("  ")]
        print("\n".join(lines))
        if not report.holds:
            code = NEGATIVE
    return code


def cmd_render(args) -> int:
    board = formats.parse_board(_read(args.board))
    sys.stdout.write(formats.render(board, formats.infer_layout(board) if args.ruler else None))
    return OK


def cmd_simulate(args) -> int:
    board = formats.parse_board(_read(args.board))
    trace = formats.parse_trace(_read(args.trace)) if args.trace else Trace(())
    layout = formats.infer_layout(board) if args.ruler else None
    cleared = 0
    try:
        for step in replay(board, trace):
            cleared += step.cleared
            board = step.board
            if args.step:
                phase = step.phase.value if step.phase else "-"
                print(f"step {step.index + 1} {phase} {step.placement} cleared={cleared}")
                sys.stdout.write(formats.render(board, layout))
    except (TopOut, OutOfBounds) as e:
        print(f"stopped: {e}")
        return NEGATIVE
    if not args.step:
        sys.stdout.write(formats.render(board, layout))
    print(f"cleared={cleared}")
    print("board empty" if board.is_empty else f"{board.filled_count} cells remain")
    return OK


def cmd_partition(args) -> int:
    instance = formats.parse_instance(_read(args.instance))
    partition = solve_3partition(instance)
    if partition is None:
        print("no partition exists")
        return NEGATIVE
    sys.stdout.write(formats.emit_partition(partition))
    for b, members in enumerate(partition.subsets(instance)):
        print(f"# bucket {b}: {' + '.join(map(str, members))} = {sum(members)}")
    return OK


def cmd_search(args) -> int:
    board = formats.parse_board(_read(args.board))
    seq = formats.parse_sequence(_read(args.sequence))
    layout = formats.infer_layout(board)
    if args.prune and layout is None:
        raise _Fail("--prune needs a reduction-shaped board (width 4s+3, 5 buffer rows)")
    config = SearchConfig(
        node_budget=args.budget,
        prune_bad_states=args.prune,
        transposition=not args.no_transposition,
        parallel_width=args.workers,
    )
    verdict = search_clearable(board, seq, config, layout)
    print(verdict.summary())
    if verdict.status is Status.CLEARABLE and args.witness:
        _write(Path(args.witness), formats.emit_trace(verdict.witness))
        print(f"witness -> {args.witness}")
    return OK if verdict.status is Status.CLEARABLE else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hardtris", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a .3p instance")
    p.add_argument("instance")
    _add_mode(p, "strict")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="write the reduction board and piece sequence")
    p.add_argument("instance")
    p.add_argument("--board", help="output .brd (default: next to the instance)")
    p.add_argument("--sequence", help="output .seq (default: next to the instance)")
    _add_mode(p, "lax")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("certify", help="replay the canonical clearing trace for a partition")
    p.add_argument("instance")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--partition", help=".part file with one bucket index per number")
    src.add_argument("--auto", action="store_true", help="find the partition by backtracking")
    p.add_argument("--trace", help="output .trc (default: next to the instance)")
    _add_mode(p, "lax")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("lemmas", help="re-check the bucket placement lemmas")
    p.add_argument("--lemma", type=int, choices=sorted(LEMMAS))
    p.add_argument("--lookahead", type=int, default=1)
    p.add_argument("--brief", action="store_true", help="omit the per-placement lines")
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("render", help="print a board")
    p.add_argument("board")
    p.add_argument("--ruler", action="store_true", help="add a column-role ruler")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("simulate", help="replay a trace on a board")
    p.add_argument("board")
    p.add_argument("trace", nargs="?")
    p.add_argument("--step", action="store_true", help="print a frame after every placement")
    p.add_argument("--ruler", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("partition", help="solve the 3-PARTITION instance")
    p.add_argument("instance")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("search", help="exhaustive clearability search")
    p.add_argument("board")
    p.add_argument("sequence")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--prune", action="store_true", help="discard bad states (reduction boards only)")
    p.add_argument("--no-transposition", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--witness", help="write the witness trace here")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.command == "lemmas" and args.lookahead < 0:
        parser.error("--lookahead must be >= 0")
    try:
        return args.func(args)
    except _Fail as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except formats.ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return USAGE
    except InvalidInstance as e:
        print(f"invalid instance: {e}", file=sys.stderr)
        return NEGATIVE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
