"""
Command-line surface for rhombiflip.

Every command prints one JSON value on stdout; log records and diagnostics
go to stderr. `run(argv)` returns a CommandResult and never exits, which is
what the tests drive; `main()` prints and returns the exit code.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from .core.logging_config import setup_logging, setup_logging_from_env
from .core.models import (
    CommandResult,
    CommandStatus,
    FlipPathDocument,
    InvalidInputError,
    PartialResultError,
    RhombiflipError,
    SearchKind,
    TilingDocument,
)
from .services.codec import dump_document, load_document, load_json, path_from_document, tiling_from_document, vars_from_document
from .services.rhombiflip_service import parse_indices, rhombiflip_service
from .services.tiling_core import PlanarTiling, base_tiling

logger = logging.getLogger(__name__)


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of printing usage and exiting."""

    def error(self, message: str):
        raise InvalidInputError(f"{self.prog}: {message}")


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text + "\n")
    except OSError as e:
        raise InvalidInputError(f"cannot write {path}: {e.strerror}") from e


def _tiling(args: argparse.Namespace) -> PlanarTiling:
    if args.tiling:
        return tiling_from_document(load_document(args.tiling, TilingDocument))
    return base_tiling(args.n)


def _seed(args: argparse.Namespace) -> int:
    return rhombiflip_service.default_seed() if args.seed is None else args.seed


def cmd_enumerate(args: argparse.Namespace, notes: List[str]) -> Any:
    payload = rhombiflip_service.enumerate_graph(
        args.n, limit=args.limit, jobs=args.jobs, with_cells=args.cells, include_graph=bool(args.out)
    )
    if args.out:
        _write(args.out, dump_document(payload.pop("graph")))
        notes.append(f"wrote flip graph to {args.out}")
    return payload


def cmd_flip(args: argparse.Namespace, notes: List[str]) -> Any:
    t = _tiling(args)
    if args.index is None:
        return rhombiflip_service.list_flips(t)
    payload = rhombiflip_service.flip(t, args.index)
    if args.out:
        _write(args.out, dump_document(payload["tiling"]))
        notes.append(f"wrote tiling to {args.out}")
    return payload


def cmd_path_to_word(args: argparse.Namespace, notes: List[str]) -> Any:
    return rhombiflip_service.path_to_word(path_from_document(load_document(args.path, FlipPathDocument)))


def cmd_mn_index(args: argparse.Namespace, notes: List[str]) -> Any:
    triple = parse_indices(args.triple, expected=3) if args.triple else None
    return rhombiflip_service.mn_index(args.n, args.word, triple)


def cmd_check_equal(args: argparse.Namespace, notes: List[str]) -> Any:
    payload = rhombiflip_service.check_equal(args.n, args.w1, args.w2, args.budget, args.max_length)
    if payload["verdict"] == "unknown" and payload["separated_by"] is None:
        notes.append("search budget exhausted without a witness")
    return payload


def cmd_check_closed(args: argparse.Namespace, notes: List[str]) -> Any:
    if args.path:
        p = path_from_document(load_document(args.path, FlipPathDocument))
        return rhombiflip_service.check_closed(p, args.budget)
    if args.n is None or args.length is None:
        raise InvalidInputError("check-closed needs --path, or --n and --length for sampling")
    return rhombiflip_service.sample_closed(args.n, args.length, args.count, _seed(args), args.budget)


def cmd_surface_search(args: argparse.Namespace, notes: List[str]) -> Any:
    labeling = parse_indices(args.labeling) if args.labeling else None
    payload = rhombiflip_service.surface_search(args.n, args.kind, args.max_len, labeling)
    if not payload["found"]:
        notes.append(f"no nontrivial closed path of length <= {payload['max_len']}")
    return payload


def cmd_mutate(args: argparse.Namespace, notes: List[str]) -> Any:
    t = tiling_from_document(load_document(args.tiling, TilingDocument))
    p = path_from_document(load_document(args.path, FlipPathDocument))
    values = vars_from_document(load_json(args.vars)) if args.vars else None
    payload = rhombiflip_service.mutate(t, p, values)
    if args.out:
        _write(args.out, dump_document(payload["vars"]))
        notes.append(f"wrote vertex values to {args.out}")
    return payload


def cmd_render(args: argparse.Namespace, notes: List[str]) -> Any:
    svg = rhombiflip_service.render(
        _tiling(args),
        dual=args.dual,
        dual_only=args.dual_only,
        labels=False if args.no_labels else None,
    )
    if args.out:
        _write(args.out, svg)
        notes.append(f"wrote SVG to {args.out}")
        return {"out": args.out, "bytes": len(svg)}
    return svg


COMMANDS: Dict[str, Callable[[argparse.Namespace, List[str]], Any]] = {
    "enumerate": cmd_enumerate,
    "flip": cmd_flip,
    "path-to-word": cmd_path_to_word,
    "mn-index": cmd_mn_index,
    "check-equal": cmd_check_equal,
    "check-closed": cmd_check_closed,
    "surface-search": cmd_surface_search,
    "mutate": cmd_mutate,
    "render": cmd_render,
}


def _tiling_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--tiling", metavar="FILE", help="tiling JSON")
    source.add_argument("--n", type=int, help="use the base tiling of the 2n-zonogon")


def build_parser() -> CommandParser:
    parser = CommandParser(prog="rhombiflip", description="Rhombile tilings, flips and G_n^3 words.")
    parser.add_argument("--seed", type=int, default=None, help="seed for sampling (default $RHOMBIFLIP_SEED)")
    parser.add_argument("--jobs", type=int, default=None, help="worker threads for enumeration")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = commands.add_parser("enumerate", help="flip graph of the 2n-zonogon")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, default=None, help="vertex limit")
    p.add_argument("--out", metavar="FILE", help="write the graph JSON")
    p.add_argument("--cells", action="store_true", help="count square and octagon 2-cells")

    p = commands.add_parser("flip", help="list or apply flips")
    _tiling_source(p)
    p.add_argument("--index", type=int, default=None, help="apply the K-th listed flip")
    p.add_argument("--out", metavar="FILE", help="write the flipped tiling")

    p = commands.add_parser("path-to-word", help="word of a flip path")
    p.add_argument("--path", metavar="FILE", required=True)

    p = commands.add_parser("mn-index", help="index invariant of a word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", required=True, help='e.g. "124.123.124.123"')
    p.add_argument("--triple", default=None, help="i,j,k; without it the certificate is printed")

    p = commands.add_parser("check-equal", help="bounded equality of two words")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p.add_argument("--budget", type=int, default=None, help="maximum words visited")
    p.add_argument("--max-length", type=int, default=None)

    p = commands.add_parser("check-closed", help="triviality of closed flip paths")
    p.add_argument("--path", metavar="FILE", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--length", type=int, default=None, help="maximum sampled length")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--budget", type=int, default=None, help="maximum words visited")

    p = commands.add_parser("surface-search", help="nontrivial closed path on a glued surface")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=[k.value for k in SearchKind], required=True)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--labeling", default=None, help="boundary labels e_1,...,e_n")

    p = commands.add_parser("mutate", help="transport vertex values along a path")
    p.add_argument("--tiling", metavar="FILE", required=True)
    p.add_argument("--path", metavar="FILE", required=True)
    p.add_argument("--vars", metavar="FILE", default=None, help="vertex values (default all ones)")
    p.add_argument("--out", metavar="FILE")

    p = commands.add_parser("render", help="SVG of a tiling and its dual diagram")
    _tiling_source(p)
    p.add_argument("--dual", action="store_true", help="overlay the dual diagram")
    p.add_argument("--dual-only", action="store_true", help="draw only the dual diagram")
    p.add_argument("--no-labels", action="store_true")
    p.add_argument("--out", metavar="FILE")

    return parser


def run(argv: Sequence[str]) -> CommandResult:
    """
    Parse argv and execute one command.

    Args:
        argv: Arguments without the program name

    Returns:
        CommandResult with status ok and the command's JSON payload, or
        status error with the message and error code as diagnostics.
    """
    notes: List[str] = []
    try:
        args = build_parser().parse_args(list(argv))
        if args.log_level:
            setup_logging(log_dir=os.getenv("LOG_DIR"), log_level=args.log_level)
        logger.debug(f"Running command {args.command}", extra={"lifecycle_stage": "command_start"})
        payload = COMMANDS[args.command](args, notes)
        return CommandResult(status=CommandStatus.OK, payload=payload, diagnostics=notes)

    except RhombiflipError as e:
        diagnostics = notes + [e.message, f"error_code={e.error_code}"]
        if isinstance(e, PartialResultError) and e.partial is not None:
            diagnostics.append(f"partial graph: {len(e.partial.vertices)} vertices, {len(e.partial.edges)} edges")
        logger.info(f"Command failed: {e.message}", extra={"lifecycle_stage": "command_error"})
        return CommandResult(status=CommandStatus.ERROR, diagnostics=diagnostics)

    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True, extra={"lifecycle_stage": "command_error"})
        return CommandResult(status=CommandStatus.ERROR, diagnostics=notes + [f"internal error: {e}"])


def main(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging_from_env()
    result = run(sys.argv[1:] if argv is None else argv)
    for note in result.diagnostics:
        print(note, file=sys.stderr)
    if result.status == CommandStatus.OK:
        print(json.dumps(result.payload, sort_keys=True, indent=2))
    else:
        print(dump_document(result))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
