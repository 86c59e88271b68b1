"""``synq`` command-line front end.

Exit codes: 0 verified/pass, 1 failed, 2 unresolved, 64 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence, TextIO

import numpy as np

from . import classical, game, ncalg, presentation, repcheck
from .formats import (
    FormatError,
    parse_game,
    parse_graph,
    parse_model,
    render_game,
    render_model,
    render_presentation,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_UNRESOLVED = 2
EXIT_USAGE = 64

LEMMA_TOL = 1e-10

__all__ = ["main", "parse_graph", "parse_game", "dispatch"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _status_code(status: str) -> int:
    return {
        presentation.VERIFIED: EXIT_OK,
        presentation.FAILED: EXIT_FAILED,
        presentation.UNRESOLVED: EXIT_UNRESOLVED,
    }[status]


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="synq", description="Game algebras of synchronous games.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("graph-game", help="write the endomorphism game of a graph")
    s.add_argument("graph")
    s.add_argument("-o", "--output", required=True)

    for name in ("check-star", "counit"):
        s = sub.add_parser(name)
        s.add_argument("game")

    for name in ("present", "verify-delta"):
        s = sub.add_parser(name)
        s.add_argument("game")
        s.add_argument("--variant", choices=ncalg.VARIANTS, default="game")

    s = sub.add_parser("verify-group")
    s.add_argument("game")

    s = sub.add_parser("classical")
    s.add_argument("game")
    s.add_argument("--invertible", action="store_true")
    s.add_argument("--table", action="store_true")

    s = sub.add_parser("basis-count")
    s.add_argument("game")
    s.add_argument("--degree", type=int, required=True)

    s = sub.add_parser("verify-rep")
    s.add_argument("game")
    s.add_argument("model")
    s.add_argument("--variant", choices=ncalg.VARIANTS, default="game")
    s.add_argument("--tol", type=float, default=repcheck.DEFAULT_TOL)

    s = sub.add_parser("compose-rep")
    s.add_argument("game")
    s.add_argument("m1")
    s.add_argument("m2")
    s.add_argument("-o", "--output", required=True)

    s = sub.add_parser("lemma-test")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=1)
    return p


def dispatch(args: argparse.Namespace, out: TextIO) -> int:
    cmd = args.command
    if cmd == "graph-game":
        spec = game.make_graph_game(parse_graph(_read(args.graph)))
        _write(args.output, render_game(spec))
        print(f"wrote game with {spec.inputs} inputs and {len(spec.forbidden)} forbidden tuples to {args.output}", file=out)
        return EXIT_OK

    if cmd == "lemma-test":
        if args.n < 1 or args.dim < 1 or args.trials < 1:
            raise UsageError("--n, --dim and --trials must be positive")
        rng = repcheck.make_rng(args.seed)
        worst = worst_sum = 0.0
        for _ in range(args.trials):
            parts = repcheck.random_projection_partition(args.n, args.dim, rng)
            worst = max(worst, repcheck.lemma_orthogonality_residual(parts))
            worst_sum = max(worst_sum, float(np.linalg.norm(sum(parts) - np.eye(args.dim), 2)))
        ok = worst <= LEMMA_TOL
        print(f"trials {args.trials} n {args.n} dim {args.dim} seed {args.seed}", file=out)
        print(f"max partition error {worst_sum:.3e}", file=out)
        print(f"max pairwise product norm {worst:.3e}", file=out)
        print(f"LEMMA: {'holds' if ok else 'fails'}", file=out)
        return EXIT_OK if ok else EXIT_FAILED

    spec = parse_game(_read(args.game))

    if cmd == "check-star":
        ok, w = game.check_star(spec)
        print("STAR: holds" if ok else "STAR: fails", file=out)
        if w:
            print("witness " + " ".join(map(str, w)), file=out)
        return EXIT_OK if ok else EXIT_FAILED

    if cmd == "counit":
        ok, w = game.check_counit_condition(spec)
        print("COUNIT: holds" if ok else "COUNIT: fails", file=out)
        if w:
            print("witness " + " ".join(map(str, w)), file=out)
        return EXIT_OK if ok else EXIT_FAILED

    if cmd == "present":
        out.write(render_presentation(presentation.present(spec, args.variant)))
        return EXIT_OK

    if cmd == "verify-delta":
        reports = [
            presentation.verify_delta_well_defined(spec, args.variant),
            presentation.verify_coassociativity(spec, args.variant),
        ]
        for r in reports:
            print(r.render(), file=out)
        return max(_status_code(r.status) for r in reports)

    if cmd == "verify-group":
        r = presentation.verify_group_identities(spec)
        print(r.render(), file=out)
        return _status_code(r.status)

    if cmd == "classical":
        points = classical.enumerate_classical_points(spec, args.invertible)
        print(f"{len(points)} points", file=out)
        for n, pt in enumerate(points):
            print(f"{n} {pt}", file=out)
        if args.table:
            table = classical.cayley_table(spec, points)
            out.write(table.to_csv())
            print(table.render(), file=out)
            return EXIT_OK if table.closed else EXIT_FAILED
        return EXIT_OK

    if cmd == "basis-count":
        if args.degree < 0:
            raise UsageError("--degree must be nonnegative")
        counts = ncalg.reduced_words(spec, args.degree)
        for k, c in enumerate(counts):
            print(f"degree {k}: {c}", file=out)
        print(f"cumulative: {sum(counts)}", file=out)
        return EXIT_OK

    if cmd == "verify-rep":
        model = parse_model(_read(args.model))
        rep = repcheck.verify_model(spec, model, args.variant, args.tol)
        print(rep.render(), file=out)
        return EXIT_OK if rep.passed else EXIT_FAILED

    if cmd == "compose-rep":
        m1, m2 = parse_model(_read(args.m1)), parse_model(_read(args.m2))
        for m in (m1, m2):
            if (m.inputs, m.outputs) != (spec.inputs, spec.outputs):
                raise UsageError("model shape does not match the game")
        composed = repcheck.compose_models(m1, m2)
        _write(args.output, render_model(composed))
        print(f"wrote model of dim {composed.dim} to {args.output}", file=out)
        return EXIT_OK

    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return dispatch(args, out)
    except (UsageError, FormatError) as exc:
        print(f"synq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"synq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
