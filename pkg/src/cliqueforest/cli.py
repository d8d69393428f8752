"""Command-line front end.

Exit codes: 0 success/pass, 1 finding (not embeddable, obstruction found,
verification failure), 2 input error, 3 synthesis stage failure.  All output
is deterministic for a fixed configuration.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

from . import serialize
from .diffeo import (
    DEFAULT_GRID,
    DiffeoExpr,
    DomainError,
    InvariantBreach,
    Manifold,
    TagMismatchError,
    fixed_points,
)
from .graphs import GraphFormatError, check_component_completeness, parse_graph, to_dot
from .obstructions import (
    center_nonabelian_check,
    find_centralizer_quadruple,
    heisenberg_ball,
    parse_oracle,
)
from .raag import NotApplicableError, commutation_graph, embeddable_raag
from .synthesis import (
    GeneratorAssignment,
    NotEmbeddableError,
    SynthesisError,
    SynthesisOptions,
    synthesize_embedding,
    verify_assignment,
)

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_INPUT = 2
EXIT_SYNTH = 3


def _write(payload: dict, out: Optional[str]):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _load_graph(path: str):
    return parse_graph(_read(path))


def _load_expr(path: str) -> DiffeoExpr:
    return serialize.loads_expr(_read(path))


def _manifold(arg: str) -> Manifold:
    try:
        return Manifold({"I": "I", "S1": "S1", "R": "R"}[arg])
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown manifold {arg!r} (use I or S1)")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--out", help="output file (default: stdout)")


def cmd_decide(args) -> int:
    g = _load_graph(args.graph)
    decision = embeddable_raag(g, args.manifold)
    _write(decision.to_dict(), args.out)
    return EXIT_OK if decision.embeddable else EXIT_FINDING


def cmd_synthesize(args) -> int:
    g = _load_graph(args.graph)
    opts = SynthesisOptions(
        word_len=args.word_len,
        grid_n=args.grid,
        basepoint=args.basepoint,
        alpha_k=args.alpha_k,
    )
    try:
        assignment = synthesize_embedding(g, args.manifold, opts)
    except NotEmbeddableError as exc:
        _write(
            {"embeddable": False, "missing_edge": exc.witness.to_dict()}, args.out
        )
        return EXIT_FINDING
    except SynthesisError as exc:
        print(f"synthesis failed: {exc}", file=sys.stderr)
        return EXIT_SYNTH
    _write(assignment.to_dict(), args.out)
    report = verify_assignment(assignment, args.word_len, args.grid, args.tol)
    _write(report.to_dict(), args.report)
    return EXIT_OK if report.ok else EXIT_FINDING


def cmd_verify(args) -> int:
    assignment = GeneratorAssignment.from_dict(json.loads(_read(args.assignment)))
    report = verify_assignment(assignment, args.word_len, args.grid, args.tol)
    _write(report.to_dict(), args.out)
    return EXIT_OK if report.ok else EXIT_FINDING


def cmd_fixpoints(args) -> int:
    e = _load_expr(args.expr)
    domain = None
    if e.manifold is Manifold.LINE:
        domain = (args.lo, args.hi)
    fps = fixed_points(e, args.grid, args.tol, domain)
    _write(
        {
            "points": list(fps.points),
            "flags": list(fps.flags),
            "residual_tol": fps.residual_tol,
            "interval_signs": list(fps.interval_signs),
            "degenerate": fps.degenerate,
            "grid_n": fps.grid_n,
        },
        args.out,
    )
    return EXIT_FINDING if fps.degenerate else EXIT_OK


def cmd_commgraph(args) -> int:
    exprs = [_load_expr(p) for p in args.exprs]
    domain = (args.lo, args.hi) if exprs and exprs[0].manifold is Manifold.LINE else None
    result = commutation_graph(exprs, args.tol, args.power_bound, args.grid, domain)
    completeness = check_component_completeness(result.graph)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(result.graph))
    payload = result.to_dict()
    payload["completeness"] = completeness.to_dict()
    _write(payload, args.out)
    return EXIT_OK if completeness.ok else EXIT_FINDING


def cmd_obstruct(args) -> int:
    if args.elements:
        oracle = parse_oracle(_read(args.elements))
    else:
        oracle = heisenberg_ball(args.radius)
    cert = find_centralizer_quadruple(oracle)
    nonab, witness = center_nonabelian_check(oracle)
    payload = {
        "found": cert is not None,
        "certificate": cert.to_dict() if cert else None,
        "center_nonabelian": nonab,
        "center_witness": (
            {"central": witness.central, "noncommuting_pair": list(witness.noncommuting_pair)}
            if witness
            else None
        ),
        "ball_size": len(oracle.labels),
    }
    _write(payload, args.out)
    return EXIT_FINDING if cert is not None else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cliqueforest",
        description=(
            "Decide which right-angled Artin groups act faithfully by analytic "
            "diffeomorphisms of the interval or circle, build explicit "
            "embeddings, and detect centralizer obstructions."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="clique-forest embeddability decision")
    p.add_argument("graph", help="edge-list or DOT file")
    p.add_argument("--manifold", type=_manifold, default=Manifold.INTERVAL)
    _add_common(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("synthesize", help="build and verify an explicit embedding")
    p.add_argument("graph")
    p.add_argument("--manifold", type=_manifold, default=Manifold.INTERVAL)
    p.add_argument("--word-len", type=int, default=6)
    p.add_argument("--basepoint", type=float, default=SynthesisOptions().basepoint)
    p.add_argument("--alpha-k", type=int, default=SynthesisOptions().alpha_k)
    p.add_argument("--report", help="verification report file (default: stdout)")
    _add_common(p)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", help="re-verify a serialized assignment")
    p.add_argument("assignment")
    p.add_argument("--word-len", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fixpoints", help="fixed points of a serialized expression")
    p.add_argument("expr")
    p.add_argument("--lo", type=float, default=0.0, help="line domain lower bound")
    p.add_argument("--hi", type=float, default=4 * math.pi, help="line domain upper bound")
    _add_common(p)
    p.set_defaults(func=cmd_fixpoints)

    p = sub.add_parser("commgraph", help="empirical commutation graph of expressions")
    p.add_argument("exprs", nargs="+")
    p.add_argument("--power-bound", type=int, default=12)
    p.add_argument("--dot", help="also write the graph as DOT to this file")
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=4 * math.pi)
    _add_common(p)
    p.set_defaults(func=cmd_commgraph)

    p = sub.add_parser("obstruct", help="centralizer-quadruple search")
    p.add_argument("--radius", type=int, default=2, help="Heisenberg ball radius")
    p.add_argument("--elements", help="file of labelled unipotent matrices")
    _add_common(p)
    p.set_defaults(func=cmd_obstruct)
    return ap


def main(argv=None) -> int:
    # CLIQUE_FOREST_THREADS caps worker parallelism; all current operations
    # run sequentially, so any positive value is honoured trivially
    threads = os.environ.get("CLIQUE_FOREST_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                print("CLIQUE_FOREST_THREADS must be >= 1", file=sys.stderr)
                return EXIT_INPUT
        except ValueError:
            print(f"bad CLIQUE_FOREST_THREADS value {threads!r}", file=sys.stderr)
            return EXIT_INPUT
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, serialize.ExprFormatError, NotApplicableError,
            DomainError, TagMismatchError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_SYNTH


if __name__ == "__main__":
    sys.exit(main())
