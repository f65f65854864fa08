"""Command line front end: betti, facets, verify-table, certify."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence, TextIO

from . import __version__
from .complexes import DEFAULT_SIMPLEX_BUDGET, format_simplex_lines, vr_graph
from .errors import BudgetError, UnsupportedRegimeError
from .facets import (
    brute_force_facets,
    cycle_facets,
    in_window_interior,
    torus_facets,
    z2_facets_in_window,
)
from .homology import DEFAULT_SNF_COLUMN_BUDGET
from .pipeline import (
    RunConfig,
    build_space,
    certify_torus,
    compute_profile,
    load_golden_table,
    run_golden_row,
)
from .spaces import Window

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


def _parse_window(text: str) -> Window:
    try:
        xs, ys = text.split(",")
        x_min, x_max = (int(v) for v in xs.split(":"))
        y_min, y_max = (int(v) for v in ys.split(":"))
    except ValueError as exc:
        raise ValueError(f"window must look like '-6:6,-6:6', got {text!r}") from exc
    return Window(x_min, x_max, y_min, y_max)


def _parse_range(text: str) -> tuple[int, int]:
    if ":" in text:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _parse_max_dim(text: str) -> Optional[int]:
    if text == "full":
        return None
    value = int(text)
    if value < 0:
        raise ValueError(f"max-dim must be nonnegative or 'full', got {text}")
    return value


def _emit(payload: dict, out: TextIO) -> None:
    out.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _error(category: str, message: str, exit_code: int) -> int:
    _emit(
        {
            "kind": "error",
            "version": __version__,
            "error": category,
            "message": message,
            "exit_code": exit_code,
        },
        sys.stderr,
    )
    return exit_code


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    budget = args.budget
    if budget is None:
        env = os.environ.get("SIMPLEX_BUDGET")
        budget = int(env) if env else DEFAULT_SIMPLEX_BUDGET
    time_budget = args.time_budget
    if time_budget is None:
        env = os.environ.get("TIME_BUDGET_SECS")
        time_budget = float(env) if env else None
    return RunConfig(
        coefficients=getattr(args, "coefficients", "gf2"),
        max_dim=getattr(args, "max_dim", None),
        simplex_budget=budget if budget > 0 else None,
        snf_column_budget=args.snf_budget,
        time_budget_secs=time_budget,
        threads=args.threads,
    )


def _config_payload(config: RunConfig, fmt: str) -> dict:
    return {
        "simplex_budget": config.simplex_budget,
        "snf_column_budget": config.snf_column_budget,
        "threads": config.threads,
        "format": fmt,
    }


def _elapsed_ms(start: float, args: argparse.Namespace) -> Optional[int]:
    if args.no_timing:
        return None
    return int((time.monotonic() - start) * 1000)


def cmd_betti(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    start = time.monotonic()
    space = build_space(args.space, n=args.n, window=args.window)
    profile, _ = compute_profile(space, args.k, config)
    max_dim = config.max_dim if config.max_dim is not None else len(profile.betti) - 1
    payload = {
        "kind": "betti-result",
        "version": __version__,
        "space": space.label,
        "n": args.n,
        "k": args.k,
        "coefficients": profile.coefficients,
        "max_dim": max_dim,
        "betti": list(profile.betti),
        "torsion": [list(t) for t in profile.torsion],
        "euler": profile.euler,
        "truncated_at": profile.truncated_at,
        "wall_time_ms": _elapsed_ms(start, args),
        "config": _config_payload(config, args.format),
    }
    if args.format == "csv":
        writer = sys.stdout
        writer.write("n,k,dim,betti,coefficients,source\n")
        for d, b in enumerate(profile.betti):
            writer.write(f"{args.n},{args.k},{d},{b},{profile.coefficients},{space.label}\n")
        return EXIT_OK
    _emit(payload, sys.stdout)
    return EXIT_OK


def _facet_catalog(args: argparse.Namespace):
    if args.space == "cycle":
        return cycle_facets(args.n, args.k)
    if args.space == "torus":
        return torus_facets(args.n, args.k)
    if args.space == "window":
        return z2_facets_in_window(args.window, args.k)
    raise ValueError(f"unknown space kind {args.space!r}")


def _facet_oracle(args: argparse.Namespace):
    space = build_space(args.space, n=args.n, window=args.window)
    graph = vr_graph(space, args.k)
    facets = brute_force_facets(graph)
    if args.space == "window":
        # Cliques clipped by the window edge are not facets of the full
        # plane; only the interior ones are comparable to the catalog.
        interior = frozenset(
            f for f in facets.facets if in_window_interior(args.window, args.k, f)
        )
        return type(facets)(facets=interior, source=facets.source + " (interior)")
    return facets


def cmd_facets(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    start = time.monotonic()
    space_label = (
        args.window.label if args.space == "window" else f"{args.space} {args.n}"
    )
    header = {"space": space_label, "n": args.n, "k": args.k}

    if args.mode == "compare":
        catalog = _facet_catalog(args)
        oracle = _facet_oracle(args)
        only_catalog, only_oracle = catalog.symmetric_difference(oracle)
        identical = not only_catalog and not only_oracle
        payload = {
            "kind": "facets-compare",
            "version": __version__,
            "space": space_label,
            "n": args.n,
            "k": args.k,
            "closed_form_count": len(catalog),
            "brute_count": len(oracle),
            "identical": identical,
            "only_closed_form": [list(s) for s in only_catalog[:20]],
            "only_brute": [list(s) for s in only_oracle[:20]],
            "wall_time_ms": _elapsed_ms(start, args),
            "config": _config_payload(config, args.format),
        }
        _emit(payload, sys.stdout)
        return EXIT_OK if identical else EXIT_MISMATCH

    facet_set = _facet_catalog(args) if args.mode == "closed-form" else _facet_oracle(args)
    facets = sorted(facet_set.facets)
    if args.format == "json":
        payload = {
            "kind": "facets-list",
            "version": __version__,
            "space": space_label,
            "n": args.n,
            "k": args.k,
            "mode": args.mode,
            "count": len(facets),
            "facets": [list(s) for s in facets],
            "wall_time_ms": _elapsed_ms(start, args),
            "config": _config_payload(config, args.format),
        }
        _emit(payload, sys.stdout)
        return EXIT_OK
    header["dim"] = max((len(s) - 1 for s in facets), default=0)
    sys.stdout.write(format_simplex_lines(facets, header))
    return EXIT_OK


def cmd_verify_table(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    start = time.monotonic()
    rows = load_golden_table(args.golden_file)
    if args.n is not None:
        lo, hi = args.n
        rows = [r for r in rows if lo <= r.n <= hi]
    if args.k is not None:
        lo, hi = args.k
        rows = [r for r in rows if lo <= r.k <= hi]
    if args.coefficients is not None:
        rows = [r for r in rows if r.coefficients == args.coefficients]

    results = [run_golden_row(row, config) for row in rows]
    passed = sum(1 for r in results if r["status"] == "PASS")
    failed = sum(1 for r in results if r["status"] == "FAIL")
    skipped = sum(1 for r in results if r["status"] == "SKIPPED")

    if args.format == "json":
        payload = {
            "kind": "verify-table",
            "version": __version__,
            "rows": results,
            "passed": passed,
            "failed": failed,
            "skipped": skipped,
            "wall_time_ms": _elapsed_ms(start, args),
            "config": _config_payload(config, args.format),
        }
        _emit(payload, sys.stdout)
    else:
        for r in results:
            tag = f"n={r['n']} k={r['k']} {r['coefficients']}"
            if r["status"] == "PASS":
                print(f"PASS    {tag}: betti {r['computed']}  [{r['source']}]")
            elif r["status"] == "SKIPPED":
                print(f"SKIPPED {tag}: {r['reason']}  [{r['source']}]")
            else:
                print(
                    f"FAIL    {tag}: expected {r['expected']} got {r.get('computed')}"
                    f"  [{r['source']}]"
                )
        print(f"passed {passed}, failed {failed}, skipped {skipped}")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


def cmd_certify(args: argparse.Namespace) -> int:
    if args.space != "torus":
        return _error(
            "validation", "certify currently supports --space torus only", EXIT_VALIDATION
        )
    config = _config_from_args(args)
    start = time.monotonic()
    fp, profile, antipode, conn = certify_torus(args.n, args.k, config)
    payload = {
        "kind": "certify-result",
        "version": __version__,
        "space": f"torus {args.n}",
        "n": args.n,
        "k": args.k,
        "coefficients": config.coefficients,
        "claim": fp.claim,
        "level": fp.level,
        "consistent": fp.consistent,
        "antipode": {
            "is_antipode": antipode.is_antipode,
            "pairs": [list(p) for p in antipode.pairs],
            "cross_polytope_dim": antipode.cross_polytope_dim,
        },
        "connectivity": {
            "scale": conn.scale,
            "method": conn.method,
            "certified_k": conn.certified_k,
            "min_ball": conn.detail.get("min_ball"),
            "points": conn.detail.get("points"),
        },
        "betti": None if profile is None else list(profile.betti),
        "torsion": None if profile is None else [list(t) for t in profile.torsion],
        "euler": None if profile is None else profile.euler,
        "truncated_at": None if profile is None else profile.truncated_at,
        "wall_time_ms": _elapsed_ms(start, args),
        "config": _config_payload(config, args.format),
    }
    _emit(payload, sys.stdout)
    return EXIT_OK if fp.consistent else EXIT_MISMATCH


def _add_common(parser: argparse.ArgumentParser, *, coefficients: bool = True) -> None:
    parser.add_argument("--budget", type=int, default=None,
                        help="simplex budget (0 disables; default from SIMPLEX_BUDGET or "
                             f"{DEFAULT_SIMPLEX_BUDGET})")
    parser.add_argument("--snf-budget", type=int, default=DEFAULT_SNF_COLUMN_BUDGET,
                        help="column cap per integer boundary matrix")
    parser.add_argument("--time-budget", type=float, default=None,
                        help="wall-clock budget in seconds (default from TIME_BUDGET_SECS)")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker pool size; all algorithms are deterministic "
                             "regardless of the value")
    parser.add_argument("--no-timing", action="store_true",
                        help="omit wall_time_ms so output is byte-identical across runs")
    if coefficients:
        parser.add_argument("--coefficients", choices=["gf2", "integer"], default="gf2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torus-rips",
        description="Vietoris-Rips complexes of torus grids, cycles, and lattice "
                    "windows: homology, facet catalogs, and topological certificates.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_betti = sub.add_parser("betti", help="Betti numbers of one scale-k complex")
    p_betti.add_argument("--space", choices=["cycle", "torus", "window"], required=True)
    p_betti.add_argument("--n", type=int, default=None)
    p_betti.add_argument("--window", type=_parse_window, default=None,
                         help="lattice window as x_min:x_max,y_min:y_max")
    p_betti.add_argument("--k", type=int, required=True)
    p_betti.add_argument("--max-dim", type=_parse_max_dim, required=True,
                         help="top homology dimension to report, or 'full'; "
                              "enumeration goes one dimension higher")
    p_betti.add_argument("--format", choices=["json", "csv"], default="json")
    _add_common(p_betti)
    p_betti.set_defaults(func=cmd_betti)

    p_facets = sub.add_parser("facets", help="facet catalog, brute-force oracle, or both")
    p_facets.add_argument("--space", choices=["cycle", "torus", "window"], required=True)
    p_facets.add_argument("--n", type=int, default=None)
    p_facets.add_argument("--window", type=_parse_window, default=None,
                          help="lattice window as x_min:x_max,y_min:y_max")
    p_facets.add_argument("--k", type=int, required=True)
    p_facets.add_argument("--mode", choices=["closed-form", "brute", "compare"],
                          default="closed-form")
    p_facets.add_argument("--format", choices=["text", "json"], default="text")
    _add_common(p_facets, coefficients=False)
    p_facets.set_defaults(func=cmd_facets)

    p_verify = sub.add_parser("verify-table", help="run the golden homology table")
    p_verify.add_argument("--n", type=_parse_range, default=None,
                          help="filter rows by n (single value or lo:hi)")
    p_verify.add_argument("--k", type=_parse_range, default=None,
                          help="filter rows by k (single value or lo:hi)")
    p_verify.add_argument("--coefficients", choices=["gf2", "integer"], default=None)
    p_verify.add_argument("--golden-file", default=None,
                          help="alternative golden table (defaults to the packaged one)")
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    _add_common(p_verify, coefficients=False)
    p_verify.set_defaults(func=cmd_verify_table)

    p_certify = sub.add_parser("certify", help="certificates and fingerprint for one complex")
    p_certify.add_argument("--space", choices=["torus"], default="torus")
    p_certify.add_argument("--n", type=int, required=True)
    p_certify.add_argument("--k", type=int, required=True)
    p_certify.add_argument("--max-dim", type=_parse_max_dim, default=None,
                           help="profile depth; defaults to the expected regime depth, "
                               "'full' enumerates the whole complex")
    p_certify.add_argument("--format", choices=["json"], default="json")
    _add_common(p_certify)
    p_certify.set_defaults(func=cmd_certify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches the validation code.
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UnsupportedRegimeError as exc:
        return _error("unsupported-regime", str(exc), EXIT_VALIDATION)
    except BudgetError as exc:
        return _error("budget", str(exc), EXIT_BUDGET)
    except ValueError as exc:
        return _error("validation", str(exc), EXIT_VALIDATION)


if __name__ == "__main__":
    sys.exit(main())
