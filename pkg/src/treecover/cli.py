"""Command-line front end.

Subcommands: validate, cover, oracle, check-well-defined, gen, bench,
render. Machine-readable output (JSON/CSV/SVG) goes to the named files,
human messages to standard error. Exit codes: 0 success, 1 internal
invariant breach, 2 parse/usage error, 3 validation violations, 4
non-well-defined witness found.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from .boxcover import box_cover_fast
from .hullcover import InternalInvariantError, hull_cover_fast
from .model import (
    GENERATOR_KINDS,
    GenerationError,
    ParseError,
    errors_only,
    generate,
    parse_instance,
    serialize_instance,
    validate_instance,
)
from .phicover import PHI, MergePolicy, check_well_defined, naive_phi_cover
from .render import render_svg

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_WITNESS = 4


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def _load_valid_instance(args):
    """Parse and validate; raises SystemExit-like tuple flow via exceptions."""
    inst = parse_instance(_read(args.input), scale=getattr(args, "scale", 1))
    violations = validate_instance(inst)
    errors = errors_only(violations)
    for v in violations:
        print(str(v), file=sys.stderr)
    if errors:
        raise _ValidationFailed()
    return inst


class _ValidationFailed(Exception):
    pass


def cmd_validate(args) -> int:
    try:
        _load_valid_instance(args)
    except _ValidationFailed:
        return EXIT_INVALID
    print("OK", file=sys.stderr)
    return EXIT_OK


def cmd_gen(args) -> int:
    inst = generate(args.kind, trees=args.trees, size=args.size, seed=args.seed)
    _write(args.output, serialize_instance(inst) + "\n")
    print(f"wrote {args.output} (m={inst.m}, n={inst.n})", file=sys.stderr)
    return EXIT_OK


def cmd_cover(args) -> int:
    inst = _load_valid_instance(args)
    trace = None
    if args.algo == "fast":
        if args.phi == "hull":
            if args.emit_trace:
                cover, stats, trace = hull_cover_fast(inst, record_trace=True)
            else:
                cover, stats = hull_cover_fast(inst)
        else:
            cover, stats = box_cover_fast(inst)
        stats_obj = stats.to_obj()
    else:
        policy = MergePolicy.random_order(args.seed)
        cover, forest = naive_phi_cover(inst, PHI[args.phi], policy)
        stats_obj = {"merges": len(forest.script())}
    _write(
        args.output,
        cover.to_json({"rays": trace} if trace is not None else None) + "\n",
    )
    if args.stats:
        _write(args.stats, json.dumps(stats_obj, separators=(",", ":")) + "\n")
    print(
        f"{args.phi} cover ({args.algo}): {len(cover.regions)} regions",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _load_valid_instance(args)
    if args.policy == "random":
        policy = MergePolicy.random_order(args.seed)
    else:
        policy = MergePolicy.first_found()
    cover, forest = naive_phi_cover(inst, PHI[args.phi], policy)
    _write(
        args.emit_forest,
        json.dumps(forest.to_obj(args.phi), separators=(",", ":")) + "\n",
    )
    if args.output:
        _write(args.output, cover.to_json() + "\n")
    print(
        f"naive {args.phi} cover: {len(cover.regions)} regions, "
        f"{len(forest.script())} merges",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_check_well_defined(args) -> int:
    inst = _load_valid_instance(args)
    if args.exhaustive and inst.m > 6:
        print("--exhaustive requires m <= 6", file=sys.stderr)
        return EXIT_USAGE
    verdict = check_well_defined(
        inst, PHI[args.phi], trials=args.trials, seed=args.seed,
        exhaustive=args.exhaustive,
    )
    if verdict.well_defined:
        print(json.dumps({"verdict": "WELL-DEFINED", "runs": verdict.runs}))
        print(f"WELL-DEFINED over {verdict.runs} runs", file=sys.stderr)
        return EXIT_OK
    w = verdict.witness
    print(
        json.dumps(
            {
                "verdict": "WITNESS",
                "runs": verdict.runs,
                "policy_a": w.policy_a,
                "cover_a": w.cover_a.to_obj(),
                "policy_b": w.policy_b,
                "cover_b": w.cover_b.to_obj(),
            },
            separators=(",", ":"),
        )
    )
    print("WITNESS: two merge orders give distinct covers", file=sys.stderr)
    return EXIT_WITNESS


class _CountingPhi:
    """Wraps a region function and counts intersection tests (bench ops)."""

    def __init__(self, inner):
        self._inner = inner
        self.tag = inner.tag
        self.tests = 0

    def apply_to_points(self, pts):
        return self._inner.apply_to_points(pts)

    def intersects(self, a, b):
        self.tests += 1
        return self._inner.intersects(a, b)

    def merge(self, a, b):
        return self._inner.merge(a, b)

    def contains_point(self, r, p):
        return self._inner.contains_point(r, p)

    def region_contains(self, outer, inner):
        return self._inner.region_contains(outer, inner)


def _bench_one(inst, phi_name: str, algo: str):
    """One measured run; returns (wall_ms, ops, merges)."""
    t0 = time.perf_counter()
    if algo == "fast":
        if phi_name == "hull":
            _, stats = hull_cover_fast(inst)
            ops, merges = stats.rays_shot, stats.merges
        else:
            _, stats = box_cover_fast(inst)
            ops, merges = stats.queries, stats.merges
    else:
        phi = _CountingPhi(PHI[phi_name])
        _, forest = naive_phi_cover(inst, phi)
        ops, merges = phi.tests, len(forest.script())
    wall_ms = (time.perf_counter() - t0) * 1000.0
    return wall_ms, ops, merges


def cmd_bench(args) -> int:
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    per_tree = 5
    rows = ["kind,n,algo,wall_ms,ops,merges"]
    for kind in kinds:
        for n_target in sizes:
            m = max(2, n_target // per_tree)
            inst = generate(kind, trees=m, size=per_tree, seed=args.seed)
            for algo in ("fast", "naive"):
                _bench_one(inst, args.phi, algo)  # warmup, excluded
                samples = [_bench_one(inst, args.phi, algo) for _ in range(3)]
                wall = statistics.median(s[0] for s in samples)
                ops, merges = samples[0][1], samples[0][2]
                rows.append(f"{kind},{inst.n},{algo},{wall:.3f},{ops},{merges}")
    _write(args.output, "\n".join(rows) + "\n")
    print(f"wrote {args.output} ({len(rows) - 1} rows)", file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    inst = _load_valid_instance(args)
    cover = None
    trace = None
    if args.cover:
        from .model import Cover

        text = _read(args.cover)
        cover = Cover.from_json(text)
        obj = json.loads(text)
        trace = obj.get("trace", {}).get("rays")
    _write(args.output, render_svg(inst, cover, trace))
    print(f"wrote {args.output}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="treecover",
        description="Hull-covers and box-covers of non-crossing plane forests.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_input(sp):
        sp.add_argument("--input", required=True, help="instance JSON file")
        sp.add_argument(
            "--scale",
            type=int,
            default=1,
            help="multiply decimal coordinates into integers",
        )

    sp = sub.add_parser("validate", help="validate an instance file")
    add_input(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("cover", help="compute a hull- or box-cover")
    sp.add_argument("--phi", choices=("hull", "box"), required=True)
    sp.add_argument("--algo", choices=("fast", "naive"), default="fast")
    add_input(sp)
    sp.add_argument("--output", required=True)
    sp.add_argument("--stats", help="write engine stats JSON here")
    sp.add_argument("--seed", type=int, default=0, help="naive merge-policy seed")
    sp.add_argument(
        "--emit-trace",
        action="store_true",
        help="embed the shot-ray trace in the cover JSON (fast hull only)",
    )
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("oracle", help="run the naive cover and emit its forest")
    sp.add_argument("--phi", choices=("hull", "box", "mincircle"), required=True)
    add_input(sp)
    sp.add_argument("--emit-forest", required=True)
    sp.add_argument("--output", help="also write the cover JSON here")
    sp.add_argument("--policy", choices=("first", "random"), default="first")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser(
        "check-well-defined", help="probe merge-order independence"
    )
    sp.add_argument("--phi", choices=("hull", "box", "mincircle"), required=True)
    add_input(sp)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_check_well_defined)

    sp = sub.add_parser("gen", help="generate an instance")
    sp.add_argument("--kind", choices=GENERATOR_KINDS, required=True)
    sp.add_argument("--trees", type=int, default=4)
    sp.add_argument("--size", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="time fast vs naive over a size ladder")
    sp.add_argument("--phi", choices=("hull", "box"), required=True)
    sp.add_argument("--kinds", required=True, help="comma-separated kinds")
    sp.add_argument("--sizes", required=True, help="comma-separated target n")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", required=True, help="CSV output path")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("render", help="draw an instance (and cover) as SVG")
    add_input(sp)
    sp.add_argument("--cover", help="cover JSON to overlay")
    sp.add_argument("--output", required=True, help="SVG output path")
    sp.set_defaults(func=cmd_render)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _ValidationFailed:
        return EXIT_INVALID
    except (ParseError, GenerationError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InternalInvariantError, AssertionError) as e:
        print(f"internal invariant breach: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
