"""Command-line entry point.

Exit codes: 0 affirmative/satisfied, 1 negative/violated/none,
2 usage or input error, 3 unresolved (heuristic budget exhausted).
Every report embeds the run configuration, including the seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import density, hypergraphs, inequalities, rainbow, reduced, ternary

SCHEMA = 1

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_UNRESOLVED = 3


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, default=str) + "\n"
    out = getattr(args, "output", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _envelope(args, command: str, result: dict, **config) -> dict:
    cfg = {"seed": getattr(args, "seed", 0), "threads": getattr(args, "threads", 1)}
    cfg.update(config)
    return {"schema": SCHEMA, "command": command, "config": cfg, "result": result}


def _load_hypergraph(path: str) -> hypergraphs.Hypergraph:
    return hypergraphs.parse_hypergraph(Path(path).read_text())


def cmd_decide_pi1(args) -> int:
    pattern = _load_hypergraph(args.file)
    witness = rainbow.find_rainbow_ordering(pattern)
    if witness is None:
        _emit(_envelope(args, "decide-pi1", {"witness": "none"}, file=args.file), args)
        return EXIT_NEGATIVE
    assert rainbow.verify_rainbow_colouring(pattern, witness)
    result = {"witness": rainbow.witness_to_dict(witness, pattern.k)}
    _emit(_envelope(args, "decide-pi1", result, file=args.file), args)
    return EXIT_OK


def cmd_frequent(args) -> int:
    pattern = _load_hypergraph(args.file)
    witness = ternary.find_kary_embedding(pattern)
    if witness is None:
        _emit(_envelope(args, "frequent", {"witness": "none"}, file=args.file), args)
        return EXIT_NEGATIVE
    assert ternary.verify_kary_embedding(pattern, witness)
    result = {"witness": ternary.embedding_to_dict(witness)}
    _emit(_envelope(args, "frequent", result, file=args.file), args)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.kind == "ternary":
        if len(args.params) != 2:
            raise ValueError("generate ternary needs parameters: k n")
        k, n = (int(p) for p in args.params)
        host = ternary.build_kary(k, n)
        header = f"# ternary host: base {k}, depth {n}\n"
    else:
        if len(args.params) != 1:
            raise ValueError("generate hphi needs a vertex count n")
        n = int(args.params[0])
        k = args.k
        if args.colouring:
            phi = rainbow.parse_pair_colouring(Path(args.colouring).read_text())
            if phi.n != n or phi.k != k:
                raise ValueError("colouring file does not match the requested k, n")
            header = f"# pattern host from explicit colouring, n={n}\n"
        else:
            phi = rainbow.random_pair_colouring(n, k, args.seed)
            header = f"# pattern host from random colouring, n={n}, seed={args.seed}\n"
        if k > 3:
            header += "# k>3 generalisation of the 3-uniform pattern-host construction\n"
        host = rainbow.build_pattern_host(phi)
    text = header + hypergraphs.serialize_hypergraph(host)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _verdict_exit(verdict: str) -> int:
    return {"satisfied": EXIT_OK, "violated": EXIT_NEGATIVE, "unresolved": EXIT_UNRESOLVED}[verdict]


def cmd_audit(args) -> int:
    host = _load_hypergraph(args.file)
    if args.notion == "profile":
        grid = [float(x) for x in args.eta_grid.split(",")] if args.eta_grid else [1.0]
        report = density.density_profile(
            host, grid, mode=args.mode, budget=args.budget, restarts=args.restarts, seed=args.seed
        )
        _emit(_envelope(args, "audit", report.to_dict(), notion="profile", file=args.file), args)
        return EXIT_OK
    query = density.DensityQuery(
        d=args.d, eta=args.eta, mode=args.mode, budget=args.budget,
        restarts=args.restarts, seed=args.seed,
    )
    if args.notion == "vertex":
        report = density.vertex_density_check(host, query)
    else:
        report = density.triple_density_check(host, query)
    _emit(_envelope(args, "audit", report.to_dict(), notion=args.notion, file=args.file), args)
    return _verdict_exit(report.verdict)


def cmd_sweep(args) -> int:
    f = args.f
    if f > 5:
        raise ValueError("sweep is limited to f <= 5")
    counts = {"frequent_and_orderable": 0, "orderable_only": 0, "neither": 0,
              "frequent_not_orderable": 0}
    for pattern in hypergraphs.enumerate_hypergraphs(3, f):
        orderable = rainbow.find_rainbow_ordering(pattern) is not None
        frequent = ternary.is_frequent(pattern)
        if frequent and orderable:
            counts["frequent_and_orderable"] += 1
        elif frequent:
            counts["frequent_not_orderable"] += 1
        elif orderable:
            counts["orderable_only"] += 1
        else:
            counts["neither"] += 1
    consistent = counts["frequent_not_orderable"] == 0
    result = {"f": f, "patterns": sum(counts.values()), "classes": counts,
              "consistent": consistent}
    _emit(_envelope(args, "sweep", result, f=f), args)
    return EXIT_OK if consistent else EXIT_NEGATIVE


def cmd_reduced(args) -> int:
    rh = reduced.parse_reduced_json(Path(args.file).read_text())
    if args.action == "select":
        selection = reduced.select_rainbow_core(rh, args.mu, args.f)
        if selection is None:
            _emit(_envelope(args, "reduced", {"selection": "none"}, mu=args.mu, f=args.f), args)
            return EXIT_NEGATIVE
        result = {"selection": reduced.selection_to_dict(selection)}
        _emit(_envelope(args, "reduced", result, mu=args.mu, f=args.f, file=args.file), args)
        return EXIT_OK
    if not args.selection:
        raise ValueError("reduced verify needs --selection FILE")
    sel = reduced.selection_from_dict(json.loads(Path(args.selection).read_text()))
    valid = reduced.verify_core(rh, sel)
    _emit(_envelope(args, "reduced", {"valid": valid}, file=args.file), args)
    return EXIT_OK if valid else EXIT_NEGATIVE


def cmd_verify_fact7(args) -> int:
    minimum, point = inequalities.scan_inequality(args.resolution)
    identity_gap = abs(
        2.0 ** (inequalities.TAU - 1.0) - 3.0 ** (inequalities.TAU - 3.0)
    ) / 3.0 ** (inequalities.TAU - 3.0)
    result = {
        "minimum": minimum,
        "argmin": list(point),
        "resolution": args.resolution,
        "gap_at_110": inequalities.inequality_gap(1.0, 1.0, 0.0),
        "gap_at_111": inequalities.inequality_gap(1.0, 1.0, 1.0),
        "exponent_identity_relative_error": identity_gap,
        "tolerance": -1e-9,
    }
    _emit(_envelope(args, "verify-fact7", result, resolution=args.resolution), args)
    return EXIT_OK if minimum >= -1e-9 else EXIT_NEGATIVE


def cmd_audit_tn(args) -> int:
    report = inequalities.audit_kary_subsets(
        args.level, mode=args.mode, samples=args.samples, seed=args.seed,
        allow_large=args.allow_large,
    )
    _emit(_envelope(args, "audit-tn", report.to_dict(), level=args.level, mode=args.mode), args)
    return EXIT_OK if not report.violations else EXIT_NEGATIVE


def cmd_optimality(args) -> int:
    stats = inequalities.binary_prefix_slice(args.r, args.n)
    result = {
        "r": stats.r, "n": stats.n, "eta": stats.eta, "size": stats.size,
        "edges": stats.edges, "bound": stats.bound, "ratio": stats.ratio,
    }
    _emit(_envelope(args, "optimality", result, r=args.r, n=args.n), args)
    return EXIT_OK


def cmd_supersat(args) -> int:
    pattern = _load_hypergraph(args.file)
    report = inequalities.supersaturation_experiment(pattern, n_max=args.nmax)
    _emit(_envelope(args, "supersat", report.to_dict(), file=args.file, nmax=args.nmax), args)
    return EXIT_OK


def cmd_hom_count(args) -> int:
    pattern = _load_hypergraph(args.pattern)
    host = _load_hypergraph(args.host)
    count = hypergraphs.count_homomorphisms(pattern, host)
    _emit(_envelope(args, "hom-count", {"count": count}, pattern=args.pattern, host=args.host), args)
    return EXIT_OK


def cmd_embed(args) -> int:
    pattern = _load_hypergraph(args.pattern)
    host = _load_hypergraph(args.host)
    witness = hypergraphs.contains_copy(pattern, host)
    if witness is None:
        _emit(_envelope(args, "embed", {"witness": "none"}), args)
        return EXIT_NEGATIVE
    assert hypergraphs.is_embedding(pattern, host, witness.mapping)
    result = {"witness": {"mapping": {str(v): w for v, w in sorted(witness.mapping.items())}}}
    _emit(_envelope(args, "embed", result, pattern=args.pattern, host=args.host), args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperdense",
        description="Decision procedures and density auditors for k-uniform hypergraphs",
    )
    parser.add_argument("--threads", type=int, default=1,
                        help="worker cap; results are identical for any value")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--output", "-o", help="write the report to a file instead of stdout")
        return p

    p = add("decide-pi1", cmd_decide_pi1,
            "search for a vertex ordering with a conflict-free forced shadow colouring")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)

    p = add("frequent", cmd_frequent,
            "decide whether the pattern embeds into a digit-string host")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)

    p = add("generate", cmd_generate, "emit a host hypergraph in HYG format")
    p.add_argument("kind", choices=["ternary", "hphi"])
    p.add_argument("params", nargs="*")
    p.add_argument("--k", type=int, default=3, help="uniformity for hphi generation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--colouring", help="pair-colouring file for hphi (overrides --seed)")

    p = add("audit", cmd_audit, "audit a density notion and emit a certificate report")
    p.add_argument("notion", choices=["vertex", "triple", "profile"])
    p.add_argument("file")
    p.add_argument("--d", type=float, default=0.5)
    p.add_argument("--eta", type=float, default=0.01)
    p.add_argument("--mode", choices=["exact", "heuristic"], default="exact")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eta-grid", help="comma-separated eta values for the profile notion")

    p = add("sweep", cmd_sweep,
            "classify all labeled 3-uniform patterns on f vertices by the two deciders")
    p.add_argument("f", type=int)
    p.add_argument("--seed", type=int, default=0)

    p = add("reduced", cmd_reduced, "run or verify the staged rainbow selection")
    p.add_argument("action", choices=["select", "verify"])
    p.add_argument("file")
    p.add_argument("--mu", type=float, default=0.5)
    p.add_argument("--f", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--selection", help="selection JSON to verify")

    p = add("verify-fact7", cmd_verify_fact7,
            "grid-scan the cube inequality floor and its boundary identities")
    p.add_argument("--resolution", type=int, default=201)
    p.add_argument("--seed", type=int, default=0)

    p = add("audit-tn", cmd_audit_tn,
            "audit the per-subset edge floor of the depth-l ternary host")
    p.add_argument("--level", type=int, default=2)
    p.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-large", action="store_true")

    p = add("optimality", cmd_optimality,
            "exact statistics of the binary-prefix slice {0,1}^r x {0,1,2}^(n-r)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = add("supersat", cmd_supersat,
            "exact homomorphism counts of a pattern into depth-1..nmax hosts")
    p.add_argument("--file", required=True)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = add("hom-count", cmd_hom_count, "exact homomorphism count between two hypergraphs")
    p.add_argument("pattern")
    p.add_argument("host")
    p.add_argument("--seed", type=int, default=0)

    p = add("embed", cmd_embed, "find an injective copy of a pattern inside a host")
    p.add_argument("pattern")
    p.add_argument("host")
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
