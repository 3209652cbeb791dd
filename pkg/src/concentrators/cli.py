"""Command-line front end.

Subcommands: construct, spectrum, design, chartable, verify-bsc,
verify-magnifier, verify-expander, lemma11, montecarlo, pipeline63.
JSON is the canonical output (keys sorted, so identical flags and seed give
byte-identical bytes); CSV is available for the montecarlo batch table.
Exit codes: 0 success, 1 failed verification verdict, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import designs, fileio, graphs, montecarlo, spectral, verify
from .characters import character_table, dim_sum_D, dim_sums_both
from .pipeline import bicoset_concentrator_report


def _emit(payload, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    sys.stdout.write(text)


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _report_dict(r: verify.ConcentrationReport) -> dict:
    return {
        "mode": r.mode,
        "worst_ratio": _round12(r.worst_ratio),
        "worst_set": list(r.worst_set),
        "subsets_checked": r.subsets_checked,
        "verdict": r.verdict,
    }


def _cmd_construct(args) -> int:
    kind = args.kind
    if kind == "gq22":
        out_graph = graphs.gq22_incidence()
    elif kind == "double-cover":
        g = fileio.load_graph(args.graph)
        if not isinstance(g, graphs.Graph):
            raise fileio.FormatError("double-cover expects a plain graph file")
        out_graph = graphs.extended_double_cover(g)
    else:
        G = fileio.load_group(args.group)
        _, S = fileio.load_multiset(args.S)
        if kind == "cayley":
            out_graph = graphs.cayley_graph(G, S)
        elif kind == "coset":
            H = fileio.load_group(args.H)
            out_graph = graphs.coset_graph(G, H, S)
        elif kind == "bicoset":
            L = fileio.load_group(args.L)
            N = fileio.load_group(args.N)
            out_graph = graphs.bicoset_graph(G, L, N, S, simple=args.simple)
        else:
            raise fileio.FormatError(f"unknown construct kind {kind!r}")
    fileio.save_graph(out_graph, args.out)
    if isinstance(out_graph, graphs.Graph):
        shape = {"kind": kind, "n": out_graph.n, "out": args.out}
    else:
        shape = {
            "kind": kind,
            "n_in": out_graph.n_in,
            "n_out": out_graph.n_out,
            "out": args.out,
        }
    _emit(shape, None)
    return 0


def _cmd_spectrum(args) -> int:
    g = fileio.load_graph(args.graph)
    if isinstance(g, graphs.Graph):
        mat = g.adj.astype(float)
    else:
        mat = g.inc.astype(float)
        mat = mat @ mat.T
    report = spectral.sym_eigenvalues(mat, tol=args.tol)
    _emit(
        {
            "eigenvalues": [_round12(x) for x in report.eigenvalues],
            "mu_star": _round12(report.mu_star),
            "residual": _round12(report.residual),
        },
        args.out,
    )
    return 0


def _design_payload(d: designs.Design, validate: bool) -> tuple[dict, bool]:
    payload: dict = {
        "v": d.v,
        "b": d.b,
        "k": d.k,
        "t": d.t,
        "gamma": d.gamma,
    }
    ok = True
    if validate:
        ok, witness = designs.validate_design(d)
        payload["valid"] = ok
        if witness is not None:
            payload["witness"] = {"subset": list(witness[0]), "count": witness[1]}
    params = designs.bibd_params(d.t, d.v, d.k, d.gamma)
    if params is not None:
        payload["bibd"] = {
            "v": params.v,
            "b": params.b,
            "r": params.r,
            "k": params.k,
            "lambda": params.lam,
            "identities_hold": params.identities_hold(),
        }
    disputed = designs.DISPUTED_REFERENCE_TUPLES.get((d.t, d.v, d.k, d.gamma))
    if disputed is not None and params is not None:
        payload["disputed_reference_tuple"] = {
            "quoted": list(disputed),
            "derived": list(params.as_tuple()),
            "note": "the quoted tuple fails b*k = v*r; derived values are used",
        }
    return payload, ok


def _cmd_design(args) -> int:
    if args.golay:
        d = designs.golay_witt_design()
        source = "golay"
    elif args.mathieu is not None:
        chain = designs.mathieu12_designs()
        by_points = {12: 0, 11: 1, 10: 2, 9: 3}
        if args.mathieu not in by_points:
            raise fileio.FormatError("--mathieu expects one of 12, 11, 10, 9")
        d = chain[by_points[args.mathieu]]
        source = f"mathieu{args.mathieu}"
    elif args.infile:
        if args.t is None or args.gamma is None:
            raise fileio.FormatError("--in needs --t and --gamma")
        d = fileio.load_design(args.infile, args.t, args.gamma)
        source = args.infile
    else:
        raise fileio.FormatError("choose a source: --golay, --mathieu N, or --in FILE")
    if args.contract is not None:
        d = designs.contraction(d, args.contract)
        source += f"/contract{args.contract}"
    payload, ok = _design_payload(d, args.validate)
    payload["source"] = source
    if args.golay and args.contract is None:
        words = designs.golay_codewords()
        weights, counts = np.unique(words.sum(axis=1), return_counts=True)
        payload["codewords"] = int(words.shape[0])
        payload["weight_distribution"] = {
            str(int(w)): int(c) for w, c in zip(weights, counts)
        }
    if args.out:
        fileio.save_design(d, args.out)
        payload["out"] = args.out
    _emit(payload, None)
    return 0 if ok else 1


def _cmd_chartable(args) -> int:
    G = fileio.load_group(args.group)
    table = character_table(G, tol=args.tol)
    payload = {
        "order": len(G),
        "class_sizes": list(table.class_sizes),
        "degrees": list(table.degrees),
        "D": dim_sum_D(G, table),
        "DGH": [],
    }
    for sub_path in args.subgroup or []:
        H = fileio.load_group(sub_path)
        sums = dim_sums_both(G, H, table)
        payload["DGH"].append(
            {
                "subgroup": Path(sub_path).stem,
                "order": len(H),
                "paper": sums["paper"],
                "support": sums["support"],
            }
        )
    _emit(payload, args.out)
    return 0


def _as_bipartite(g) -> graphs.BipartiteGraph:
    if isinstance(g, graphs.BipartiteGraph):
        return g
    raise fileio.FormatError("this check expects a bipartite graph file")


def _cmd_verify_bsc(args) -> int:
    X = _as_bipartite(fileio.load_graph(args.graph))
    report = verify.bsc_check(
        X, alpha=args.alpha, c=args.c, mode=args.mode, budget=args.budget, seed=args.seed
    )
    _emit({"check": "bsc", "alpha": args.alpha, "c": args.c, **_report_dict(report)}, args.out)
    return 0 if report.verdict else 1


def _cmd_verify_magnifier(args) -> int:
    g = fileio.load_graph(args.graph)
    if not isinstance(g, graphs.Graph):
        raise fileio.FormatError("magnifier check expects a plain graph file")
    report = verify.magnifier_constant(g, mode=args.mode, budget=args.budget, seed=args.seed)
    verdict = report.verdict if args.c is None else report.worst_ratio >= args.c - 1e-12
    payload = {"check": "magnifier", **_report_dict(report), "verdict": verdict}
    if args.c is not None:
        payload["c"] = args.c
    _emit(payload, args.out)
    return 0 if verdict else 1


def _cmd_verify_expander(args) -> int:
    X = _as_bipartite(fileio.load_graph(args.graph))
    report = verify.expander_check(
        X,
        c=args.c,
        restrict_half=not args.no_restrict_half,
        mode=args.mode,
        budget=args.budget,
        seed=args.seed,
    )
    _emit(
        {
            "check": "expander",
            "c": args.c,
            "restrict_half": not args.no_restrict_half,
            **_report_dict(report),
        },
        args.out,
    )
    return 0 if report.verdict else 1


def _cmd_lemma11(args) -> int:
    g = fileio.load_graph(args.graph)
    if not isinstance(g, graphs.Graph):
        raise fileio.FormatError("the double-cover harness expects a plain graph file")
    report = verify.double_cover_harness(g, mode=args.mode, budget=args.budget, seed=args.seed)
    _emit(
        {
            "magnifier": _report_dict(report.magnifier),
            "expander": _report_dict(report.expander),
            "passed": report.passed,
        },
        args.out,
    )
    return 0 if report.passed else 1


def _cmd_montecarlo(args) -> int:
    G = fileio.load_group(args.group)
    t0 = time.perf_counter()
    if args.variant == "thm14":
        batch = montecarlo.run_cayley_trials(G, args.k, args.eps, args.trials, args.seed)
    elif args.variant == "thm15":
        if not args.L:
            raise fileio.FormatError("thm15 needs --L (the subgroup)")
        H = fileio.load_group(args.L)
        batch = montecarlo.run_coset_trials(G, H, args.k, args.eps, args.trials, args.seed)
    else:
        if not (args.L and args.N):
            raise fileio.FormatError("thm18 needs --L and --N")
        L = fileio.load_group(args.L)
        N = fileio.load_group(args.N)
        batch = montecarlo.run_bicoset_trials(
            G, L, N, args.k, args.eps, args.trials, args.seed
        )
    wall = time.perf_counter() - t0
    rows = montecarlo.aggregate_rows([batch], wall_times=[wall] if args.timings else None)
    if args.format == "csv":
        text = montecarlo.render_csv(rows)
        if args.out:
            Path(args.out).write_text(text)
        sys.stdout.write(text)
    else:
        payload = {
            "summary": rows[0],
            "mu_values": [_round12(x) for x in batch.mu_values],
            "violating_trials": list(batch.violating_trials),
            "flags": list(batch.flags),
        }
        if batch.top_values:
            payload["top_values"] = [_round12(x) for x in batch.top_values]
        _emit(payload, args.out)
    if args.timings:
        print(f"wall time: {wall:.3f}s", file=sys.stderr)
    return 0


def _cmd_pipeline63(args) -> int:
    G = fileio.load_group(args.group)
    L = fileio.load_group(args.L)
    _, S = fileio.load_multiset(args.S)
    report = bicoset_concentrator_report(G, L, S, budget=args.budget, seed=args.seed)
    payload = dataclasses.asdict(report)
    payload["magnifier"] = _report_dict(report.magnifier)
    for key in ("laplacian_gap", "gap_bound", "gram_top", "gram_second", "tanner_alpha"):
        payload[key] = _round12(payload[key])
    if payload["tanner_constant"] is not None:
        payload["tanner_constant"] = _round12(payload["tanner_constant"])
    payload["warnings"] = list(report.warnings)
    _emit(payload, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concentrators",
        description="Construct concentrator graph families and verify their "
        "spectral and combinatorial concentration properties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a graph and write it to a graph file")
    p.add_argument("--kind", required=True,
                   choices=["cayley", "coset", "bicoset", "double-cover", "gq22"])
    p.add_argument("--group", help="group file (degree header + generators)")
    p.add_argument("--H", help="subgroup file for coset graphs")
    p.add_argument("--L", help="input-side subgroup file for bicoset graphs")
    p.add_argument("--N", help="output-side subgroup file for bicoset graphs")
    p.add_argument("--S", help="connection multiset file (degree header + permutations)")
    p.add_argument("--graph", help="input graph file (double-cover)")
    p.add_argument("--simple", action="store_true",
                   help="collapse bicoset multiplicities to 0/1")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("spectrum", help="eigenvalues of a graph adjacency or Gram matrix")
    p.add_argument("--graph", required=True,
                   help="graph file; bipartite inputs are analyzed through A A^T")
    p.add_argument("--tol", type=float, default=spectral.DEFAULT_TOL)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("design", help="build, validate, or contract block designs")
    p.add_argument("--golay", action="store_true", help="the 5-(24,8,1) Steiner system")
    p.add_argument("--mathieu", type=int, help="12-point chain member: 12, 11, 10, or 9")
    p.add_argument("--in", dest="infile", help="design file input")
    p.add_argument("--t", type=int, help="claimed strength for --in")
    p.add_argument("--gamma", type=int, help="claimed t-wise count for --in")
    p.add_argument("--contract", type=int, help="contract at this point")
    p.add_argument("--validate", action="store_true")
    p.add_argument("--out", help="write the design file here")
    p.set_defaults(func=_cmd_design)

    p = sub.add_parser("chartable", help="character table, degrees, and dimension sums")
    p.add_argument("--group", required=True)
    p.add_argument("--subgroup", action="append",
                   help="subgroup file; both dimension-sum variants are reported")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_chartable)

    def verify_common(p):
        p.add_argument("--graph", required=True)
        p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
        p.add_argument("--budget", type=int, default=1000)
        p.add_argument("--seed", type=int, help="required for sampled mode")
        p.add_argument("--out")

    p = sub.add_parser("verify-bsc", help="neighbor-count concentration check")
    verify_common(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(func=_cmd_verify_bsc)

    p = sub.add_parser("verify-magnifier", help="outside-neighbor magnification constant")
    verify_common(p)
    p.add_argument("--c", type=float, help="claimed constant to compare against")
    p.set_defaults(func=_cmd_verify_magnifier)

    p = sub.add_parser("verify-expander", help="relative-expansion inequality check")
    verify_common(p)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--no-restrict-half", action="store_true",
                   help="also test input sets larger than half")
    p.set_defaults(func=_cmd_verify_expander)

    p = sub.add_parser("lemma11", help="magnifier constant vs extended-double-cover expansion")
    verify_common(p)
    p.set_defaults(func=_cmd_lemma11)

    p = sub.add_parser("montecarlo", help="random generating-multiset tail experiments")
    p.add_argument("--group", required=True)
    p.add_argument("--L", help="subgroup file (thm15: the subgroup; thm18: input side)")
    p.add_argument("--N", help="output-side subgroup file (thm18)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--variant", choices=["thm14", "thm15", "thm18"], required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--timings", action="store_true",
                   help="include wall time (breaks byte-reproducibility)")
    p.set_defaults(func=_cmd_montecarlo)

    p = sub.add_parser("pipeline63", help="bi-coset concentrator pipeline for a "
                       "user-supplied expanding set")
    p.add_argument("--group", required=True)
    p.add_argument("--L", required=True)
    p.add_argument("--S", required=True)
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--seed", type=int, help="required when |G| > 24 (sampled magnifier)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_pipeline63)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
