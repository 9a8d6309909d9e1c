"""Command-line interface.

Exit codes: 0 success, 1 audit failure, 2 bad parameters, 3 malformed
input, 4 search budget exhausted (the partial result is still written).
"""

from __future__ import annotations

import argparse
import io
import sys
from typing import Optional, Sequence, TextIO

from . import __version__
from .caps import enumerate_caps, greedy_cap_extension_trace, random_mixing_samples, singular_values
from .constructions import (
    build_affine_plane,
    build_enlarged_plane_system,
    build_polynomial_system,
    pad_cliques,
    random_restriction,
)
from .errors import MalformedClique, MalformedDocument, ParameterError
from .hypergraph import (
    CliqueSystem,
    KGraph,
    cherry_count,
    degree_report,
    expand_to_kgraph,
    find_cherries,
    validate_ell_system,
)
from .process import max_linear_edges, process_stats, run_greedy_process
from .rng import check_seed
from .serialize import TOOL, cap_report_csv, csv_table, dumps, loads, to_doc
from .solvers import (
    Coloring,
    exact_chromatic_number,
    exact_independence_number,
    greedy_coloring,
    split_coloring,
    verify_coloring,
)

EXIT_OK, EXIT_AUDIT, EXIT_PARAMS, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParameterError(message)


def _seed(text: str) -> int:
    try:
        return check_seed(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="unsigned 64-bit seed")
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--budget", type=int, default=10**7, help="search node limit")
    common.add_argument("--in", dest="inp", help="input document (default: standard input)")

    p = _Parser(prog="cliquesys", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"cliquesys {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="build a clique system or plane")
    c.add_argument("kind", choices=("poly", "plane", "prop2"))
    c.add_argument("--Q", type=int, help="prime field order (poly)")
    c.add_argument("--k", type=int, help="degree bound (poly)")
    c.add_argument("--q", type=int, help="plane order (plane) or clique size (prop2)")
    c.add_argument("--e", type=int, help="number of cliques (prop2)")

    s = sub.add_parser("restrict", parents=[common], help="random vertex restriction of a clique system")
    s.add_argument("--q-target", type=int, required=True)
    s.add_argument("--prob", type=float)
    s.add_argument("--max-resamples", type=int, default=100)

    s = sub.add_parser("pad", parents=[common], help="pad restricted traces to full cliques")
    s.add_argument("--q-target", type=int)

    s = sub.add_parser("expand", parents=[common], help="k-graph of a clique system")
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("process", parents=[common], help="run the random greedy process")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--target-e", type=int)
    s.add_argument("--reject-limit", type=int)
    s.add_argument("--stats-k", type=int, help="also report statistics of the k-graph expansion")

    s = sub.add_parser("color", parents=[common], help="color a k-graph or clique system")
    s.add_argument("--method", choices=("greedy", "split"), default="greedy")
    s.add_argument("--k", type=int, help="uniformity when the input is a clique system")

    for name, text in (("alpha", "exact independence number"), ("chi", "exact chromatic number")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--k", type=int, help="uniformity when the input is a clique system")

    s = sub.add_parser("caps", parents=[common], help="cap census of AG(2,q)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--max-t", type=int)
    s.add_argument("--trace", action="store_true", help="emit a random greedy cap trace instead")

    s = sub.add_parser("spectrum", parents=[common], help="singular values and mixing samples of AG(2,q)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--samples", type=int, default=1000)

    s = sub.add_parser("cherries", parents=[common], help="cherries of a 3-graph")
    s.add_argument("--plane-q", type=int, help="use the collinear triples of AG(2,q) instead of --in")
    s.add_argument("--list", action="store_true", help="include every cherry in the output")

    s = sub.add_parser("verify", parents=[common], help="validate a clique system, or a coloring of a k-graph")
    s.add_argument("--coloring", help="coloring document to check against the input k-graph")

    s = sub.add_parser("audit", parents=[common], help="run every acceptance check")
    s.add_argument("--scale", choices=("small", "medium"), default="small")
    s.add_argument("--inject-fault", action="append", default=[], help="corrupt a measured value (testing)")
    return p


def _config(args: argparse.Namespace) -> dict:
    return dict(sorted(vars(args).items()))


def _meta(args) -> dict:
    return {"tool": TOOL, "config": _config(args), "seed": args.seed}


def _read_input(args, stdin: TextIO):
    try:
        if args.inp:
            with open(args.inp, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = stdin.read()
        return loads(text)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except (MalformedDocument, MalformedClique) as exc:
        raise InputError(str(exc)) from exc


def _as_kgraph(obj, k: Optional[int]) -> KGraph:
    if isinstance(obj, KGraph):
        return obj
    if isinstance(obj, CliqueSystem):
        if k is None:
            raise ParameterError("--k is required when the input is a clique system")
        return expand_to_kgraph(obj, k)
    raise InputError(f"expected a kgraph or clique_system document, got {type(obj).__name__}")


def _expect(obj, cls, what: str):
    if not isinstance(obj, cls):
        raise InputError(f"expected a {what} document")
    return obj


def _with_meta(doc: dict, args) -> dict:
    doc = dict(doc)
    prov = dict(doc.get("provenance", {}))
    prov.update(_meta(args))
    doc["provenance"] = prov
    return doc


def _no_csv(args):
    if args.format == "csv":
        raise ParameterError(f"{args.command} has no CSV view")


# -- handlers return (text, exit_code) --------------------------------------

def cmd_construct(args, stdin):
    _no_csv(args)
    if args.kind == "poly":
        if args.Q is None or args.k is None:
            raise ParameterError("construct poly needs --Q and --k")
        obj = build_polynomial_system(args.Q, args.k)
    elif args.kind == "plane":
        if args.q is None:
            raise ParameterError("construct plane needs --q")
        plane = build_affine_plane(args.q)
        doc = to_doc(plane)
        doc["provenance"] = {"construction": "plane", "q": args.q}
        return dumps(_with_meta(doc, args)), EXIT_OK
    else:
        if args.e is None or args.q is None:
            raise ParameterError("construct prop2 needs --e and --q")
        obj = build_enlarged_plane_system(args.e, args.q)
    return dumps(_with_meta(to_doc(obj), args)), EXIT_OK


def cmd_restrict(args, stdin):
    _no_csv(args)
    system = _expect(_read_input(args, stdin), CliqueSystem, "clique_system")
    res = random_restriction(system, args.q_target, args.prob, args.seed, args.max_resamples)
    return dumps(_with_meta(to_doc(res), args)), EXIT_OK


def cmd_pad(args, stdin):
    from .constructions import RestrictionResult

    _no_csv(args)
    res = _expect(_read_input(args, stdin), RestrictionResult, "restriction")
    return dumps(_with_meta(to_doc(pad_cliques(res, args.q_target)), args)), EXIT_OK


def cmd_expand(args, stdin):
    _no_csv(args)
    system = _expect(_read_input(args, stdin), CliqueSystem, "clique_system")
    return dumps(_with_meta(to_doc(expand_to_kgraph(system, args.k)), args)), EXIT_OK


def cmd_process(args, stdin):
    trace = run_greedy_process(args.n, args.q, args.seed, args.target_e, args.reject_limit)
    stats = process_stats(trace, args.stats_k, args.budget, args.seed) if args.stats_k else None
    if args.format == "csv":
        header = ["n", "q", "seed", "e", "max_e", "stop_reason", "draws_rejected"]
        row = [trace.n, trace.q, trace.seed, trace.e, max_linear_edges(trace.n, trace.q),
               trace.stop_reason, sum(trace.rejections) + trace.trailing_rejections]
        if stats:
            header += ["k", "m", "alpha", "alpha_method", "chi_lower_bound"]
            row += [args.stats_k, stats.m, stats.alpha, stats.alpha_method, stats.chi_lower_bound]
        return csv_table(header, [row]), EXIT_OK
    doc = to_doc(trace)
    if stats:
        doc["stats"] = {
            "k": args.stats_k, "e": stats.e, "m": stats.m,
            "pair_coverage": stats.pair_coverage, "alpha": stats.alpha,
            "alpha_method": stats.alpha_method, "alpha_exact": stats.alpha_exact,
            "chi_lower_bound": stats.chi_lower_bound, "witness": list(stats.witness),
        }
    code = EXIT_BUDGET if stats and stats.alpha_method == "branch_and_bound_partial" else EXIT_OK
    return dumps(_with_meta(doc, args)), code


def cmd_color(args, stdin):
    _no_csv(args)
    obj = _read_input(args, stdin)
    if args.method == "split":
        system = _expect(obj, CliqueSystem, "clique_system")
        if args.k is None:
            raise ParameterError("--k is required for split coloring")
        col = split_coloring(system, args.k, args.seed)
        graph = expand_to_kgraph(system, args.k)
    else:
        graph = _as_kgraph(obj, args.k)
        col = greedy_coloring(graph, args.seed)
    doc = to_doc(col)
    doc["proper"] = verify_coloring(graph, col).proper
    return dumps(_with_meta(doc, args)), EXIT_OK


def _solve(args, stdin, solver, quantity):
    _no_csv(args)
    graph = _as_kgraph(_read_input(args, stdin), args.k)
    res = solver(graph, budget=args.budget)
    doc = to_doc(res)
    doc["quantity"] = quantity
    return dumps(_with_meta(doc, args)), EXIT_BUDGET if res.budget_exhausted else EXIT_OK


def cmd_alpha(args, stdin):
    return _solve(args, stdin, exact_independence_number, "alpha")


def cmd_chi(args, stdin):
    return _solve(args, stdin, exact_chromatic_number, "chi")


def cmd_caps(args, stdin):
    plane = build_affine_plane(args.q)
    if args.trace:
        _no_csv(args)
        return dumps(_with_meta(to_doc(greedy_cap_extension_trace(plane, args.seed)), args)), EXIT_OK
    rep = enumerate_caps(plane, args.max_t, count_only=True, budget=args.budget)
    code = EXIT_OK if rep.exhaustive else EXIT_BUDGET
    if args.format == "csv":
        return cap_report_csv(rep), code
    return dumps(_with_meta(to_doc(rep), args)), code


def cmd_spectrum(args, stdin):
    _no_csv(args)
    plane = build_affine_plane(args.q)
    sv = singular_values(plane)
    checks = random_mixing_samples(plane, args.samples, args.seed)
    doc = {
        "version": 1, "type": "spectrum", "q": args.q,
        "top_singular_value": round(float(sv[0]), 12),
        "second_singular_value": round(float(sv[1]), 12),
        "mixing_samples": len(checks),
        "mixing_holds": sum(c.holds for c in checks),
        "max_deviation_ratio": round(max(
            (float(c.deviation) / c.bound for c in checks if c.bound), default=0.0), 12),
    }
    return dumps(_with_meta(doc, args)), EXIT_OK


def cmd_cherries(args, stdin):
    _no_csv(args)
    if args.plane_q is not None:
        graph = build_affine_plane(args.plane_q).collinear_triples()
    else:
        graph = _as_kgraph(_read_input(args, stdin), None)
    cherries = find_cherries(graph)
    doc = {
        "version": 1, "type": "cherries",
        "count": len(cherries),
        "codegree_formula": cherry_count(graph),
        "max_codegree": degree_report(graph).max_codegree,
    }
    if args.list:
        doc["cherries"] = [[list(c.pair), list(c.thirds)] for c in cherries]
    return dumps(_with_meta(doc, args)), EXIT_OK


def cmd_verify(args, stdin):
    _no_csv(args)
    obj = _read_input(args, stdin)
    if args.coloring:
        graph = _as_kgraph(obj, None)
        try:
            with open(args.coloring, encoding="utf-8") as fh:
                col = _expect(loads(fh.read()), Coloring, "coloring")
        except OSError as exc:
            raise InputError(str(exc)) from exc
        res = verify_coloring(graph, col)
        doc = {"version": 1, "type": "verify_coloring", "proper": res.proper,
               "violation": list(res.violation) if res.violation else None}
    else:
        system = _expect(obj, CliqueSystem, "clique_system")
        res = validate_ell_system(system)
        doc = {"version": 1, "type": "verify_system", "ok": res.ok, "ell": system.ell,
               "max_pairwise_intersection": res.max_pairwise_intersection, "cliques": system.e}
    return dumps(_with_meta(doc, args)), EXIT_OK


def cmd_audit(args, stdin):
    from .audit import run_audit

    results = run_audit(args.scale, args.inject_fault)
    ok = all(r.passed for r in results)
    if args.format == "csv":
        text = csv_table(
            ["number", "name", "passed", "seconds", "limit", "detail"],
            [[r.number, r.name, r.passed, f"{r.seconds:.3f}", r.limit, r.detail] for r in results],
        )
    else:
        text = "\n".join(r.line() for r in results) + f"\n{'ALL PASS' if ok else 'FAILURES'}\n"
    return text, EXIT_OK if ok else EXIT_AUDIT


HANDLERS = {
    "construct": cmd_construct, "restrict": cmd_restrict, "pad": cmd_pad,
    "expand": cmd_expand, "process": cmd_process, "color": cmd_color,
    "alpha": cmd_alpha, "chi": cmd_chi, "caps": cmd_caps, "spectrum": cmd_spectrum,
    "cherries": cmd_cherries, "verify": cmd_verify, "audit": cmd_audit,
}


def main(argv: Optional[Sequence[str]] = None, stdin: TextIO = None, stdout: TextIO = None,
         stderr: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text, code = HANDLERS[args.command](args, stdin)
    except ParameterError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARAMS
    except InputError as exc:
        print(f"error: malformed input: {exc}", file=stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def run_captured(argv: Sequence[str], stdin_text: str = "") -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), io.StringIO(stdin_text), out, err)
    return code, out.getvalue(), err.getvalue()


def run_chain(chain: Sequence[Sequence[str]]) -> tuple[int, str, str]:
    """Run commands in sequence, feeding each one's output to the next as input."""
    result = (EXIT_OK, "", "")
    for argv in chain:
        result = run_captured(argv, result[1])
    return result


def representative_commands() -> list[list[list[str]]]:
    """One seeded command chain per subcommand (audit excluded); the last command is the one checked."""
    poly = ["construct", "poly", "--Q", "5", "--k", "3"]
    enlarged = ["construct", "prop2", "--e", "9", "--q", "4"]
    proc = ["process", "--n", "30", "--q", "5", "--seed", "7"]
    restrict = ["restrict", "--q-target", "5", "--prob", "0.5", "--seed", "3"]
    return [
        [poly],
        [["construct", "plane", "--q", "3"]],
        [enlarged],
        [poly, restrict],
        [poly, restrict, ["pad"]],
        [proc, ["expand", "--k", "3"]],
        [["process", "--n", "100", "--q", "5", "--seed", "7"]],
        [proc, ["color", "--method", "greedy", "--k", "3", "--seed", "11"]],
        [proc, ["color", "--method", "split", "--k", "3", "--seed", "11"]],
        [proc, ["alpha", "--k", "3"]],
        [enlarged, ["chi", "--k", "2"]],
        [["caps", "--q", "4"]],
        [["caps", "--q", "5", "--trace", "--seed", "2"]],
        [["spectrum", "--q", "5", "--samples", "200", "--seed", "1"]],
        [["cherries", "--plane-q", "5"]],
        [proc, ["verify"]],
    ]


if __name__ == "__main__":
    sys.exit(main())
