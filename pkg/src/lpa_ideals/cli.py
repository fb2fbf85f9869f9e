"""Command line front end: ``lpa-ideals <command> ...``.

Exit codes: 0 when the command succeeds and the checked property holds,
1 when a property fails or a counterexample is found, 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .cancellation import cancellation_check, cancellation_counterexample
from .dsl import DSLError, eval_expr, parse_graph, parse_ideal
from .graph import (
    CapacityError,
    Graph,
    GraphError,
    breaking_vertices,
    condition_K,
    condition_L,
    enumerate_hs_subsets,
    exit_free_cycles,
    is_downward_directed,
    proper_hs_subsets,
)
from .ideals import IdealError
from .oracle import OracleError, acyclic_suite, laurent_suite
from .poly import DegreeCapError, PolyError, field_from_name
from .spectrum import enumerate_primes
from .verify import DEFAULT_TRIALS, SCHEMA, SUITES, GenConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def load_graph(spec: str) -> Graph:
    """Read a graph document; a missing path naming a shipped fixture loads that fixture."""
    path = Path(spec)
    if path.exists():
        return parse_graph(path.read_text(encoding="utf-8"))
    stem = path.name.removesuffix(".graph")
    if stem in fixtures.NAMES:
        return fixtures.load(stem)
    raise UsageError(f"no such graph file: {spec}")


def _names(g: Graph, X) -> list:
    return [str(v) for v in g.sorted_vertices(X)]


def _emit(args, payload: dict, lines: list):
    if args.json:
        print(json.dumps(dict(payload, schema=SCHEMA), indent=2, sort_keys=True, default=str))
    else:
        print("\n".join(lines))


# -- commands ---------------------------------------------------------------

def cmd_analyze(args) -> int:
    g = load_graph(args.graph)
    classes = {}
    for v in g.vertices:
        if g.is_sink(v):
            kind = "sink"
        elif g.is_infinite_emitter(v):
            kind = "infinite emitter"
        else:
            kind = "regular"
        classes[str(v)] = kind
    hs = enumerate_hs_subsets(g)
    table = [{"H": _names(g, H), "B_H": _names(g, breaking_vertices(g, H))} for H in hs]
    payload = {
        "command": "analyze",
        "graph": g.name,
        "vertices": classes,
        "condition_L": condition_L(g),
        "condition_K": condition_K(g),
        "downward_directed": is_downward_directed(g),
        "exit_free_cycles": [str(c) for c in exit_free_cycles(g)],
        "H_E": [_names(g, H) for H in proper_hs_subsets(g)],
        "breaking_table": table,
    }
    lines = [f"graph {g.name or '(unnamed)'}: {len(g.vertices)} vertices, {len(g.bundles)} bundles"]
    lines += [f"  {v}: {k}" for v, k in classes.items()]
    lines.append(f"condition (L): {payload['condition_L']}")
    lines.append(f"condition (K): {payload['condition_K']}")
    lines.append(f"downward directed: {payload['downward_directed']}")
    lines.append("exit-free cycles: " + (", ".join(payload["exit_free_cycles"]) or "none"))
    lines.append("nontrivial hereditary saturated sets: "
                 + (" ".join("{" + ", ".join(H) + "}" for H in payload["H_E"]) or "none"))
    lines.append("B_H table:")
    for row in table:
        lines.append(f"  H={{{', '.join(row['H'])}}}  B_H={{{', '.join(row['B_H'])}}}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_primes(args) -> int:
    g = load_graph(args.graph)
    field = field_from_name(args.field)
    res = enumerate_primes(g, max_degree=args.max_degree, height=args.height, field=field)
    graded = [str(P) for P in res["graded"]]
    frames = [f"H={{{', '.join(_names(g, fr.H))}}}, S={{{', '.join(_names(g, fr.S))}}}, {fr.cycle}"
              for fr in res["frames"]]
    nongraded = [str(P.ideal(g, field)) for P in res["nongraded"]]
    payload = {"command": "primes", "graph": g.name, "field": field.name,
               "graded": [{"descriptor": d, "ideal": str(P.ideal(g, field))}
                          for d, P in zip(graded, res["graded"])],
               "frames": frames, "nongraded": nongraded}
    lines = ["graded primes:"]
    lines += [f"  {P.ideal(g, field)}    [{d}]" for d, P in zip(graded, res["graded"])] or ["  none"]
    lines.append("non-graded frames (any irreducible p):")
    lines += [f"  {f}" for f in frames] or ["  none"]
    if nongraded:
        lines.append(f"non-graded primes with deg p <= {args.max_degree}:")
        lines += [f"  {s}" for s in nongraded]
    _emit(args, payload, lines)
    return EXIT_OK


def _parse_lets(g: Graph, lets: list, field) -> dict:
    bindings = {}
    for item in lets:
        name, sep, text = item.partition("=")
        name = name.strip()
        if not sep or not name.isidentifier():
            raise UsageError(f"--let expects NAME=<ideal>, got {item!r}")
        bindings[name] = parse_ideal(g, text, field)
    return bindings


def cmd_op(args) -> int:
    g = load_graph(args.graph)
    field = field_from_name(args.field)
    bindings = _parse_lets(g, args.let or [], field)
    result = eval_expr(g, args.expr, bindings, field)
    payload = {"command": "op", "graph": g.name, "expr": args.expr,
               "bindings": {k: str(v) for k, v in bindings.items()}, "result": str(result)}
    _emit(args, payload, [str(result)])
    return EXIT_OK


def cmd_cancel(args) -> int:
    g = load_graph(args.graph)
    field = field_from_name(args.field)
    verdict = cancellation_check(g)
    payload = {"command": "cancel", "graph": g.name, "cancellative": verdict.cancellative,
               "branch": verdict.branch, "witness": verdict.witness}
    lines = [f"cancellative: {verdict.cancellative}", f"branch: {verdict.branch}"]
    lines += [f"  {k}: {v}" for k, v in verdict.witness.items()]
    if not verdict.cancellative:
        found = cancellation_counterexample(g, seed=args.seed, trials=args.trials, field=field)
        cx = found.witness.as_dict() if found.witness else None
        payload["counterexample"] = cx
        if cx:
            lines.append(f"counterexample ({cx['pattern']}): AB = AC = {cx['AB']}")
            lines += [f"  {k} = {cx[k]}" for k in ("A", "B", "C")]
        else:
            lines.append(f"no counterexample found in {found.trials} random trials")
    _emit(args, payload, lines)
    return EXIT_OK if verdict.cancellative else EXIT_FAIL


def cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    cfg = GenConfig(max_vertices=args.max_vertices, field=args.field, seed=args.seed)
    graph = None if args.target == "random" else load_graph(args.target)
    trials = args.trials if args.trials is not None else DEFAULT_TRIALS[args.suite]
    rep = suite(cfg, trials=trials, seed=args.seed, graph=graph)
    payload = dict(rep.to_dict(), command="verify", target=args.target)
    lines = [f"suite {rep.suite}: {rep.trials} trials, {rep.failures} failures, "
             f"{rep.elapsed:.2f}s (seed {rep.seed}, config {rep.config})"]
    if rep.first_counterexample:
        lines.append("first counterexample:")
        for k, v in rep.first_counterexample.items():
            text = str(v)
            lines.append(f"  {k}:" + ("\n" + text if "\n" in text else f" {text}"))
    _emit(args, payload, lines)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    if args.suite == "acyclic":
        res = acyclic_suite(graphs=args.graphs, trials=args.trials, seed=args.seed,
                            max_vertices=args.max_vertices)
    else:
        res = laurent_suite(pairs=args.pairs, seed=args.seed)
    payload = dict(res, command="oracle")
    lines = [f"oracle {args.suite}: {res['checks']} checks, {res['mismatches']} mismatches"]
    if res.get("count_mismatches"):
        lines.append(f"ideal-count mismatches: {res['count_mismatches']}")
    if res.get("first_mismatch"):
        lines.append(f"first mismatch: {res['first_mismatch']}")
    _emit(args, payload, lines)
    bad = res["mismatches"] or res.get("count_mismatches", 0)
    return EXIT_FAIL if bad else EXIT_OK


# -- argument parsing -------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", default="QQ", help="coefficient field: QQ or GF(p)")

    p = _Parser(prog="lpa-ideals", description="Ideal arithmetic in Leavitt path algebras of finite graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="vertex classes, conditions, hereditary saturated sets")
    a.add_argument("graph")
    a.set_defaults(func=cmd_analyze)

    a = sub.add_parser("primes", parents=[common], help="list prime ideals")
    a.add_argument("graph")
    a.add_argument("--max-degree", type=int, default=2)
    a.add_argument("--height", type=int, default=2, help="coefficient bound for irreducibles over QQ")
    a.set_defaults(func=cmd_primes)

    a = sub.add_parser("op", parents=[common], help="evaluate an ideal expression")
    a.add_argument("graph")
    a.add_argument("--let", action="append", metavar="NAME=IDEAL")
    a.add_argument("--expr", required=True)
    a.set_defaults(func=cmd_op)

    a = sub.add_parser("cancel", parents=[common], help="cancellation verdict and counterexample")
    a.add_argument("graph")
    a.add_argument("--seed", default="0")
    a.add_argument("--trials", type=int, default=500, help="random triples tried after the structured patterns")
    a.set_defaults(func=cmd_cancel)

    a = sub.add_parser("verify", parents=[common], help="run a randomized identity suite")
    a.add_argument("target", nargs="?", default="random", help="a graph file, or random (default)")
    a.add_argument("--suite", choices=sorted(SUITES), required=True)
    a.add_argument("--trials", type=int)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--max-vertices", type=int, default=GenConfig.max_vertices)
    a.set_defaults(func=cmd_verify)

    a = sub.add_parser("oracle", parents=[common], help="compare against the independent models")
    a.add_argument("--suite", choices=("acyclic", "laurent"), required=True)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--graphs", type=int, default=50)
    a.add_argument("--trials", type=int, default=100)
    a.add_argument("--pairs", type=int, default=200)
    a.add_argument("--max-vertices", type=int, default=5)
    a.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except DSLError as exc:
        print(f"input error: {exc}", file=sys.stderr)
    except (UsageError, GraphError, IdealError, PolyError, OracleError, CapacityError, DegreeCapError,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
