"""``signedhom`` command line.

Exit codes: 0 the property holds or the object was found, 1 it fails or is
absent, 2 usage or input error, 3 undecided within the budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generators
from .circular import NotColorableError, circular_chromatic_number
from .core import SgParseError, SignedGraph, parse_sg, serialize_sg
from .critical import is_critical
from .hom import BudgetExceeded, SearchStats, default_budget, esp_hom, hom
from .structure import (ALL_CRITICAL, COUNTEREXAMPLE, hypotheses, run_discharging, scan_all)

OK, FAIL, USAGE, UNDECIDED = 0, 1, 2, 3

SCHEMA_VERSION = "1"


class InputError(Exception):
    pass


def read_graph(path: str) -> SignedGraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_sg(text)
    except SgParseError as exc:
        raise InputError(f"{path}: line {exc.line}: {exc}") from exc


def parse_target(spec: str) -> SignedGraph:
    """``cstar:<l>``, ``clique:<p>:<q>``, ``core:<p>:<q>`` or ``file:<path>``."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "cstar":
            return generators.make_cstar(int(rest))
        if kind == "clique":
            p, q = (int(x) for x in rest.split(":"))
            return generators.make_circular_clique(p, q)
        if kind == "core":
            p, q = (int(x) for x in rest.split(":"))
            return generators.make_switching_core(p, q)
        if kind == "file":
            return read_graph(rest)
    except ValueError as exc:
        raise InputError(f"bad target {spec!r}: {exc}") from exc
    raise InputError(f"bad target {spec!r}: expected cstar:L, clique:P:Q, core:P:Q or file:PATH")


def _budget(args) -> int | None:
    return args.nodes if args.nodes is not None else default_budget()


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, **payload}, sort_keys=True))
    else:
        print(text)


# -- commands -----------------------------------------------------------------

def cmd_hom(args) -> int:
    g, h = read_graph(args.graph), parse_target(args.target)
    budget = _budget(args)
    stats = SearchStats()
    try:
        found = (esp_hom if args.esp else hom)(g, h, node_budget=budget, stats=stats)
    except BudgetExceeded as exc:
        _emit(args, {"command": "hom", "status": "undecided", "nodes": exc.nodes, "budget": {"nodes": budget}},
              f"undecided after {exc.nodes} nodes (budget {budget})")
        return UNDECIDED
    payload = {"command": "hom", "status": "found" if found else "absent", "esp": args.esp,
               "nodes": stats.nodes, "budget": {"nodes": budget}}
    if found:
        payload["witness"] = found.to_json()
        text = (f"found\nmapping {' '.join(map(str, found.mapping))}\n"
                f"switch {' '.join(map(str, sorted(found.switch_set))) or '-'}")
    else:
        text = "absent"
    text += f"\nnodes {stats.nodes} budget {budget}"
    _emit(args, payload, text)
    return OK if found else FAIL


def cmd_chic(args) -> int:
    g = read_graph(args.graph)
    budget = _budget(args)
    try:
        res = circular_chromatic_number(g, denominator_bound=args.qmax, node_budget=budget, workers=args.workers)
    except BudgetExceeded as exc:
        _emit(args, {"command": "chic", "status": "undecided", "nodes": exc.nodes,
                     "budget": {"nodes": budget, "qmax": args.qmax}},
              f"undecided after {exc.nodes} nodes")
        return UNDECIDED
    except NotColorableError as exc:
        positive_loop = any(e.is_loop and e.sign > 0 for e in g.edge_list())
        _emit(args, {"command": "chic", "status": "absent" if positive_loop else "undecided",
                     "budget": {"nodes": budget, "qmax": args.qmax}}, str(exc))
        return FAIL if positive_loop else UNDECIDED
    payload = {
        "command": "chic", "status": "found", "value": str(res), "p": res.p, "q": res.q,
        "witness": list(res.witness.phi) if res.witness else None,
        "failures": [{"p": p, "q": q, "nodes": nd} for p, q, nd in res.failures],
        "budget": {"nodes": budget, "qmax": res.denominator_bound},
    }
    _emit(args, payload, f"{res}\nwitness {res.p}/{res.q}: {' '.join(map(str, res.witness.phi))}\n"
                         f"refuted {len(res.failures)} smaller candidates; qmax {res.denominator_bound} budget {budget}")
    return OK


def cmd_critical(args) -> int:
    g, h = read_graph(args.graph), parse_target(args.target)
    budget = _budget(args)
    rep = is_critical(g, h, node_budget=budget, workers=args.workers)
    payload = {"command": "critical", **rep.to_json(), "budget": {"nodes": budget}}
    text = f"verdict {rep.verdict}"
    if rep.failing_edge is not None:
        text += f"\nfailing edge {rep.failing_edge}"
    if rep.girth.violations:
        text += "\ngirth violations " + " ".join(rep.girth.to_json()["violations"])
    text += f"\nbudget {budget}"
    _emit(args, payload, text)
    return {"critical": OK, "undecided": UNDECIDED}.get(rep.verdict, FAIL)


def cmd_scan(args) -> int:
    g = read_graph(args.graph)
    report = scan_all(g)
    findings = report.findings if args.scope == "all" else report.by_scope(args.scope)
    for f in findings:
        print(json.dumps(f.to_json(g), sort_keys=True))
    if not args.json:
        print(f"# {len(findings)} findings ({args.scope}); hypotheses passed: {' '.join(report.hypotheses_passed) or '-'}",
              file=sys.stderr)
    return FAIL if findings else OK


def cmd_discharge(args) -> int:
    g = read_graph(args.graph)
    led = run_discharging(g)
    hyp = hypotheses(g)
    payload = {"command": "discharge", **led.to_json(), "edges": g.m,
               "hypotheses": hyp, "all_at_least_3": all(c >= 3 for c in led.final)}
    lines = [f"rule {t.rule}: {t.source} -> {t.target} {t.amount}" for t in led.transfers]
    lines.append("final " + " ".join(str(c) for c in led.final))
    lines.append(f"sum {led.total()} (2e = {2 * g.m})")
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_census(args) -> int:
    from .census import CensusLimitError, find_critical_up_to, write_census
    budget = _budget(args)
    try:
        res = find_critical_up_to(args.nmax, parse_target(args.target), node_budget=budget, workers=args.workers,
                                  checkpoint=args.checkpoint)
    except CensusLimitError as exc:
        raise InputError(str(exc)) from exc
    if args.out:
        write_census(res, args.out)
    bad = [e for e in res.critical if not (e.density_ok and e.potential_ok)]
    payload = {
        "command": "census", "n_max": args.nmax,
        "examined": {str(k): v for k, v in sorted(res.examined.items())},
        "critical": [{"n": e.graph.n, "m": e.graph.m, "key": e.key.hex(), "density_ok": e.density_ok,
                      "potential_ok": e.potential_ok, "findings": len(e.findings)} for e in res.critical],
        "undecided": len(res.undecided), "flagged": res.flagged,
        "budget": {"nodes": budget, "nmax": args.nmax},
    }
    text = [f"n<={args.nmax}: {sum(res.examined.values())} classes examined, {len(res.critical)} critical"]
    text += [f"  n={e.graph.n} e={e.graph.m} rho={3 * e.graph.n - 2 * e.graph.m} key={e.key.hex()}" for e in res.critical]
    if res.flagged:
        text.append(f"FLAGGED: {len(res.undecided)} undecided instances")
    text.append(f"budget nodes={budget} nmax={args.nmax}")
    _emit(args, payload, "\n".join(text))
    if bad:
        return FAIL
    return UNDECIDED if res.flagged else OK


def cmd_gen(args) -> int:
    a = args.params
    try:
        k = args.kind
        if k == "cstar":
            g = generators.make_cstar(int(a[0]))
        elif k == "clique":
            g = generators.make_circular_clique(int(a[0]), int(a[1]))
        elif k == "core":
            g = generators.make_switching_core(int(a[0]), int(a[1]))
        elif k == "w":
            g = generators.make_W()
        elif k == "sk":
            g = generators.make_Sk(int(a[0]))
        elif k == "petersen":
            g = generators.make_petersen()
        elif k == "cycle":
            g = generators.make_cycle(int(a[0]), int(a[1]) if len(a) > 1 else 0)
        elif k == "random":
            g = generators.random_signed_graph(int(a[0]), int(a[1]), int(a[2]), simple=not args.multi)
        else:
            raise InputError(f"unknown generator {k}")
    except (IndexError, ValueError) as exc:
        raise InputError(f"gen {args.kind}: {exc or 'missing parameter'}") from exc
    sys.stdout.write(serialize_sg(g, comments=[f"gen {args.kind} {' '.join(a)}".rstrip()]))
    return OK


def cmd_verify_paper(args) -> int:
    from .verify import verify_paper

    def show(r):
        if not args.json:
            print(r.line, flush=True)

    results = verify_paper(args.level, only=set(args.only) if args.only else None, progress=show)
    failed = [r for r in results if not r.ok]
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, "command": "verify-paper", "level": args.level,
                          "ok": not failed, "claims": [r.to_json() for r in results]}, sort_keys=True))
    else:
        print(f"{len(results) - len(failed)}/{len(results)} claims hold (level {args.level})")
        if failed:
            print(f"first failing claim: {failed[0].claim}")
            if failed[0].counterexample:
                print(failed[0].counterexample, end="")
    return FAIL if failed else OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signedhom", description="Signed graph homomorphisms and circular colourings.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, nodes=True, workers=False):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if nodes:
            sp.add_argument("--nodes", type=int, default=None,
                            help="search node budget (default: $SIGNEDHOM_BUDGET or unlimited)")
        if workers:
            sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("hom", help="homomorphism search")
    sp.add_argument("graph", help=".sg file or - for stdin")
    sp.add_argument("target", help="cstar:L | clique:P:Q | core:P:Q | file:PATH")
    sp.add_argument("--esp", action="store_true", help="edge-sign preserving, no switching")
    common(sp)
    sp.set_defaults(func=cmd_hom)

    sp = sub.add_parser("chic", help="circular chromatic number")
    sp.add_argument("graph")
    sp.add_argument("--qmax", type=int, default=None, help="denominator bound (default: number of vertices)")
    common(sp, workers=True)
    sp.set_defaults(func=cmd_chic)

    sp = sub.add_parser("critical", help="criticality check")
    sp.add_argument("graph")
    sp.add_argument("target")
    common(sp, workers=True)
    sp.set_defaults(func=cmd_critical)

    sp = sub.add_parser("scan", help="forbidden configurations, one JSON line per finding")
    sp.add_argument("graph")
    sp.add_argument("--scope", choices=("all", ALL_CRITICAL, COUNTEREXAMPLE), default="all")
    common(sp, nodes=False)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("discharge", help="run the discharging rules")
    sp.add_argument("graph")
    common(sp, nodes=False)
    sp.set_defaults(func=cmd_discharge)

    sp = sub.add_parser("census", help="critical graphs on few vertices")
    sp.add_argument("--nmax", type=int, default=6)
    sp.add_argument("--target", default="cstar:3")
    sp.add_argument("--out", default=None, help="write census/n<k>/critical/*.sg and manifest.json here")
    sp.add_argument("--checkpoint", default=None, help="JSON progress file for resumable runs")
    common(sp, workers=True)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("gen", help="write a named or random graph in .sg format")
    sp.add_argument("kind", choices=("cstar", "clique", "core", "w", "sk", "petersen", "cycle", "random"))
    sp.add_argument("params", nargs="*")
    sp.add_argument("--multi", action="store_true", help="random: allow loops and parallel edges")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify-paper", help="replay the headline claims")
    sp.add_argument("--level", choices=("fast", "full"), default="fast")
    sp.add_argument("--only", action="append", help="run only this claim (repeatable)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify_paper)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
