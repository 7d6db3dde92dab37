"""Command-line front end.

Exit codes: 0 success or YES, 1 NO, 2 UNKNOWN, 3 usage, parse or
precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import ck2_normalize
from .commutators import DEFAULT_M_MAX, Decision, build_certificate, decide_membership, verify_certificate
from .dsl import load_source
from .errors import LeavittError
from .expr import format_element, parse_element
from .fields import Field
from .graph import Acyclicity, FiniteGraph, enumerate_hs, explore, is_acyclic
from .oracle import sink_index, to_matrix
from .perfection import check_perfect
from .selftest import run_selftest

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3
_DECISION_EXIT = {Decision.YES: EXIT_OK, Decision.NO: EXIT_NO, Decision.UNKNOWN: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_argument_group("graph source")
    src.add_argument("--graph", metavar="FILE", help="graph DSL file")
    src.add_argument("--family", metavar="SPEC", help="family expression, e.g. 'line(d=3)'")
    p.add_argument("--char", type=int, default=0, metavar="P", help="field characteristic: 0 or a prime (default 0)")
    p.add_argument("--mmax", type=int, default=DEFAULT_M_MAX, help=f"search radius bound (default {DEFAULT_M_MAX})")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--limit-vertices", type=int, default=20, metavar="N",
                   help="vertex limit for lattice enumeration (default 20)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="leavitt", description="Commutators in Leavitt path algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("load", parents=[common], help="load a graph and print a summary")
    p.add_argument("source", nargs="*", help="DSL file path or 'family name(...)'")
    for name, help_ in (("eval", "print the normal form of an element"),
                        ("normalize", "same as eval")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("expression")
    p = sub.add_parser("member", parents=[common], help="decide membership in the commutator subspace")
    p.add_argument("expression")
    p.add_argument("--certify", action="store_true", help="also build and verify a certificate")
    sub.add_parser("perfect", parents=[common], help="decide whether L equals [L, L]")
    sub.add_parser("ideals", parents=[common], help="list the hereditary saturated subsets")
    p = sub.add_parser("oracle", parents=[common], help="matrix representation and trace test")
    p.add_argument("expression")
    p = sub.add_parser("selftest", parents=[common], help="run randomized cross-checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=int, default=1, help="multiply the number of random cases")
    return parser


# ---------------------------------------------------------------------------

def _session(args, positional=None):
    field = Field(args.char)
    sources = [s for s in (args.graph, args.family and "family " + args.family) if s]
    if positional:
        sources.append(" ".join(positional))
    if len(sources) != 1:
        raise UsageError("give exactly one graph source (--graph FILE, --family SPEC or a load argument)")
    return load_source(sources[0]), field


def _emit(args, data: dict, text: str):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _names(vs, limit=12):
    vs = list(vs)
    shown = " ".join(vs[:limit])
    return shown + (f" ... ({len(vs) - limit} more)" if len(vs) > limit else "")


def cmd_load(args) -> int:
    g, field = _session(args, args.source)
    if g.is_finite:
        vertices, edges = list(g.vertices), list(g.edges)
        scope = "whole graph"
    else:
        vertices = explore(g)
        edges = [e for v in vertices for e in g.out_edges(v)]
        scope = f"explored region within depth {g.region_depth} of {' '.join(g.roots)}"
    acyc = is_acyclic(g)
    sinks = [v for v in vertices if g.is_sink(v)]
    regular = [v for v in vertices if g.is_regular(v)]
    loops = [e.id for e in edges if e.src == e.dst]
    words = {Acyclicity.TRUE: "acyclic", Acyclicity.FALSE: "cyclic",
             Acyclicity.DECLARED: "acyclic (declared)", Acyclicity.UNKNOWN: "unknown"}
    data = {
        "graph": g.name, "field": field.name, "finite": g.is_finite, "scope": scope,
        "vertices": len(vertices), "edges": len(edges), "loops": len(loops),
        "sinks": sinks, "regular_vertices": len(regular), "acyclicity": acyc.value,
    }
    lines = [
        f"graph: {g.name}",
        f"field: {field.name}",
        f"scope: {scope}",
        f"vertices: {len(vertices)}",
        f"edges: {len(edges)}",
        f"loops: {len(loops)}",
        f"sinks: {len(sinks)}" + (f" ({_names(sinks)})" if sinks else ""),
        f"regular vertices: {len(regular)}",
        f"acyclicity: {words[acyc]}",
    ]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_eval(args) -> int:
    g, field = _session(args)
    x = parse_element(args.expression, g, field)
    nf = ck2_normalize(x)
    _emit(args, {"input": args.expression, "normal_form": format_element(nf)}, format_element(nf))
    return EXIT_OK


def _kv(d: dict) -> str:
    return ", ".join(f"{k}: {v}" for k, v in d.items()) or "none"


def cmd_member(args) -> int:
    g, field = _session(args)
    x = parse_element(args.expression, g, field)
    rep = decide_membership(x, m_max=args.mmax)
    data = rep.to_dict()
    data["element"] = format_element(ck2_normalize(x))
    lines = [
        f"element: {data['element']}",
        f"decision: {rep.decision.value}",
        f"failed conditions: {' '.join(map(str, rep.failed_conditions)) or 'none'}",
        f"vertex trace: {_kv(data['trace_vector'])}",
        f"span condition: {rep.condition1.value}",
    ]
    if data["span_witness"] is not None:
        lines.append(f"span witness: {_kv(data['span_witness'])}")
    if rep.depth_used is not None and not g.is_finite:
        lines.append(f"search radius used: {rep.depth_used}")
    if data["offending_real_classes"]:
        lines.append(f"nonzero real class sums: {_kv(data['offending_real_classes'])}")
    if data["offending_ghost_classes"]:
        lines.append(f"nonzero ghost class sums: {_kv(data['offending_ghost_classes'])}")
    if args.certify:
        cert = build_certificate(x, rep)
        ok = verify_certificate(cert, x)
        data["certificate"] = cert.to_list(field)
        data["certificate_verified"] = ok
        lines.append(f"certificate ({len(cert)} commutator{'' if len(cert) == 1 else 's'}):")
        lines.extend(f"  {k} * [{a}, {b}]" for k, a, b in data["certificate"])
        lines.append(f"certificate verified: {'yes' if ok else 'no'}")
        if not ok:
            _emit(args, data, "\n".join(lines))
            return EXIT_USAGE
    _emit(args, data, "\n".join(lines))
    return _DECISION_EXIT[rep.decision]


def cmd_perfect(args) -> int:
    g, field = _session(args)
    rep = check_perfect(g, field, m_max=args.mmax)
    data = rep.to_dict()
    lines = [f"verdict: {rep.verdict.value}", f"scope: {rep.scope}"]
    if rep.failing_condition is not None:
        lines.append(f"failing condition: {rep.failing_condition}")
        lines.extend(f"  {k}: {v}" for k, v in sorted(rep.evidence.items()))
    if rep.m_assignments:
        lines.append("radius per vertex:")
        lines.extend(f"  {u}: {m}" for u, m in sorted(rep.m_assignments.items()))
    _emit(args, data, "\n".join(lines))
    return _DECISION_EXIT[rep.verdict]


def _fmt_set(s) -> str:
    return "{" + ", ".join(sorted(s)) + "}"


def cmd_ideals(args) -> int:
    g, _ = _session(args)
    if not g.is_finite:
        raise UsageError("ideals needs a finite graph")
    lat = enumerate_hs(g, limit=args.limit_vertices)
    data = {
        "count": len(lat),
        "is_chain": lat.is_chain,
        "subsets": [sorted(s) for s in lat.subsets],
        "covers": [[i, j] for i in range(len(lat)) for j in range(len(lat)) if _covers(lat, i, j)],
    }
    lines = [f"hereditary saturated subsets: {len(lat)}", f"chain: {'yes' if lat.is_chain else 'no'}"]
    lines.extend(f"  H{i}: {_fmt_set(s)}" for i, s in enumerate(lat.subsets))
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def _covers(lat, i, j) -> bool:
    a, b = lat.subsets[i], lat.subsets[j]
    return a < b and not any(a < c < b for c in lat.subsets)


def cmd_oracle(args) -> int:
    g, field = _session(args)
    x = parse_element(args.expression, g, field)
    M = to_matrix(x, sink_index(g))
    traces = M.traces()
    member = not any(traces.values())
    data = {
        "member": member,
        "traces": {s: field.format(t) for s, t in sorted(traces.items())},
        "blocks": M.to_dict(),
    }
    lines = [f"member: {'yes' if member else 'no'}",
             f"block traces: {_kv(data['traces'])}", M.render()]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if member else EXIT_NO


def cmd_selftest(args) -> int:
    results = run_selftest(seed=args.seed, scale=args.scale)
    ok = all(r.passed for r in results)
    data = {"seed": args.seed, "passed": ok, "checks": [r.to_dict() for r in results]}
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.cases} cases, {r.failures} failures)")
        if r.example:
            lines.append(f"  first failure: {r.example}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if ok else EXIT_NO


COMMANDS = {
    "load": cmd_load, "eval": cmd_eval, "normalize": cmd_eval, "member": cmd_member,
    "perfect": cmd_perfect, "ideals": cmd_ideals, "oracle": cmd_oracle, "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (LeavittError, UsageError) as exc:
        code = getattr(exc, "code", "USAGE")
        if args.json:
            print(json.dumps({"error": {"code": code, "message": str(exc)}}, indent=2, sort_keys=True))
        else:
            print(f"error [{code}]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error [IO]: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
