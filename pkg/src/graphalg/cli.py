"""Command-line interface: ``graphalg <subcommand> ...``.

All numbers on the interface are reduced fraction strings; output is
deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import graphs as gr
from . import quantum
from .connalg import EvaluationError, connection_matrix, psd_certify
from .graphs import GraphError, ParseError
from .params import automorphism_orbit_count, parse_parameter, parse_target, twin_reduce
from .synth import (
    SynthesisError,
    contractor_closure,
    find_path_relation,
    matrix_of,
    synth_connector,
    synth_contractor,
    verify_connector_param,
    verify_connector_pointwise,
    verify_contractor_param,
    verify_contractor_pointwise,
)


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _matrix_json(m) -> list[list[str]]:
    return [[str(x) for x in row] for row in m]


def _add_corpus_flags(p: argparse.ArgumentParser, k_default: int | None = None, nodes: int = 4) -> None:
    if k_default is None:
        p.add_argument("--k", type=int, required=True, help="number of labels")
    p.add_argument("--max-nodes", type=int, default=nodes)
    p.add_argument("--max-multiplicity", type=int, default=1)
    p.add_argument("--simple", action="store_true", help="simple graphs only")
    p.add_argument("--labels-independent", action="store_true", help="labeled nodes pairwise nonadjacent")
    p.add_argument("--loops", action="store_true", help="allow loops")


def _corpus(args, k: int) -> gr.Corpus:
    return gr.enumerate_corpus(
        k, args.max_nodes, args.max_multiplicity,
        simple_only=args.simple, labels_independent=args.labels_independent, loops=args.loops,
    )


def _load_element(path: str) -> quantum.QuantumGraph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return quantum.from_json(text)
    graphs = gr.loads(text)
    if len(graphs) != 1:
        raise GraphError(f"{path}: expected one graph, found {len(graphs)}")
    return quantum.QuantumGraph.of(graphs[0])


# ---------------------------------------------------------------- subcommands


def cmd_eval(args) -> int:
    f = parse_parameter(args.param)
    if args.graph:
        items = gr.loads(Path(args.graph).read_text())
        values = [f(g) for g in items]
    else:
        values = [quantum.evaluate(f, _load_element(args.element))]
    if args.json:
        _emit({"param": str(f), "values": [str(v) for v in values]}, args.output)
    else:
        text = "".join(f"{v}\n" for v in values)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    return 0


def cmd_connmat(args) -> int:
    f = parse_parameter(args.param)
    cm = connection_matrix(f, _corpus(args, args.k), jobs=args.jobs)
    report = cm.to_json()
    if args.psd:
        report["psd"] = psd_certify(cm).to_json()
    _emit(report, args.output)
    return 0


def cmd_synth(args) -> int:
    h = parse_target(args.target)
    reduced = twin_reduce(h)
    if reduced.n != h.n:
        print(f"note: merged twin nodes, {h.n} -> {reduced.n}", file=sys.stderr)
    if args.what == "connector":
        z = synth_connector(h)
        rep = verify_connector_pointwise(z, reduced)
        verification = {"pointwise": rep.matches, "simple": rep.simple}
    else:
        closure = contractor_closure(reduced)
        z = synth_contractor(reduced, closure)
        rep = verify_contractor_pointwise(z, reduced)
        verification = {
            "pointwise": rep.matches,
            "series_parallel": all(closure.is_series_parallel(g) for g in z.graphs()),
        }
    verification["matrix"] = _matrix_json(matrix_of(z, reduced))
    _emit({"element": quantum.to_json(z), "verification": verification}, args.output)
    return 0 if rep.matches else 1


def cmd_verify(args) -> int:
    f = parse_parameter(args.param)
    z = _load_element(args.element)
    if args.kind == "contractor":
        args.labels_independent = True
        v = verify_contractor_param(z, f, _corpus(args, 2))
    else:
        v = verify_connector_param(z, f, _corpus(args, 2))
    report = {"kind": args.kind, "param": str(f), "checked": v.checked, "passed": v.passed}
    if v.simple is not None:
        report["simple"] = v.simple
    if not v.passed:
        report["counterexample"] = gr.text_block(v.counterexample)
        report["lhs"], report["rhs"] = str(v.lhs), str(v.rhs)
    _emit(report, args.output)
    return 0 if v.passed else 1


def cmd_relation(args) -> int:
    rel = find_path_relation(parse_target(args.target))
    _emit({"k": rel.start, "coefficients": [str(a) for a in rel.coefficients]}, args.output)
    return 0


def cmd_orbits(args) -> int:
    h = parse_target(args.target)
    _emit({"k": args.k, "orbits": automorphism_orbit_count(h, args.k)}, args.output)
    return 0


def cmd_accept(args) -> int:
    from .acceptance import CRITERIA, run

    only = args.only or [num for num, _, _ in CRITERIA]
    failed = 0
    for num in only:
        res = run(num)
        print(res.line() if args.timing else res.line().rsplit(" (", 1)[0], flush=True)
        failed += not res.passed
    print(f"{len(only) - failed}/{len(only)} criteria passed")
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphalg", description=__doc__.splitlines()[0])
    p.add_argument("--jobs", type=int, default=1, help="worker threads for matrix assembly")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a parameter on graphs or a quantum graph")
    e.add_argument("--param", required=True)
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="graph text file (one value per graph)")
    src.add_argument("--element", help="quantum graph JSON or single-graph text file")
    e.add_argument("--json", action="store_true")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("connmat", help="connection matrix over an enumerated corpus")
    c.add_argument("--param", required=True)
    _add_corpus_flags(c)
    c.add_argument("--psd", action="store_true", help="attach a PSD certificate")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_connmat)

    s = sub.add_parser("synth", help="synthesize a connector or contractor for hom(., H)")
    s.add_argument("what", choices=["connector", "contractor"])
    s.add_argument("--target", required=True, help="weighted graph JSON, or K<n> / P<n>")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", help="check a contractor or connector against a parameter")
    v.add_argument("--kind", required=True, choices=["contractor", "connector"])
    v.add_argument("--element", required=True)
    v.add_argument("--param", required=True)
    _add_corpus_flags(v, k_default=2)
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("relation", help="shortest path relation for hom(., H)")
    r.add_argument("--target", required=True)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_relation)

    o = sub.add_parser("orbits", help="automorphism orbits on k-tuples of target nodes")
    o.add_argument("--target", required=True)
    o.add_argument("--k", type=int, required=True)
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_orbits)

    a = sub.add_parser("accept", help="run the acceptance suite")
    a.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    a.add_argument("--timing", action="store_true", help="append wall-clock seconds")
    a.set_defaults(func=cmd_accept)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (GraphError, SynthesisError, EvaluationError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
