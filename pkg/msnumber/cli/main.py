"""Command-line front end for the MS-number toolkit."""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from msnumber import __version__
from msnumber.algebra.gf2core import rank
from msnumber.algebra.quadform import (
    brute_force_weight,
    parse_certificate,
    readonce_weight,
    reduce_to_readonce,
    verify_certificate,
    weight,
)
from msnumber.cli.components import (
    FORMATS,
    as_polynomial,
    parse_form_text,
    parse_graph_text,
    read_source,
    show_status,
)
from msnumber.cli.report_view import (
    render_amplitudes,
    render_bent,
    render_certificate_check,
    render_classification,
    render_graph,
    render_graphs,
    render_reduction,
    render_spectrum,
    render_value,
    render_verification,
)
from msnumber.config.schema import Family, FamilySpec
from msnumber.errors import DimensionError, MSNumberError, ParseError
from msnumber.graphs.graph import Graph, local_complement, pivot, pivot_minor_delete
from msnumber.pipeline.classify import ClassificationPipeline, pivot_orbit
from msnumber.pipeline.verify import VerificationPipeline
from msnumber.states.closedforms import evaluate_family
from msnumber.states.graphstate import (
    amplitudes,
    bipartite_certificate,
    is_bent,
    max_rank_bent_check,
    schmidt_rank_bipartite,
    schmidt_rank_cut,
    wht_spectrum,
)
from msnumber.utils.export import ReportExporter

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3


def _write(text: str):
    sys.stdout.write(text)
    sys.stdout.flush()


def _load(args) -> str:
    return read_source(args.input, args.inline)


def cmd_weight(args) -> int:
    form = parse_form_text(_load(args), args.format)
    f = as_polynomial(form)
    value = brute_force_weight(f, max_n=args.max_n) if args.brute_force else weight(f)
    _write(render_value("weight", value, args.output))
    return EXIT_OK


def cmd_reduce(args) -> int:
    form = parse_form_text(_load(args), args.format)
    f = as_polynomial(form)
    if args.bipartite:
        if not isinstance(form, Graph):
            raise DimensionError("--bipartite needs a graph input")
        g, cert = bipartite_certificate(form)
    else:
        g, cert = reduce_to_readonce(f)
    value = readonce_weight(g) << (f.n - g.m)
    _write(render_reduction(f, g, cert, value, args.output, args.emit_certificate))
    return EXIT_OK


def cmd_rank(args) -> int:
    form = parse_form_text(_load(args), args.format)
    matrix = form.adjacency if isinstance(form, Graph) else form.symmetric()
    _write(render_value("rank", rank(matrix), args.output))
    return EXIT_OK


def cmd_amplitudes(args) -> int:
    graph = parse_graph_text(_load(args), args.format)
    _write(render_amplitudes(amplitudes(graph, max_n=args.max_n), args.output))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    f = as_polynomial(parse_form_text(_load(args), args.format))
    _write(render_spectrum(wht_spectrum(f, max_n=args.max_n), args.output))
    return EXIT_OK


def cmd_schmidt(args) -> int:
    graph = parse_graph_text(_load(args), args.format)
    if args.side:
        try:
            side = [int(v) for v in args.side.split(",") if v.strip()]
        except ValueError:
            raise ParseError(f"--side takes comma-separated vertices, got {args.side!r}")
        value = schmidt_rank_cut(graph, side)
    else:
        value = schmidt_rank_bipartite(graph)
    _write(render_value("schmidt_rank", value, args.output))
    return EXIT_OK


def cmd_bent(args) -> int:
    form = parse_form_text(_load(args), args.format)
    if isinstance(form, Graph):
        brank, bent = max_rank_bent_check(form)
    else:
        brank, bent = rank(form.symmetric()), is_bent(form, max_n=args.max_n)
    _write(render_bent(brank, bent, args.output))
    return EXIT_OK


def cmd_pivot(args) -> int:
    graph = parse_graph_text(_load(args), args.format)
    transform = pivot_minor_delete if args.minor else pivot
    _write(render_graph(transform(graph, args.u, args.v), args.output))
    return EXIT_OK


def cmd_lc(args) -> int:
    graph = parse_graph_text(_load(args), args.format)
    _write(render_graph(local_complement(graph, args.vertex), args.output))
    return EXIT_OK


def cmd_formula(args) -> int:
    family = Family(args.family)
    params = args.params
    if family == Family.TREE:
        spec = FamilySpec(family=family, tree=parse_graph_text(_load(args), args.format))
    elif family == Family.COMPLETE_BIPARTITE:
        if len(params) != 2:
            raise ParseError("complete_bipartite takes two parameters p q")
        spec = FamilySpec(family=family, p=params[0], q=params[1])
    else:
        if len(params) != 1:
            raise ParseError(f"{family.value} takes one parameter n")
        spec = FamilySpec(family=family, n=params[0])
    _write(render_value("weight", evaluate_family(spec), args.output))
    return EXIT_OK


def cmd_classify(args) -> int:
    text = _load(args)
    pipeline = ClassificationPipeline(
        representatives=args.representatives,
        show_progress=args.progress or None,
    )
    report = pipeline.run(text.splitlines())
    rendered = render_classification(report, args.output)
    _write(rendered)
    if args.save:
        ReportExporter.export_file(rendered, args.save, ".json" if args.output == "structured" else ".tsv")
    if report.malformed:
        show_status(f"{report.malformed} malformed record(s) skipped", "warning")
    return EXIT_OK


def cmd_verify(args) -> int:
    pipeline = VerificationPipeline(seed=args.seed, show_progress=args.progress or None)
    if args.exhaustive:
        summary = pipeline.run_exhaustive(args.max_n, min_n=args.min_n)
    elif args.random:
        summary = pipeline.run_random(range(args.min_n, args.max_n + 1), samples=args.samples)
    else:
        summary = pipeline.run_stream(_load(args).splitlines())
    rendered = render_verification(summary, args.output)
    _write(rendered)
    if args.save:
        ReportExporter.export_file(rendered, args.save, ".json" if args.output == "structured" else ".txt")
    if summary.mismatches:
        show_status(f"{len(summary.mismatches)} mismatch(es) found", "error")
        return EXIT_MISMATCH
    return EXIT_DATA_ERROR if summary.malformed else EXIT_OK


def cmd_verify_cert(args) -> int:
    f = as_polynomial(parse_form_text(_load(args), args.format))
    n, g, cert = parse_certificate(read_source(args.certificate))
    if n != f.n:
        raise DimensionError(f"certificate is for n={n}, input has n={f.n}")
    valid = verify_certificate(f, g, cert, seed=args.seed)
    _write(render_certificate_check(valid, args.output))
    return EXIT_OK if valid else EXIT_MISMATCH


def cmd_orbit(args) -> int:
    graph = parse_graph_text(_load(args), args.format)
    _write(render_graphs(pivot_orbit(graph, max_n=args.max_n), args.output))
    return EXIT_OK


COMMANDS: Dict[str, Callable] = {
    "weight": cmd_weight,
    "reduce": cmd_reduce,
    "rank": cmd_rank,
    "amplitudes": cmd_amplitudes,
    "spectrum": cmd_spectrum,
    "schmidt": cmd_schmidt,
    "bent": cmd_bent,
    "pivot": cmd_pivot,
    "lc": cmd_lc,
    "formula": cmd_formula,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "verify-cert": cmd_verify_cert,
    "orbit": cmd_orbit,
}


def _input_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    source = parent.add_mutually_exclusive_group()
    source.add_argument("-i", "--input", metavar="FILE", help="input file (default: standard input)")
    source.add_argument("--inline", metavar="TEXT", help="input given on the command line")
    parent.add_argument("--format", choices=FORMATS, help="input format (inferred when omitted)")
    parent.add_argument(
        "--output", choices=("text", "structured"), default="text", help="rendering of the result"
    )
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="msnumber",
        description="Exact MS-numbers of graph states and weights of quadratic forms over GF(2).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    parent = _input_parent()

    p = sub.add_parser("weight", parents=[parent], help="MS-number of a graph or weight of a polynomial")
    p.add_argument("--brute-force", action="store_true", help="count all 2^n assignments instead")
    p.add_argument("--max-n", type=int, help="brute-force cap override")

    p = sub.add_parser("reduce", parents=[parent], help="readonce reduction (m, kind, z)")
    p.add_argument("--emit-certificate", action="store_true", help="print the certificate dump")
    p.add_argument("--bipartite", action="store_true", help="use the bipartite cut-block certificate")

    sub.add_parser("rank", parents=[parent], help="GF(2) rank of the adjacency / polar matrix")

    p = sub.add_parser("amplitudes", parents=[parent], help="graph-state sign pattern")
    p.add_argument("--max-n", type=int, help="amplitude cap override")

    p = sub.add_parser("spectrum", parents=[parent], help="exact Walsh-Hadamard spectrum")
    p.add_argument("--max-n", type=int, help="spectrum cap override")

    p = sub.add_parser("schmidt", parents=[parent], help="Schmidt rank of a bipartite graph state")
    p.add_argument("--side", metavar="V,V,...", help="explicit cut side instead of the bipartition")

    p = sub.add_parser("bent", parents=[parent], help="binary rank and bent status")
    p.add_argument("--max-n", type=int, help="spectrum cap override")

    p = sub.add_parser("pivot", parents=[parent], help="pivot on an edge")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.add_argument("--minor", action="store_true", help="delete u and v after pivoting")

    p = sub.add_parser("lc", parents=[parent], help="local complementation at a vertex")
    p.add_argument("vertex", type=int)

    p = sub.add_parser("formula", parents=[parent], help="closed-form MS-number of a family member")
    p.add_argument("family", choices=[f.value for f in Family])
    p.add_argument("params", type=int, nargs="*", help="n, or p q for complete_bipartite")

    p = sub.add_parser("classify", parents=[parent], help="group a graph6 stream by (n, w)")
    p.add_argument("--representatives", type=int, metavar="K", help="representatives per class")
    p.add_argument("--progress", action="store_true", help="show a progress bar")
    p.add_argument("--save", metavar="PATH", help="also write the report to PATH")

    p = sub.add_parser("verify", parents=[parent], help="compare the algorithm with its oracles")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="all labeled graphs up to --max-n")
    mode.add_argument("--random", action="store_true", help="seeded random graphs up to --max-n")
    p.add_argument("--min-n", type=int, default=1, help="smallest order for generated graphs")
    p.add_argument("--max-n", type=int, default=6, help="largest order for generated graphs")
    p.add_argument("--samples", type=int, help="random graphs per order")
    p.add_argument("--seed", type=int, default=None, help="sampling seed")
    p.add_argument("--progress", action="store_true", help="show a progress bar")
    p.add_argument("--save", metavar="PATH", help="also write the summary to PATH")

    p = sub.add_parser("verify-cert", parents=[parent], help="check a certificate dump against an input")
    p.add_argument("--certificate", required=True, metavar="FILE", help="output of reduce --emit-certificate")
    p.add_argument("--seed", type=int, default=None, help="sampling seed for large n")

    p = sub.add_parser("orbit", parents=[parent], help="pivot orbit of a graph")
    p.add_argument("--max-n", type=int, help="orbit cap override")

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, dispatch, and return the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE
    handler = COMMANDS[args.command]
    try:
        return handler(args)
    except (MSNumberError, ValidationError) as e:
        logger.debug(f"{args.command} failed: {e}")
        show_status(str(e), "error")
        return EXIT_DATA_ERROR
    except OSError as e:
        show_status(f"cannot read input: {e}", "error")
        return EXIT_DATA_ERROR
