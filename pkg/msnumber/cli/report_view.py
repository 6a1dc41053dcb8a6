"""Text and structured renderings of command results."""

import json
from typing import Iterable

from msnumber.algebra.gf2core import format_matrix
from msnumber.algebra.quadform import QuadraticPolynomial, ReductionCertificate, format_certificate
from msnumber.config.schema import ClassificationReport, ReadonceForm, VerificationSummary
from msnumber.graphs.formats import to_graph6
from msnumber.graphs.graph import Graph
from msnumber.states.graphstate import AmplitudeVector, SpectrumVector
from msnumber.utils.export import ReportExporter


def _json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_value(name: str, value, output: str) -> str:
    """A single exact result: bare decimal text, or {name: value}."""
    if output == "structured":
        return _json({name: str(value) if isinstance(value, int) and not isinstance(value, bool) else value})
    if isinstance(value, bool):
        return ("true" if value else "false") + "\n"
    return f"{value}\n"


def render_reduction(
    f: QuadraticPolynomial,
    g: ReadonceForm,
    cert: ReductionCertificate,
    weight: int,
    output: str,
    emit_certificate: bool = False,
) -> str:
    if output == "structured":
        payload = {
            "n": f.n,
            "m": g.m,
            "kind": g.kind.value,
            "z": g.z,
            "weight": str(weight),
        }
        if emit_certificate:
            payload["certificate"] = {
                "c": cert.c.to_text(),
                "T": format_matrix(cert.T).splitlines(),
            }
        return _json(payload)
    if emit_certificate:
        return format_certificate(f, g, cert)
    return f"{g.describe()} weight={weight}\n"


def render_bent(rank: int, bent: bool, output: str) -> str:
    if output == "structured":
        return _json({"rank": rank, "bent": bent})
    return f"rank={rank} bent={'true' if bent else 'false'}\n"


def render_amplitudes(vector: AmplitudeVector, output: str) -> str:
    if output == "structured":
        return _json({"n": vector.n, "signs": vector.render(), "minus": vector.minus_count})
    return vector.render() + "\n"


def render_spectrum(spectrum: SpectrumVector, output: str) -> str:
    if output == "structured":
        return _json({
            "n": spectrum.n,
            "numerators": [int(v) for v in spectrum.numerators],
            "parseval": spectrum.parseval_holds(),
        })
    return spectrum.render() + "\n"


def render_graph(graph: Graph, output: str) -> str:
    if output == "structured":
        return _json({"n": graph.n, "graph6": to_graph6(graph), "edges": [list(e) for e in graph.edges()]})
    return to_graph6(graph) + "\n"


def render_graphs(graphs: Iterable[Graph], output: str) -> str:
    ordered = sorted(((g.size, to_graph6(g)) for g in graphs))
    if output == "structured":
        return _json({"count": len(ordered), "graphs": [g6 for _, g6 in ordered]})
    return "".join(g6 + "\n" for _, g6 in ordered)


def render_classification(report: ClassificationReport, output: str) -> str:
    if output == "structured":
        return ReportExporter.structured(report)
    return ReportExporter.classification_tsv(report)


def render_verification(summary: VerificationSummary, output: str) -> str:
    if output == "structured":
        return ReportExporter.structured(summary, exclude={"elapsed_seconds"})
    return ReportExporter.verification_text(summary)


def render_certificate_check(valid: bool, output: str) -> str:
    if output == "structured":
        return _json({"valid": valid})
    return ("valid" if valid else "invalid") + "\n"
