"""Versioned JSON documents and CSV tables for the package's objects.

Every document is a JSON object with ``"version": 1`` and a ``"type"``
tag.  Vertex sets are arrays of sorted integers.  Output is written with
sorted keys and compact separators so that equal objects give identical
bytes.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Union

from . import __version__
from .caps import CapReport, CapTrace
from .constructions import IncidencePlane, RestrictionResult
from .errors import CliqueSysError, MalformedDocument
from .hypergraph import CliqueSystem, KGraph
from .process import ProcessTrace
from .solvers import Coloring, SolveResult

VERSION = 1
TOOL = {"name": "cliquesys", "version": __version__}


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


def dumps(doc: dict) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def to_doc(obj: Any) -> dict:
    """Serialize one of the package's result objects to a document."""
    if isinstance(obj, CliqueSystem):
        return {
            "version": VERSION, "type": "clique_system",
            "n": obj.n, "q": obj.q, "ell": obj.ell,
            "cliques": [list(c) for c in obj.cliques],
            "provenance": dict(obj.provenance),
        }
    if isinstance(obj, KGraph):
        return {
            "version": VERSION, "type": "kgraph",
            "n": obj.n, "k": obj.k,
            "edges": [list(e) for e in obj.edges],
            "provenance": dict(obj.provenance),
        }
    if isinstance(obj, IncidencePlane):
        return {"version": VERSION, "type": "plane", "q": obj.q, "lines": [list(l) for l in obj.lines]}
    if isinstance(obj, ProcessTrace):
        return to_doc(obj.to_system())
    if isinstance(obj, RestrictionResult):
        return {
            "version": VERSION, "type": "restriction",
            "source": to_doc(obj.source),
            "W": list(obj.W),
            "traces": [list(t) for t in obj.traces],
            "prob": obj.prob, "seed": obj.seed, "q_target": obj.q_target,
            "resample_count": obj.resample_count, "failed": obj.failed,
            "max_trace": obj.max_trace,
            "diagnostics": dict(obj.diagnostics),
        }
    if isinstance(obj, Coloring):
        return {
            "version": VERSION, "type": "coloring",
            "assignment": list(obj.assignment), "num_colors": obj.num_colors,
            "method": obj.method, "seed": obj.seed, "info": dict(obj.info),
        }
    if isinstance(obj, SolveResult):
        return {
            "version": VERSION, "type": "solve_result",
            "value": obj.value, "certificate": list(obj.certificate),
            "exact": obj.exact, "nodes_explored": obj.nodes_explored,
            "budget_exhausted": obj.budget_exhausted,
        }
    if isinstance(obj, CapReport):
        return {
            "version": VERSION, "type": "cap_report", "q": obj.q,
            "convention": "unordered",
            "counts": {str(t): c for t, c in sorted(obj.counts.items())},
            "bounds": {str(t): str(b) for t, b in sorted(obj.bound_values.items())},
            "bound_holds": {str(t): ok for t, ok in sorted(obj.bound_holds().items())},
            "max_cap": obj.max_cap_size, "total": obj.total,
            "mixed_assembly": obj.assembly(),
            "exhaustive": obj.exhaustive, "nodes": obj.nodes,
        }
    if isinstance(obj, CapTrace):
        return {
            "version": VERSION, "type": "cap_trace", "q": obj.q, "seed": obj.seed,
            "cap": list(obj.cap),
            "rows": [{"i": i, "Z": z, "X": x} for i, z, x in obj.rows],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _need(doc: dict, *keys: str) -> list:
    missing = [k for k in keys if k not in doc]
    if missing:
        raise MalformedDocument(f"{doc.get('type', 'document')} is missing {', '.join(missing)}")
    return [doc[k] for k in keys]


def from_doc(doc: Any) -> Union[CliqueSystem, KGraph, IncidencePlane, RestrictionResult, Coloring]:
    """Inverse of :func:`to_doc` for the input types (systems, graphs, planes, restrictions, colorings)."""
    if not isinstance(doc, dict):
        raise MalformedDocument("document must be a JSON object")
    if doc.get("version") != VERSION:
        raise MalformedDocument(f"unsupported document version {doc.get('version')!r}")
    kind = doc.get("type")
    try:
        if kind == "clique_system":
            n, q, ell, cliques = _need(doc, "n", "q", "ell", "cliques")
            return CliqueSystem(n, q, ell, cliques, dict(doc.get("provenance", {})))
        if kind == "kgraph":
            n, k, edges = _need(doc, "n", "k", "edges")
            return KGraph(n, k, edges, dict(doc.get("provenance", {})))
        if kind == "plane":
            q, lines = _need(doc, "q", "lines")
            return IncidencePlane(q, tuple(tuple(l) for l in lines))
        if kind == "restriction":
            src, W, traces, prob, seed, qt, rc, failed = _need(
                doc, "source", "W", "traces", "prob", "seed", "q_target", "resample_count", "failed")
            return RestrictionResult(
                from_doc(src), tuple(W), tuple(tuple(t) for t in traces),
                prob, seed, qt, rc, failed, dict(doc.get("diagnostics", {})),
            )
        if kind == "coloring":
            a, num, method = _need(doc, "assignment", "num_colors", "method")
            return Coloring(tuple(a), num, method, doc.get("seed"), dict(doc.get("info", {})))
    except CliqueSysError:
        raise
    except (TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad {kind} document: {exc}") from exc
    raise MalformedDocument(f"unknown document type {kind!r}")


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    return from_doc(doc)


def csv_table(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[_jsonable(v) for v in row] for row in rows])
    return buf.getvalue()


def cap_report_csv(report: CapReport) -> str:
    rows = []
    for t, count, bound in report.rows():
        ratio = "" if bound is None else f"{float(Fraction(count) / bound):.6g}"
        rows.append([t, count, "" if bound is None else str(bound), ratio])
    return csv_table(["t", "count", "bound", "ratio"], rows)
