"""
Report writer for the weylstrata command line

Every subcommand produces a payload dictionary that is written either as JSON
(sorted keys, so identical inputs give identical bytes) or as a tab-separated
table with one row per class, pair or check.
"""

import csv
import json
import logging
from typing import Any, Dict, List, Sequence, TextIO

from weylstrata.algebra.affine_weyl import ExtAffineElement
from weylstrata.core.service_registry import GroupContext
from weylstrata.core.system import VerificationReport
from weylstrata.utils.serialization import (
    class_label,
    class_to_dict,
    element_to_dict,
    polynomial_to_str,
    rational_to_str,
    root_label,
)

logger = logging.getLogger(__name__)

FORMATS = ("json", "tsv")


def element_payload(context: GroupContext, x: ExtAffineElement) -> Dict[str, Any]:
    """Canonical form, length, word, Newton and Kottwitz point of x."""
    group, classifier = context.group, context.classifier
    omega, word = group.omega_word(x)
    c = classifier.class_of(x)
    return {
        "element": element_to_dict(group, x),
        "length": group.length(x),
        "omega": element_to_dict(group, omega),
        "word": word,
        "nu": [rational_to_str(v) for v in c.nu],
        "kappa": list(c.kappa.values),
        "moduli": list(c.kappa.moduli),
        "basic": classifier.is_basic(c),
    }


def _class_rows(context: GroupContext, x: ExtAffineElement) -> List[Dict[str, Any]]:
    engine = context.engine
    record = engine.record(x)
    rows = []
    for c in record.classes:
        row = class_to_dict(c)
        row["poly"] = polynomial_to_str(record.polynomials[c])
        if engine.include_dimensions:
            row["dimension"] = record.dimensions.get(c)
        rows.append(row)
    return rows


def bgx_payload(context: GroupContext, x: ExtAffineElement) -> Dict[str, Any]:
    """B(G)_x with class polynomials and the generic class."""
    return {
        "element": element_to_dict(context.group, x),
        "length": context.group.length(x),
        "classes": _class_rows(context, x),
        "generic": class_to_dict(context.engine.generic_class(x)),
    }


def classpoly_payload(context: GroupContext, x: ExtAffineElement) -> Dict[str, Any]:
    """Class polynomials, dimensions and the leaves of the reduction tree of x."""
    group = context.group
    node = context.engine.reduce(x)
    leaves = [{
        "element": element_to_dict(group, leaf.element),
        "length": leaf.length,
        "class": class_label(leaf.leaf_class),
    } for leaf in node.leaves()]
    return {
        "element": element_to_dict(group, x),
        "length": node.length,
        "pivot": node.pivot,
        "classes": _class_rows(context, x),
        "leaves": leaves,
    }


def alcoves_payload(context: GroupContext, x: ExtAffineElement, all_pairs: bool = False) -> Dict[str, Any]:
    """
    Alcove pairs of x with the condition diagnostics of each.

    By default only the normalized alcove pairs are listed. With ``all_pairs``
    every σ-stable J is tried with every minimal representative w of W/W_J, so
    failing pairs show whether (a) failed and which roots α break (b).
    """
    group, detector, datum = context.group, context.detector, context.datum
    if all_pairs:
        candidates = [(J, w) for J in detector.sigma_stable_subsets() for w in detector.coset_representatives(J)]
    else:
        candidates = [(pair.J, pair.w) for pair in detector.enumerate_alcove_pairs(x)]
    pairs = []
    for J, w in candidates:
        diagnostics = detector.diagnose(x, J, w)
        pairs.append({
            "J": [j + 1 for j in J],
            "w": [f"s{i + 1}" for i in datum.reduced_word(w)],
            "trivial": len(J) == datum.semisimple_rank,
            "alcove": diagnostics.passed,
            "x_tilde": element_to_dict(group, diagnostics.x_tilde),
            "condition_a": diagnostics.condition_a,
            "condition_b": diagnostics.condition_b,
            "failing_roots": [root_label(datum, alpha) for alpha in diagnostics.failing_roots],
        })
    support = detector.sigma_support(x)
    return {
        "element": element_to_dict(group, x),
        "pairs": pairs,
        "sigma_support": sorted(support.labels),
        "spherical": support.spherical,
    }


def verify_payload(report: VerificationReport, include_runtime: bool = True) -> Dict[str, Any]:
    return report.to_dict(include_runtime=include_runtime)


class ReportWriter:
    """
    Writes payloads to a text stream.

    Args:
        stream: Destination, usually stdout
        fmt: "json" or "tsv"
    """

    def __init__(self, stream: TextIO, fmt: str = "json"):
        if fmt not in FORMATS:
            raise ValueError(f"Unknown output format: {fmt}")
        self.stream = stream
        self.fmt = fmt

    def write(self, kind: str, payload: Dict[str, Any]) -> None:
        logger.debug(f"Writing {kind} report as {self.fmt}")
        if self.fmt == "json":
            self.stream.write(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
            return
        header, rows = _TABLES[kind](payload)
        writer = csv.writer(self.stream, delimiter="\t", lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _cell(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    if value is None:
        return ""
    return str(value)


def _element_cell(element: Dict[str, Any]) -> str:
    u = "*".join(element["u"]) or "e"
    return f"t^({_cell(element['lambda'])})·{u}"


def _element_table(payload):
    header = ["element", "length", "nu", "kappa", "basic"]
    return header, [[_element_cell(payload["element"]), payload["length"], _cell(payload["nu"]),
                     _cell(payload["kappa"]), payload["basic"]]]


def _class_table(payload):
    header = ["element", "nu", "kappa", "poly", "dimension"]
    element = _element_cell(payload["element"])
    rows = [[element, _cell(c["nu"]), _cell(c["kappa"]), c["poly"], _cell(c.get("dimension"))]
            for c in payload["classes"]]
    return header, rows


def _alcove_table(payload):
    header = ["element", "J", "w", "trivial", "alcove", "x_tilde", "condition_a", "failing_roots"]
    element = _element_cell(payload["element"])
    rows = [[element, _cell(p["J"]), _cell(p["w"]) or "e", p["trivial"], p["alcove"], _element_cell(p["x_tilde"]),
             p["condition_a"], _cell(p["failing_roots"])]
            for p in payload["pairs"]]
    return header, rows


def _verify_table(payload):
    header = ["check", "pass", "counterexamples", "counters"]
    rows: List[Sequence[Any]] = [[c["name"], c["pass"], len(c["counterexamples"]), _cell(c["counters"])]
                                 for c in payload["checks"]]
    return header, rows


_TABLES = {
    "element": _element_table,
    "bgx": _class_table,
    "classpoly": _class_table,
    "alcoves": _alcove_table,
    "verify": _verify_table,
}
