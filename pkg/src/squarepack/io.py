"""JSON documents for packings and certificates, and SVG figures.

Rationals cross the file boundary as strings such as "10/3", never as JSON
numbers.
"""
from __future__ import annotations

import json
import re
import xml.etree.ElementTree as ET
from decimal import Decimal, localcontext
from fractions import Fraction

from .bounds import BoundCertificate, BoundStep, Hop
from .geometry import Packing, Square, side_sum

FORMAT_VERSION = 1
_RATIONAL = re.compile(r"-?\d+(/\d+)?")


class DocumentError(ValueError):
    """A document that does not parse; the message names the offending field."""


def format_rational(q: Fraction) -> str:
    return str(q)


def parse_rational(text, where: str = "value") -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text):
        raise DocumentError(f"{where}: not a rational string: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise DocumentError(f"{where}: zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _load(text: str, kind: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError(f"top level: expected a {kind} object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise DocumentError(f"format_version: unsupported value {version!r}")
    return doc


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"{where}: missing field {key!r}")
    return obj[key]


def _int_field(obj: dict, key: str, where: str) -> int:
    v = _field(obj, key, where)
    if not isinstance(v, int) or isinstance(v, bool):
        raise DocumentError(f"{where}.{key}: expected an integer, got {v!r}")
    return v


# ---------------------------------------------------------------- packings

def packing_to_dict(p: Packing) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "label": p.label,
        "count": len(p),
        "side_sum": format_rational(side_sum(p)),
        "squares": [
            {"x": format_rational(s.x), "y": format_rational(s.y), "side": format_rational(s.side)}
            for s in p
        ],
    }


def dumps_packing(p: Packing) -> str:
    return _dump(packing_to_dict(p))


def loads_packing(text: str) -> Packing:
    doc = _load(text, "packing")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise DocumentError("label: expected a string")
    raw = _field(doc, "squares", "top level")
    if not isinstance(raw, list):
        raise DocumentError("squares: expected a list")
    squares = []
    for i, entry in enumerate(raw):
        where = f"squares[{i}]"
        vals = [parse_rational(_field(entry, key, where), f"{where}.{key}") for key in ("x", "y", "side")]
        squares.append(Square(*vals))
    p = Packing(tuple(squares), label)
    if "count" in doc and doc["count"] != len(squares):
        raise DocumentError(f"count: says {doc['count']!r} but {len(squares)} squares are listed")
    if "side_sum" in doc:
        stated = parse_rational(doc["side_sum"], "side_sum")
        if stated != side_sum(p):
            raise DocumentError(f"side_sum: says {stated} but the squares sum to {side_sum(p)}")
    return p


# ---------------------------------------------------------------- certificates

def _step_to_dict(st: BoundStep) -> dict:
    return {
        "n": st.n, "a": st.a, "b": st.b, "premise_n": st.premise_n,
        "premise_value": format_rational(st.premise_value),
        "resulting_bound": format_rational(st.resulting_bound),
    }


def certificate_to_dict(cert: BoundCertificate) -> dict:
    hops, first = [], 0
    for h in cert.hops:
        hops.append({
            "target": [h.k, h.c],
            "premise": h.premise,
            "direction": h.direction.value,
            "first_step": first,
            "step_count": len(h.steps),
            "witness": [[b, format_rational(v)] for b, v in h.witness],
            "limit_claim": format_rational(h.limit_claim),
        })
        first += len(h.steps)
    return {
        "format_version": FORMAT_VERSION,
        "target": list(cert.target),
        "assumed_premise": cert.premise,
        "final_bound": format_rational(cert.final_bound),
        "limit_claim": None if cert.limit_claim is None else format_rational(cert.limit_claim),
        "steps": [_step_to_dict(st) for st in cert.steps],
        "hops": hops,
    }


def dumps_certificate(cert: BoundCertificate) -> str:
    return _dump(certificate_to_dict(cert))


def _pair(v, where: str) -> tuple[int, int]:
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(t, int) for t in v)):
        raise DocumentError(f"{where}: expected [k, c]")
    return v[0], v[1]


def loads_certificate(text: str) -> BoundCertificate:
    doc = _load(text, "certificate")
    target = _pair(_field(doc, "target", "top level"), "target")
    premise = _int_field(doc, "assumed_premise", "top level")
    final = parse_rational(_field(doc, "final_bound", "top level"), "final_bound")
    lc = doc.get("limit_claim")
    limit = None if lc is None else parse_rational(lc, "limit_claim")

    steps = []
    for i, entry in enumerate(_field(doc, "steps", "top level")):
        where = f"steps[{i}]"
        steps.append(BoundStep(
            *(_int_field(entry, key, where) for key in ("n", "a", "b", "premise_n")),
            parse_rational(_field(entry, "premise_value", where), f"{where}.premise_value"),
            parse_rational(_field(entry, "resulting_bound", where), f"{where}.resulting_bound"),
        ))
    hops, cursor = [], 0
    for i, entry in enumerate(doc.get("hops", [])):
        where = f"hops[{i}]"
        k, c = _pair(_field(entry, "target", where), f"{where}.target")
        first = _int_field(entry, "first_step", where)
        count = _int_field(entry, "step_count", where)
        if first != cursor or first + count > len(steps):
            raise DocumentError(f"{where}: step range {first}+{count} does not tile the step list")
        cursor = first + count
        witness = []
        for j, w in enumerate(_field(entry, "witness", where)):
            if not (isinstance(w, list) and len(w) == 2 and isinstance(w[0], int)):
                raise DocumentError(f"{where}.witness[{j}]: expected [b, bound]")
            witness.append((w[0], parse_rational(w[1], f"{where}.witness[{j}]")))
        hops.append(Hop(
            k, c, _int_field(entry, "premise", where), tuple(steps[first:cursor]), tuple(witness),
            parse_rational(_field(entry, "limit_claim", where), f"{where}.limit_claim"),
        ))
    if cursor != len(steps):
        raise DocumentError("steps: some steps belong to no hop")
    return BoundCertificate(target, premise, tuple(hops), final, limit)


# ---------------------------------------------------------------- SVG

VIEW = 1000
SVG_DIGITS = 16


def decimal_text(q: Fraction, digits: int = SVG_DIGITS) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(q.numerator) / Decimal(q.denominator)
        return format(d.normalize(), "f") if d else "0"


def packing_svg(p: Packing, stroke: float = 1.0) -> str:
    """SVG of the packing in a 1000x1000 view box, origin at the bottom left."""
    root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                      width=f"{VIEW}", height=f"{VIEW}", viewBox=f"0 0 {VIEW} {VIEW}")
    if p.label:
        ET.SubElement(root, "title").text = p.label
    ET.SubElement(root, "rect", {"class": "container", "x": "0", "y": "0", "width": str(VIEW),
                                 "height": str(VIEW), "fill": "none", "stroke": "black",
                                 "stroke-width": str(stroke)})
    group = ET.SubElement(root, "g", {"fill": "#9ecae1", "stroke": "#08519c", "stroke-width": str(stroke)})
    for s in p:
        ET.SubElement(group, "rect", {
            "class": "square",
            "x": decimal_text(VIEW * s.x),
            "y": decimal_text(VIEW * (1 - s.y - s.side)),
            "width": decimal_text(VIEW * s.side),
            "height": decimal_text(VIEW * s.side),
        })
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
