#!/usr/bin/env python
"""
Agglom Formats
JSON, text and DOT renderings shared by the CLI.
"""

import json
from fractions import Fraction

try:
    from . import config
except ImportError:
    import config


def fraction_to_str(value) -> str:
    """Exact rational as "p/q" in lowest terms, sign on p ("2/1" for integers)."""
    value = Fraction(value)
    return "%d/%d" % (value.numerator, value.denominator)


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def dumps(doc) -> str:
    """Byte-stable JSON; compact unless JSON_INDENT is set."""
    if config.JSON_INDENT is None:
        return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(doc, indent=config.JSON_INDENT, ensure_ascii=False)


def render_text(doc, indent=0) -> str:
    """Plain key: value rendering for --format text."""
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for key, value in doc.items():
            if isinstance(value, (dict, list)) and value:
                lines.append("%s%s:" % (pad, key))
                lines.append(render_text(value, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, key, _scalar(value)))
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, (dict, list)):
                lines.append("%s-" % pad)
                lines.append(render_text(item, indent + 1))
            else:
                lines.append("%s- %s" % (pad, _scalar(item)))
    else:
        lines.append(pad + _scalar(doc))
    return "\n".join(lines)


def _scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, (dict, list)):
        return "{}" if isinstance(value, dict) else "[]"
    return str(value)


def _quote(name: str) -> str:
    return '"%s"' % name.replace("\\", "\\\\").replace('"', '\\"')


def graph_to_dot(g, weights=None, name="G") -> str:
    """
    DOT source for a multigraph, optionally labelled with agglomeration weights.

    Args:
        g: Multigraph
        weights: optional mapping identifier -> int; zero-weight items are drawn dashed
        name: graph name in the DOT header

    Returns:
        str: an undirected DOT graph
    """
    lines = ["graph %s {" % _quote(name)]
    for v in g.vertices:
        if weights is None:
            lines.append("  %s;" % _quote(v))
        else:
            w = weights.get(v, 0)
            style = "" if w else ", style=dashed"
            lines.append("  %s [label=%s%s];" % (_quote(v), _quote("%s: %d" % (v, w)), style))
    for e, (u, v) in zip(g.edges, g.ends):
        if weights is None:
            lines.append("  %s -- %s [label=%s];" % (_quote(u), _quote(v), _quote(e)))
        else:
            w = weights.get(e, 0)
            style = "" if w else ", style=dashed"
            lines.append("  %s -- %s [label=%s%s];" % (_quote(u), _quote(v), _quote("%s: %d" % (e, w)), style))
    lines.append("}")
    return "\n".join(lines) + "\n"
