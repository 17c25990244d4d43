"""Graphviz output.

Graph edges become one arrow each.  An ultragraph edge gets one arrow per
listed range vertex, and a cofinite range adds a dotted arrow into a "⋯" node
standing for the unlisted remainder.
"""

from __future__ import annotations

from .structures import Graph


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g) -> str:
    lines = [f"digraph {_q(g.name)} {{", "  rankdir=LR;"]
    nat = g.universe.size is None
    names = sorted(g.labels) if nat else list(range(g.universe.size))
    extra = set()
    if not isinstance(g, Graph):
        for e in g.edges:
            extra.add(e.source)
            if not e.range.cofinite:
                extra.update(e.range.items)
    extra |= set(g.infinite) | set(g.frontier)
    for v in sorted(set(names) | extra):
        attrs = []
        if v in g.infinite:
            attrs.append("shape=doublecircle")
        if v in g.frontier:
            attrs.append("style=dashed")
        tail = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_q(g.label(v))}{tail};")
    for i, e in enumerate(g.edges):
        src = _q(g.label(e.source))
        if isinstance(g, Graph):
            lines.append(f"  {src} -> {_q(g.label(e.target))} [label={_q(e.name)}];")
            continue
        if e.range.cofinite:
            listed = [v for v in names if v in e.range]
            for v in listed:
                lines.append(f"  {src} -> {_q(g.label(v))} [label={_q(e.name)}];")
            rest = _q(f"rest_{e.name}")
            lines.append(f"  {rest} [label=\"⋯\", shape=plaintext];")
            lines.append(f"  {src} -> {rest} [label={_q(e.name)}, style=dotted];")
        else:
            for v in e.range.items:
                lines.append(f"  {src} -> {_q(g.label(v))} [label={_q(e.name)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
