"""Graphviz DOT text for link complexes and time complexes."""

import logging
from typing import Any, Optional

from sheafnet.models.cell import Cell, SimplicialComplex
from sheafnet.models.sheaf import BOTTOM, Section
from sheafnet.services.temporal import TimeComplex

logger = logging.getLogger(__name__)

PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"]


def _vertex_id(v: Any) -> str:
    if isinstance(v, tuple):
        return f"{v[0]}@{v[1]}"
    return str(v)


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def _colors(section: Optional[Section]) -> dict[Any, str]:
    if section is None:
        return {}
    owners = sorted({_owner(v) for v in section.values.values()} - {BOTTOM}, key=repr)
    return {owner: PALETTE[i % len(PALETTE)] for i, owner in enumerate(owners)}


def _owner(value: Any) -> Any:
    """Node responsible for a stalk value: the value itself or its state component."""
    for attr in ("cur_state", "state"):
        if hasattr(value, attr):
            return getattr(value, attr)
    return value


def _cell_attrs(cell: Cell, section: Optional[Section], colors: dict[Any, str]) -> list[str]:
    if section is None or cell not in section:
        return []
    owner = _owner(section[cell])
    if owner is BOTTOM:
        return []
    return [f"color={_quote(colors[owner])}", "penwidth=2", f"xlabel={_quote(str(owner))}"]


def _body(X: SimplicialComplex, section: Optional[Section], temporal: Optional[TimeComplex] = None) -> list[str]:
    colors = _colors(section)
    lines = []
    for cell in X.cells_of_dim(0):
        attrs = _cell_attrs(cell, section, colors)
        if attrs:
            attrs.append("style=filled")
            attrs.append(f"fillcolor={_quote(colors[_owner(section[cell])])}")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(_vertex_id(cell.vertices[0]))}{suffix};")
    for cell in X.cells_of_dim(1):
        attrs = _cell_attrs(cell, section, colors)
        if temporal is not None and temporal.is_temporal(cell):
            attrs.append("style=dashed")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        a, b = (_quote(_vertex_id(v)) for v in cell.vertices)
        lines.append(f"  {a} -- {b}{suffix};")
    # higher cells become small hub nodes joined to their vertices
    for k in range(2, X.dimension + 1):
        for cell in X.cells_of_dim(k):
            hub = _quote("cell:" + ",".join(_vertex_id(v) for v in cell.vertices))
            attrs = ["shape=point", "width=0.08"] + _cell_attrs(cell, section, colors)
            lines.append(f"  {hub} [{', '.join(attrs)}];")
            for v in cell.vertices:
                lines.append(f"  {hub} -- {_quote(_vertex_id(v))} [style=dotted];")
    return lines


def complex_to_dot(X: SimplicialComplex, section: Optional[Section] = None, name: str = "complex") -> str:
    """
    Vertices and edges as a DOT graph, higher cells as hub points.

    When a section is given, each cell outside its ⊥-locus is colored by the node its
    value names, which draws active regions as colored patches.
    """
    lines = [f"graph {_quote(name)} {{", "  node [shape=circle];"]
    lines.extend(_body(X, section))
    lines.append("}")
    logger.debug("complex_to_dot: cells=%s overlay=%s", len(X), section is not None)
    return "\n".join(lines) + "\n"


def time_complex_to_dot(tc: TimeComplex, section: Optional[Section] = None, name: str = "time_complex") -> str:
    """One row per timeslice; temporal edges dashed."""
    lines = [f"graph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for t in tc.times:
        members = " ".join(_quote(_vertex_id((n, t))) for n in tc.nodes)
        lines.append(f"  subgraph {_quote(f'cluster_t{t}')} {{ label={_quote(f't={t}')}; {members}; }}")
    lines.extend(_body(tc.complex, section, temporal=tc))
    lines.append("}")
    return "\n".join(lines) + "\n"
