"""
The activation sheaf over a link complex.

A stalk lists the nodes that share a coface with the cell, plus ⊥. Global sections
are exactly the interference-free sets of simultaneous transmitters: a transmitter n
occupies the closure of its star (its active region) and every other cell is ⊥.
"""

import logging
from dataclasses import dataclass
from typing import Any, Iterable, Optional

import networkx as nx

from sheafnet.core.config import settings
from sheafnet.core.errors import EmptyActiveRegion, EnumerationTooLarge, NotAFacet, NotASection
from sheafnet.models.cell import Cell, SimplicialComplex
from sheafnet.models.sheaf import BOTTOM, Section, SetSheaf
from sheafnet.services.complex import closure, facets, star

logger = logging.getLogger(__name__)


def activation_stalks(X: SimplicialComplex) -> dict[Cell, frozenset]:
    """Per cell, the nodes having a coface in common with it, plus ⊥."""
    stalks: dict[Cell, frozenset] = {}
    for cell in X.sorted_cells():
        nodes = set()
        for d in X.upward_closure(cell):
            nodes.update(d.vertices)
        stalks[cell] = frozenset(nodes) | {BOTTOM}
    return stalks


def activation_sheaf(X: SimplicialComplex) -> SetSheaf:
    stalks = activation_stalks(X)

    def restrict(c: Cell, d: Cell, n: Any) -> Any:
        if n is BOTTOM:
            return BOTTOM
        return n if n in stalks[d] else BOTTOM

    sheaf = SetSheaf(X, stalks, restrict)
    logger.debug("activation_sheaf: cells=%s", len(X))
    return sheaf


def is_global_section(sheaf: SetSheaf, s: Section) -> bool:
    """
    True iff s satisfies every restriction.

    Raises:
        NotASection: s is not total on the base complex.
        InvalidValue: some value lies outside its stalk.
    """
    if not s.is_total_on(sheaf.base):
        missing = sorted(sheaf.base.cells - s.support_cells)
        raise NotASection("assignment is not total", {"missing": repr(missing[0])})
    return sheaf.is_section(s)


def _require_global(sheaf: SetSheaf, s: Section) -> None:
    if not is_global_section(sheaf, s):
        c, d = next(sheaf.violations(s))
        raise NotASection("assignment is not a global section", {"face": repr(c), "coface": repr(d)})


def active_cells(X: SimplicialComplex, n: Any) -> set[Cell]:
    """cl st n: the cells a transmission from n occupies."""
    return closure(X, star(X, [Cell((n,))]))


def section_from_transmitters(sheaf: SetSheaf, transmitters: Iterable[Any]) -> Optional[Section]:
    """
    The assignment s(c) = n on cl st n for each transmitter n, ⊥ elsewhere.

    Returns None when two transmitters claim the same cell or the assignment is not
    a global section.
    """
    X = sheaf.base
    values: dict[Cell, Any] = {c: BOTTOM for c in X.cells}
    claimed: set[Cell] = set()
    for n in transmitters:
        region = active_cells(X, n)
        if region & claimed:
            return None
        claimed |= region
        for c in region:
            values[c] = n
    section = Section(values)
    return section if sheaf.is_section(section) else None


def transmitters(s: Section) -> list[Any]:
    """Nodes n with s([n]) = n, sorted."""
    return sorted(c.vertices[0] for c, v in s.values.items() if c.dim == 0 and v is not BOTTOM and v == c.vertices[0])


def conflict_graph(sheaf: SetSheaf) -> nx.Graph:
    """
    Nodes joined when they cannot transmit together.

    n and m conflict iff the star over n's active region meets m's active region.
    Validity of a transmitter set is pairwise, so global sections correspond to
    independent sets of this graph.
    """
    X = sheaf.base
    nodes = X.vertices
    regions = {n: active_cells(X, n) for n in nodes}
    influence = {n: star(X, regions[n]) for n in nodes}
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    for i, n in enumerate(nodes):
        for m in nodes[i + 1 :]:
            if influence[n] & regions[m] or influence[m] & regions[n]:
                graph.add_edge(n, m)
    return graph


def _compatibility_graph(sheaf: SetSheaf) -> nx.Graph:
    """Complement of the conflict graph: its cliques are the interference-free transmitter sets."""
    nodes = sheaf.base.vertices
    if len(nodes) > settings.max_enumeration_nodes:
        raise EnumerationTooLarge(
            "too many nodes for transmitter-set enumeration",
            {"nodes": len(nodes), "limit": settings.max_enumeration_nodes},
        )
    return nx.complement(conflict_graph(sheaf))


def enumerate_global_sections(sheaf: SetSheaf) -> list[Section]:
    """
    All global sections, one per interference-free transmitter set.

    Ordered lexicographically by the sorted transmitter tuple, so the empty section
    comes first.
    """
    compatible = _compatibility_graph(sheaf)
    sets = sorted([()] + [tuple(sorted(c)) for c in nx.enumerate_all_cliques(compatible)])
    sections = []
    for transmitter_set in sets:
        section = section_from_transmitters(sheaf, transmitter_set)
        if section is None:
            logger.warning("independent transmitter set %s did not yield a section", transmitter_set)
            continue
        sections.append(section)
    logger.info("enumerate_global_sections: nodes=%s sections=%s", compatible.number_of_nodes(), len(sections))
    return sections


def maximal_transmitter_sets(sheaf: SetSheaf) -> list[tuple[Any, ...]]:
    """Inclusion-maximal interference-free transmitter sets, sorted."""
    compatible = _compatibility_graph(sheaf)
    if compatible.number_of_nodes() == 0:
        return [()]
    return sorted(tuple(sorted(c)) for c in nx.find_cliques(compatible))


def active_region(sheaf: SetSheaf, s: Section, n: Any) -> set[Cell]:
    """Cells currently waiting on n to finish transmitting: {a : s(a) = n}."""
    _require_global(sheaf, s)
    return {c for c, v in s.values.items() if v is not BOTTOM and v == n}


def region_of_influence_node(sheaf: SetSheaf, s: Section, n: Any) -> set[Cell]:
    """Star over the active region of n."""
    region = active_region(sheaf, s, n)
    if not region:
        raise EmptyActiveRegion("node is not transmitting in this section", {"node": n})
    return star(sheaf.base, region)


def region_of_influence_facet(X: SimplicialComplex, f: Cell) -> set[Cell]:
    """Star over the closure of a facet."""
    if f not in X or X.cofaces(f):
        raise NotAFacet("cell is not a facet", {"cell": repr(f)})
    return star(X, closure(X, [f]))


def support(s: Section) -> set[Cell]:
    return {c for c, v in s.values.items() if v is not BOTTOM}


def facet_roi_union(X: SimplicialComplex, n: Any) -> set[Cell]:
    """Union of the facet regions of influence over the facets containing n."""
    result: set[Cell] = set()
    for f in facets(X):
        if n in f.vertices:
            result |= region_of_influence_facet(X, f)
    return result


def check_roi_union(sheaf: SetSheaf, n: Any) -> Optional[set[Cell]]:
    """
    Compare the region of influence of n with the union of its facets' regions.

    Returns the symmetric difference when they disagree, None when they match.
    """
    section = section_from_transmitters(sheaf, [n])
    if section is None:
        raise NotASection("single transmitter does not form a section", {"node": n})
    roi = region_of_influence_node(sheaf, section, n)
    union = facet_roi_union(sheaf.base, n)
    if roi == union:
        return None
    diff = roi ^ union
    logger.warning("region of influence of %s differs from facet union on %s cells", n, len(diff))
    return diff


@dataclass(frozen=True)
class Extension:
    """Outcome of extending a partial activation assignment."""

    section: Optional[Section]
    blank: Optional[Cell] = None


def _locally_blank(sheaf: SetSheaf, partial: Section, cell: Cell) -> bool:
    X = sheaf.base
    assigned_faces = [b for b in closure(X, [cell]) if b != cell and b in partial]
    assigned_cofaces = [d for d in X.upward_closure(cell) if d != cell and d in partial]
    for value in sheaf.stalk(cell):
        if all(sheaf.restrict(b, cell, partial[b]) == value for b in assigned_faces) and all(
            sheaf.restrict(cell, d, value) == partial[d] for d in assigned_cofaces
        ):
            return False
    return True


def extend_partial_section(sheaf: SetSheaf, partial: Section) -> Extension:
    """
    Extend a partial assignment to a global section.

    Global sections are determined by their transmitter sets, so the only candidate is
    the section of the nodes appearing in the partial assignment. On failure the
    blank cell is the first unassigned cell whose stalk has no value consistent with
    its assigned neighbours; failing that, the first cell where two transmissions
    collide; failing that, the first assigned cell that disagrees with the candidate.
    """
    X = sheaf.base
    for cell, value in partial.items():
        sheaf.check_value(cell, value)
    nodes = sorted({v for v in partial.values.values() if v is not BOTTOM})
    candidate = section_from_transmitters(sheaf, nodes)
    if candidate is not None and all(candidate[c] == v for c, v in partial.items()):
        return Extension(section=candidate)

    for cell in X.sorted_cells():
        if cell not in partial and _locally_blank(sheaf, partial, cell):
            return Extension(section=None, blank=cell)

    collisions: set[Cell] = set()
    for i, n in enumerate(nodes):
        for m in nodes[i + 1 :]:
            n_region, m_region = active_cells(X, n), active_cells(X, m)
            collisions |= star(X, n_region) & m_region
            collisions |= star(X, m_region) & n_region
    if collisions:
        return Extension(section=None, blank=min(collisions))

    if candidate is not None:
        for cell, value in partial.items():
            if candidate[cell] != value:
                return Extension(section=None, blank=cell)
    return Extension(section=None, blank=min(partial.support_cells) if len(partial) else None)
