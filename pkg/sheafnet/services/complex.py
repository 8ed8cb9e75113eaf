"""Abstract simplicial complex operations: closure, star, facets, clique complexes, incidence signs."""

import logging
from typing import Any, Iterable

import networkx as nx

from sheafnet.core.errors import InvalidCell, InvalidIncidence
from sheafnet.models.cell import Cell, SimplicialComplex

logger = logging.getLogger(__name__)


def from_maximal_cells(maximal: Iterable[Iterable[Any]]) -> SimplicialComplex:
    """
    Smallest complex containing every given vertex set.

    Raises:
        InvalidCell: a vertex set is empty or repeats a vertex.
    """
    cells: set[Cell] = set()
    for vertex_set in maximal:
        top = Cell.of(vertex_set)
        if top in cells:
            continue
        cells.update(top.all_faces())
    return SimplicialComplex(cells)


def build_graph(vertices: Iterable[Any], edges: Iterable[tuple[Any, Any]]) -> nx.Graph:
    """Undirected graph on declared vertices; every edge endpoint must be declared."""
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    for u, v in edges:
        if u not in graph or v not in graph:
            raise InvalidCell("edge references an undeclared vertex", {"edge": (u, v)})
        if u == v:
            raise InvalidCell("self-loop is not a valid edge", {"vertex": u})
        graph.add_edge(u, v)
    return graph


def clique_complex(graph: nx.Graph) -> SimplicialComplex:
    """Complex containing a vertex set iff it is a clique of the graph."""
    maximal_cliques = list(nx.find_cliques(graph)) if graph.number_of_nodes() else []
    complex_ = from_maximal_cells(maximal_cliques)
    logger.debug(
        "clique_complex: vertices=%s maximal_cliques=%s cells=%s",
        graph.number_of_nodes(),
        len(maximal_cliques),
        len(complex_),
    )
    return complex_


def closure(X: SimplicialComplex, Y: Iterable[Cell]) -> set[Cell]:
    """Smallest subcomplex of X containing Y."""
    result: set[Cell] = set()
    for cell in Y:
        X.require(cell)
        if cell not in result:
            result.update(cell.all_faces())
    return result


def star(X: SimplicialComplex, Y: Iterable[Cell]) -> set[Cell]:
    """Cells of X having at least one face in Y (the face relation is reflexive)."""
    result: set[Cell] = set()
    for cell in Y:
        X.require(cell)
        if cell not in result:
            result |= X.upward_closure(cell)
    return result


def facets(X: SimplicialComplex) -> list[Cell]:
    """Cells without a proper coface, in cochain order."""
    return [c for c in X.sorted_cells() if not X.cofaces(c)]


def is_closed(X: SimplicialComplex, Y: Iterable[Cell]) -> bool:
    cells = set(Y)
    return closure(X, cells) == cells


def incidence_sign(a: Cell, b: Cell) -> int:
    """
    Orientation sign of the codimension-1 incidence a ⊂ b.

    Returns (-1)^j where j is the position in b's sorted vertex list of the vertex
    missing from a.

    Raises:
        InvalidIncidence: a is not a codimension-1 face of b.
    """
    if b.dim != a.dim + 1 or not a.is_face_of(b):
        raise InvalidIncidence("not a codimension-1 face", {"face": repr(a), "coface": repr(b)})
    (missing,) = b.vertex_set - a.vertex_set
    j = b.vertices.index(missing)
    return -1 if j % 2 else 1


def subcomplex_on(X: SimplicialComplex, vertices: Iterable[Any]) -> SimplicialComplex:
    """Maximal subcomplex of X whose vertices all lie in the given set."""
    keep = set(vertices)
    return SimplicialComplex(c for c in X.cells if c.vertex_set <= keep)


def connected_components(X: SimplicialComplex, cells: Iterable[Cell]) -> list[set[Cell]]:
    """
    Components of a set of cells, two cells being joined when one is a face of the other.

    Components are ordered by their smallest cell.
    """
    members = set(cells)
    graph = nx.Graph()
    graph.add_nodes_from(members)
    for cell in members:
        for face in X.faces(cell):
            if face in members:
                graph.add_edge(face, cell)
    components = [set(comp) for comp in nx.connected_components(graph)]
    return sorted(components, key=min)
