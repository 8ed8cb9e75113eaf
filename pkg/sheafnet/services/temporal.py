"""
Time-dependent link complexes and n-term grouping sheaves.

Vertices of a time complex are (node, t) pairs over a finite window [t0, t1].
Timeslices are link complexes; consecutive slices are joined only by the temporal
edges {(n, t), (n, t+1)} of each node's own thread.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Optional, Union

import networkx as nx
import sympy

from sheafnet.core.errors import InvalidValue, OutOfWindow
from sheafnet.models.cell import Cell, SimplicialComplex
from sheafnet.models.network import NetworkDescription, NodeId
from sheafnet.models.sheaf import SetSheaf
from sheafnet.models.vector_sheaf import VectorSheaf
from sheafnet.services.complex import clique_complex, from_maximal_cells, subcomplex_on
from sheafnet.services.netmodel import link_graph
from sheafnet.services.sheaflin import global_section_space

logger = logging.getLogger(__name__)

Window = tuple[int, int]


def _check_window(window: Window) -> Window:
    t0, t1 = window
    if t1 < t0:
        raise OutOfWindow("window is empty", {"window": window})
    return (int(t0), int(t1))


@dataclass(frozen=True)
class TimeComplex:
    window: Window
    nodes: tuple[NodeId, ...]
    complex: SimplicialComplex

    @property
    def times(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    @property
    def temporal_edges(self) -> list[Cell]:
        return [self.temporal_edge(n, t) for t in self.times[:-1] for n in self.nodes]

    def temporal_edge(self, node: NodeId, t: int) -> Cell:
        """The edge {(node, t), (node, t+1)}."""
        self.require_time(t)
        self.require_time(t + 1)
        return Cell(((node, t), (node, t + 1)))

    def vertex(self, node: NodeId, t: int) -> Cell:
        self.require_time(t)
        return Cell(((node, t),))

    def is_temporal(self, cell: Cell) -> bool:
        return cell.dim == 1 and cell.vertices[0][0] == cell.vertices[1][0]

    def slice_cells(self, t: int) -> list[Cell]:
        """Cells of the complex lying entirely in timeslice t, in cochain order."""
        self.require_time(t)
        return [c for c in self.complex.sorted_cells() if all(v[1] == t for v in c.vertices)]

    def require_time(self, t: int) -> None:
        if not self.window[0] <= t <= self.window[1]:
            raise OutOfWindow("time outside window", {"t": t, "window": self.window})


def time_dependent_link_complex(net: NetworkDescription, window: Window) -> TimeComplex:
    """Clique complex of the time-dependent link graph over the window."""
    t0, t1 = _check_window(window)
    graph = nx.Graph()
    for t in range(t0, t1 + 1):
        sliced = link_graph(net, t)
        graph.add_nodes_from((n, t) for n in sliced.nodes)
        graph.add_edges_from(((u, t), (v, t)) for u, v in sliced.edges)
        if t < t1:
            graph.add_edges_from(((n, t), (n, t + 1)) for n in net.nodes)
    tc = TimeComplex(window=(t0, t1), nodes=tuple(net.nodes), complex=clique_complex(graph))
    logger.info(
        "time_dependent_link_complex window=%s: vertices=%s cells=%s temporal_edges=%s",
        tc.window,
        graph.number_of_nodes(),
        len(tc.complex),
        len(tc.temporal_edges),
    )
    return tc


def relabel_to_nodes(cell: Cell) -> Cell:
    """Drop the time coordinate of a single-slice cell."""
    return Cell(tuple(v[0] for v in cell.vertices))


def timeslice(tc: TimeComplex, t: int) -> SimplicialComplex:
    """Maximal subcomplex on N × {t}, relabeled to node ids."""
    tc.require_time(t)
    sliced = subcomplex_on(tc.complex, ((n, t) for n in tc.nodes))
    return SimplicialComplex(relabel_to_nodes(c) for c in sliced.cells)


@dataclass(frozen=True)
class RationalSpace:
    """The vector space Q^dim used as a grouping alphabet."""

    dim: int


Alphabet = Union[tuple, RationalSpace]


@dataclass(frozen=True)
class GroupingSheaf:
    """
    The n-term grouping sheaf over the path complex on the window.

    Vertex stalks A^n, edge stalks A^(n-1). Toward the edge (t, t+1) the left vertex
    restricts by σ₊ (drop the last component) and the right vertex by σ₋ (drop the
    first), so a section is a sliding window over one A-sequence.
    """

    depth: int
    alphabet: Alphabet
    window: Window

    @property
    def base(self) -> SimplicialComplex:
        t0, t1 = self.window
        if t0 == t1:
            return from_maximal_cells([[t0]])
        return from_maximal_cells([[t, t + 1] for t in range(t0, t1)])

    @property
    def is_finite(self) -> bool:
        return not isinstance(self.alphabet, RationalSpace)

    def restrict(self, c: Cell, d: Cell, value: tuple) -> tuple:
        if c == d:
            return value
        if c.vertices[0] == d.vertices[0]:
            return sigma_plus(value)
        return sigma_minus(value)

    def as_set_sheaf(self) -> SetSheaf:
        if not self.is_finite:
            raise InvalidValue("set sheaf needs a finite alphabet")
        X = self.base
        vertex_stalk = frozenset(product(self.alphabet, repeat=self.depth))
        edge_stalk = frozenset(product(self.alphabet, repeat=self.depth - 1))
        stalks = {c: vertex_stalk if c.dim == 0 else edge_stalk for c in X.cells}
        return SetSheaf(X, stalks, self.restrict)

    def as_vector_sheaf(self) -> VectorSheaf:
        if self.is_finite:
            raise InvalidValue("vector sheaf needs a RationalSpace alphabet")
        k, n = self.alphabet.dim, self.depth
        X = self.base
        dims = {c: n * k if c.dim == 0 else (n - 1) * k for c in X.cells}
        keep = (n - 1) * k
        restrictions = {}
        for c in X.cells_of_dim(0):
            for d in X.cofaces(c):
                matrix = sympy.zeros(keep, n * k)
                # left endpoint keeps the first n-1 blocks, right endpoint the last n-1
                shift = 0 if c.vertices[0] == d.vertices[0] else k
                for i in range(keep):
                    matrix[i, i + shift] = 1
                restrictions[(c, d)] = matrix
        return VectorSheaf(X, dims, restrictions)


def sigma_minus(x: tuple) -> tuple:
    """(x1, ..., xn) ↦ (x2, ..., xn)"""
    return tuple(x[1:])


def sigma_plus(x: tuple) -> tuple:
    """(x1, ..., xn) ↦ (x1, ..., x(n-1))"""
    return tuple(x[:-1])


def grouping_sheaf(n: int, A: Alphabet, window: Window) -> GroupingSheaf:
    if n < 1:
        raise InvalidValue("grouping depth must be at least 1", {"depth": n})
    if not isinstance(A, RationalSpace):
        A = tuple(A)
    return GroupingSheaf(depth=n, alphabet=A, window=_check_window(window))


def grouping_sections(gs: GroupingSheaf, m: Optional[int] = None) -> Union[int, list[sympy.Matrix]]:
    """
    Sections over a window of m vertices (default: the sheaf's own window).

    Finite alphabets give a count, computed by chaining compatible vertex values
    along the path; RationalSpace alphabets give a basis of H^0.
    """
    if m is not None:
        if m < 1:
            raise InvalidValue("window needs at least one vertex", {"m": m})
        gs = GroupingSheaf(gs.depth, gs.alphabet, (gs.window[0], gs.window[0] + m - 1))
    if not gs.is_finite:
        return global_section_space(gs.as_vector_sheaf())
    values = list(product(gs.alphabet, repeat=gs.depth))
    counts = {v: 1 for v in values}
    for _ in range(gs.window[1] - gs.window[0]):
        by_overlap: dict[tuple, int] = {}
        for v, count in counts.items():
            by_overlap[sigma_plus(v)] = by_overlap.get(sigma_plus(v), 0) + count
        counts = {w: by_overlap.get(sigma_minus(w), 0) for w in values}
    return sum(counts.values())


def sections_from_sequence(gs: GroupingSheaf, sequence: list[Any]) -> dict[Cell, tuple]:
    """
    The section whose vertex t holds the window of length n read newest-first.

    sequence lists the alphabet values in arrival order; it must have m + n − 1 entries.
    """
    t0, t1 = gs.window
    m, n = t1 - t0 + 1, gs.depth
    if len(sequence) != m + n - 1:
        raise InvalidValue("sequence length must be m + n - 1", {"expected": m + n - 1, "got": len(sequence)})
    values: dict[Cell, tuple] = {}
    for offset, t in enumerate(range(t0, t1 + 1)):
        window = sequence[offset : offset + n]
        values[Cell((t,))] = tuple(reversed(window))
    for t in range(t0, t1):
        values[Cell((t, t + 1))] = sigma_plus(values[Cell((t,))])
    return values
