"""Cells and abstract simplicial complexes.

Vertices are opaque sortable ids: node ids (int or str) for link complexes,
(node, t) tuples for time-dependent complexes. A cell stores its vertices in
sorted order, which fixes the orientation used for incidence signs.
"""

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Hashable, Iterable, Iterator, Optional

from sheafnet.core.errors import InvalidCell, UnknownCell

Vertex = Hashable


@dataclass(frozen=True)
class Cell:
    vertices: tuple[Any, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise InvalidCell("cell must have at least one vertex")
        for left, right in zip(self.vertices, self.vertices[1:]):
            if left == right:
                raise InvalidCell("duplicate vertex in cell", {"vertex": left})
            if not left < right:
                raise InvalidCell("cell vertices must be strictly increasing", {"vertices": self.vertices})

    @classmethod
    def of(cls, vertices: Iterable[Vertex]) -> "Cell":
        """Build a cell from vertices in any order; duplicates are rejected."""
        items = list(vertices)
        if len(set(items)) != len(items):
            dupes = sorted({v for v in items if items.count(v) > 1})
            raise InvalidCell("duplicate vertices within one cell", {"vertices": dupes})
        return cls(tuple(sorted(items)))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def boundary_faces(self) -> list["Cell"]:
        """Codimension-1 faces, ordered by the index of the dropped vertex."""
        if self.dim == 0:
            return []
        return [
            Cell(self.vertices[:j] + self.vertices[j + 1 :])
            for j in range(len(self.vertices))
        ]

    def all_faces(self) -> list["Cell"]:
        """Every nonempty face, the cell itself included."""
        return [
            Cell(sub)
            for k in range(1, len(self.vertices) + 1)
            for sub in combinations(self.vertices, k)
        ]

    def is_face_of(self, other: "Cell") -> bool:
        """Reflexive face relation: a cell is a face of itself."""
        return self.vertex_set <= other.vertex_set

    def sort_key(self) -> tuple[int, tuple[Any, ...]]:
        return (self.dim, self.vertices)

    def __lt__(self, other: "Cell") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return "[" + ",".join(str(v) for v in self.vertices) + "]"


class SimplicialComplex:
    """An immutable abstract simplicial complex with face and coface indices.

    The constructor checks closure under taking subsets; use
    services.complex.from_maximal_cells to close a family of cells first.
    """

    __slots__ = ("_cells", "_faces", "_cofaces", "_sorted")

    def __init__(self, cells: Iterable[Cell]):
        cell_set = frozenset(cells)
        faces: dict[Cell, tuple[Cell, ...]] = {}
        cofaces: dict[Cell, list[Cell]] = defaultdict(list)
        for cell in cell_set:
            bfaces = cell.boundary_faces()
            for face in bfaces:
                if face not in cell_set:
                    raise InvalidCell(
                        "cells are not closed under taking subsets",
                        {"cell": repr(cell), "missing_face": repr(face)},
                    )
                cofaces[face].append(cell)
            faces[cell] = tuple(bfaces)
        self._cells = cell_set
        self._faces = faces
        self._cofaces = {c: tuple(sorted(cofaces.get(c, ()))) for c in cell_set}
        self._sorted = tuple(sorted(cell_set))

    @property
    def cells(self) -> frozenset:
        return self._cells

    def sorted_cells(self) -> tuple[Cell, ...]:
        """Cells ordered by dimension, then lexicographically by vertex list."""
        return self._sorted

    def cells_of_dim(self, k: int) -> list[Cell]:
        return [c for c in self._sorted if c.dim == k]

    @property
    def dimension(self) -> int:
        return max((c.dim for c in self._cells), default=-1)

    @property
    def vertices(self) -> list[Any]:
        return [c.vertices[0] for c in self.cells_of_dim(0)]

    def faces(self, cell: Cell) -> tuple[Cell, ...]:
        """Codimension-1 faces of a cell."""
        self.require(cell)
        return self._faces[cell]

    def cofaces(self, cell: Cell) -> tuple[Cell, ...]:
        """Codimension-1 cofaces of a cell."""
        self.require(cell)
        return self._cofaces[cell]

    def upward_closure(self, cell: Cell) -> set[Cell]:
        """All cells having `cell` as a face, `cell` included."""
        self.require(cell)
        seen = {cell}
        frontier = [cell]
        while frontier:
            current = frontier.pop()
            for up in self._cofaces[current]:
                if up not in seen:
                    seen.add(up)
                    frontier.append(up)
        return seen

    def require(self, cell: Cell, name: Optional[str] = None) -> None:
        if cell not in self._cells:
            raise UnknownCell("cell is not in the complex", {name or "cell": repr(cell)})

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self._cells)

    def __contains__(self, cell: object) -> bool:
        return cell in self._cells

    def __iter__(self) -> Iterator[Cell]:
        return iter(self._sorted)

    def __len__(self) -> int:
        return len(self._cells)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplicialComplex) and self._cells == other._cells

    def __hash__(self) -> int:
        return hash(self._cells)

    def __repr__(self) -> str:
        return f"SimplicialComplex({list(self._sorted)!r})"
