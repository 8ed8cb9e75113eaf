"""Sheaves of finite-dimensional rational vector spaces over a simplicial complex."""

from dataclasses import dataclass
from typing import Any, Mapping, Optional, Sequence

import sympy

from sheafnet.core.errors import InvalidIncidence, InvalidValue
from sheafnet.models.cell import Cell, SimplicialComplex


class VectorSheaf:
    """
    Stalk dimension per cell plus a restriction matrix per codimension-1 incidence.

    restrictions[(c, d)] is a dim(d) x dim(c) sympy Matrix with exact rational entries.
    Restrictions for longer incidences are composites along any chain of faces.
    """

    def __init__(
        self,
        base: SimplicialComplex,
        dims: Mapping[Cell, int],
        restrictions: Mapping[tuple[Cell, Cell], sympy.Matrix],
        basis_labels: Optional[Mapping[Cell, Sequence[Any]]] = None,
    ):
        self.base = base
        self.dims = {c: int(dims.get(c, 0)) for c in base.sorted_cells()}
        self.basis_labels = dict(basis_labels or {})
        self._restrictions: dict[tuple[Cell, Cell], sympy.Matrix] = {}
        for c in base.sorted_cells():
            for d in base.cofaces(c):
                matrix = restrictions.get((c, d))
                if matrix is None:
                    matrix = sympy.zeros(self.dims[d], self.dims[c])
                if matrix.shape != (self.dims[d], self.dims[c]):
                    raise InvalidValue(
                        "restriction matrix shape does not match stalk dimensions",
                        {"face": repr(c), "coface": repr(d), "shape": matrix.shape},
                    )
                self._restrictions[(c, d)] = matrix
        for c, labels in self.basis_labels.items():
            if len(labels) != self.dims.get(c, 0):
                raise InvalidValue("basis label count does not match stalk dimension", {"cell": repr(c)})

    def dim(self, cell: Cell) -> int:
        self.base.require(cell)
        return self.dims[cell]

    def restriction(self, c: Cell, d: Cell) -> sympy.Matrix:
        """Restriction matrix for any incidence c ⊂ d (identity when c == d)."""
        self.base.require(c)
        self.base.require(d)
        if c == d:
            return sympy.eye(self.dims[c])
        if not c.is_face_of(d):
            raise InvalidIncidence("not a face incidence", {"face": repr(c), "coface": repr(d)})
        if d.dim == c.dim + 1:
            return self._restrictions[(c, d)]
        # step up through the first coface of c that is still a face of d
        for middle in self.base.cofaces(c):
            if middle.is_face_of(d):
                return self.restriction(middle, d) * self._restrictions[(c, middle)]
        raise InvalidIncidence("no chain of faces", {"face": repr(c), "coface": repr(d)})

    def functoriality_violations(self) -> list[tuple[Cell, Cell]]:
        """Codimension-2 incidences whose composites differ along different middle cells."""
        bad = []
        for c in self.base.sorted_cells():
            for e in sorted(self.base.upward_closure(c)):
                if e.dim != c.dim + 2:
                    continue
                composites = [
                    self._restrictions[(m, e)] * self._restrictions[(c, m)]
                    for m in self.base.cofaces(c)
                    if m.is_face_of(e)
                ]
                if any(comp != composites[0] for comp in composites[1:]):
                    bad.append((c, e))
        return bad

    def total_dim(self, k: int) -> int:
        return sum(self.dims[c] for c in self.base.cells_of_dim(k))


@dataclass(frozen=True)
class CochainComplex:
    """C^k = direct sum of stalks over k-cells, with signed coboundary matrices."""

    spaces: tuple[int, ...]
    deltas: tuple[sympy.Matrix, ...]
