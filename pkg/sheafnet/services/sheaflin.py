"""
Cellular sheaf cohomology over exact rationals.

Cochains are ordered by cell (dimension, then lexicographic vertex list) and within a
cell by stalk basis order. Ranks and kernels use sympy's exact arithmetic, so the
cohomology dimensions are exact integers with no tolerance.
"""

import logging
from typing import Any

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from sheafnet.models.cell import Cell, SimplicialComplex
from sheafnet.models.sheaf import BOTTOM
from sheafnet.models.vector_sheaf import CochainComplex, VectorSheaf
from sheafnet.services.activation import activation_stalks
from sheafnet.services.complex import incidence_sign

logger = logging.getLogger(__name__)


def _label_key(label: Any) -> tuple:
    return (type(label).__name__, label)


def vector_activation_sheaf(X: SimplicialComplex) -> VectorSheaf:
    """
    Stalk over c has basis 𝒜(c) without ⊥; restrictions are basis projections.

    The projection is well defined because 𝒜(d) ⊆ 𝒜(c) whenever c ⊂ d.
    """
    stalks = activation_stalks(X)
    labels = {c: sorted((n for n in stalks[c] if n is not BOTTOM), key=_label_key) for c in X.sorted_cells()}
    restrictions = {}
    for c in X.sorted_cells():
        for d in X.cofaces(c):
            matrix = sympy.zeros(len(labels[d]), len(labels[c]))
            column = {n: j for j, n in enumerate(labels[c])}
            for i, n in enumerate(labels[d]):
                matrix[i, column[n]] = 1
            restrictions[(c, d)] = matrix
    return VectorSheaf(X, {c: len(labels[c]) for c in labels}, restrictions, labels)


def constant_sheaf(X: SimplicialComplex, dim: int = 1) -> VectorSheaf:
    """Stalk Q^dim everywhere with identity restrictions."""
    restrictions = {(c, d): sympy.eye(dim) for c in X.sorted_cells() for d in X.cofaces(c)}
    return VectorSheaf(X, {c: dim for c in X.sorted_cells()}, restrictions)


def _offsets(sheaf: VectorSheaf, cells: list[Cell]) -> dict[Cell, int]:
    offsets, position = {}, 0
    for c in cells:
        offsets[c] = position
        position += sheaf.dims[c]
    return offsets


def coboundary(sheaf: VectorSheaf, k: int) -> sympy.Matrix:
    """
    Signed coboundary δ^k : C^k → C^(k+1).

    Block (d, c) is incidence_sign(c, d) times the restriction matrix for c ⊂ d.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    X = sheaf.base
    sources = X.cells_of_dim(k)
    targets = X.cells_of_dim(k + 1)
    col_offsets = _offsets(sheaf, sources)
    row_offsets = _offsets(sheaf, targets)
    delta = sympy.zeros(sheaf.total_dim(k + 1), sheaf.total_dim(k))
    for d in targets:
        for c in X.faces(d):
            block = incidence_sign(c, d) * sheaf.restriction(c, d)
            r0, c0 = row_offsets[d], col_offsets[c]
            for i in range(block.rows):
                for j in range(block.cols):
                    if block[i, j] != 0:
                        delta[r0 + i, c0 + j] = block[i, j]
    return delta


def cochain_complex(sheaf: VectorSheaf) -> CochainComplex:
    top = sheaf.base.dimension
    spaces = tuple(sheaf.total_dim(k) for k in range(top + 1))
    deltas = tuple(coboundary(sheaf, k) for k in range(top + 1))
    return CochainComplex(spaces=spaces, deltas=deltas)


def rank(matrix: sympy.Matrix) -> int:
    """Exact rank over the rationals."""
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return int(DomainMatrix.from_Matrix(matrix).convert_to(QQ).rank())


def kernel_basis(matrix: sympy.Matrix) -> list[sympy.Matrix]:
    """Basis of the null space as column vectors, exact."""
    if matrix.cols == 0:
        return []
    if matrix.rows == 0:
        return [sympy.eye(matrix.cols)[:, j] for j in range(matrix.cols)]
    return matrix.nullspace()


def cohomology_dims(sheaf: VectorSheaf) -> list[int]:
    """dim H^k = dim ker δ^k − rank δ^(k−1), for k = 0 .. dim X."""
    complex_ = cochain_complex(sheaf)
    ranks = [rank(delta) for delta in complex_.deltas]
    dims = []
    for k, space in enumerate(complex_.spaces):
        incoming = ranks[k - 1] if k > 0 else 0
        dims.append(space - ranks[k] - incoming)
    logger.info("cohomology_dims: spaces=%s ranks=%s H=%s", list(complex_.spaces), ranks, dims)
    return dims


def global_section_space(sheaf: VectorSheaf) -> list[sympy.Matrix]:
    """Basis of H^0 = ker δ^0, as 0-cochains."""
    if not sheaf.base.cells:
        return []
    return kernel_basis(coboundary(sheaf, 0))


def cochain_by_cell(sheaf: VectorSheaf, cochain: sympy.Matrix, k: int = 0) -> dict[Cell, list]:
    """Split a k-cochain into its per-cell stalk vectors."""
    cells = sheaf.base.cells_of_dim(k)
    offsets = _offsets(sheaf, cells)
    return {c: list(cochain[offsets[c] : offsets[c] + sheaf.dims[c], 0]) for c in cells}


def to_triplets(matrix: sympy.Matrix) -> str:
    """Sparse text export: one `row col num/den` line per nonzero entry, row-major."""
    lines = []
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            value = sympy.Rational(matrix[i, j])
            if value != 0:
                lines.append(f"{i} {j} {value.p}/{value.q}")
    return "\n".join(lines)
