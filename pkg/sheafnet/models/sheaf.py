"""Set-valued cellular sheaves and sections."""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Iterable, Iterator, Mapping, Optional

from sheafnet.core.errors import InvalidValue, UnknownCell
from sheafnet.models.cell import Cell, SimplicialComplex

# ⊥: idle / nothing decodable
BOTTOM = None

Restriction = Callable[[Cell, Cell, Any], Any]


@dataclass(frozen=True)
class Section:
    """A partial or total assignment of stalk values to cells."""

    values: Mapping[Cell, Any] = field(default_factory=dict)

    def __getitem__(self, cell: Cell) -> Any:
        return self.values[cell]

    def __contains__(self, cell: object) -> bool:
        return cell in self.values

    def __iter__(self) -> Iterator[Cell]:
        return iter(sorted(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def get(self, cell: Cell, default: Any = None) -> Any:
        return self.values.get(cell, default)

    @property
    def support_cells(self) -> frozenset:
        """Domain of the assignment."""
        return frozenset(self.values)

    def is_total_on(self, X: SimplicialComplex) -> bool:
        return self.support_cells == X.cells

    def items(self) -> list[tuple[Cell, Any]]:
        return [(c, self.values[c]) for c in sorted(self.values)]


class SetSheaf:
    """
    A sheaf of finite sets over a simplicial complex.

    stalks maps every cell to its finite stalk; restrict(c, d, v) is the restriction
    function for a face incidence c ⊂ d (identity when c == d). Restrictions must be
    functorial; only codimension-1 incidences are consulted when checking total sections.
    """

    def __init__(self, base: SimplicialComplex, stalks: Mapping[Cell, frozenset], restrict: Restriction):
        missing = base.cells - set(stalks)
        if missing:
            raise UnknownCell("stalk missing for cell", {"cell": repr(min(missing))})
        self.base = base
        self._stalks = dict(stalks)
        self._restrict = restrict

    def stalk(self, cell: Cell) -> frozenset:
        self.base.require(cell)
        return self._stalks[cell]

    def restrict(self, c: Cell, d: Cell, value: Any) -> Any:
        if c == d:
            return value
        return self._restrict(c, d, value)

    def check_value(self, cell: Cell, value: Any) -> None:
        if value not in self.stalk(cell):
            raise InvalidValue("value outside stalk", {"cell": repr(cell), "value": value})

    def violations(self, section: Section) -> Iterator[tuple[Cell, Cell]]:
        """
        Incidences c ⊂ d, both in the section's domain, whose restriction disagrees.

        Total sections are checked on codimension-1 incidences; partial ones on every
        incidence inside the domain.
        """
        for cell, value in section.items():
            self.check_value(cell, value)
        total = section.is_total_on(self.base)
        for c, value in section.items():
            upward = self.base.cofaces(c) if total else sorted(self.base.upward_closure(c) - {c})
            for d in upward:
                if d in section and self.restrict(c, d, value) != section[d]:
                    yield (c, d)

    def is_section(self, section: Section) -> bool:
        return next(self.violations(section), None) is None

    def enumerate_assignments(self, cells: Optional[Iterable[Cell]] = None) -> Iterator[Section]:
        """Every assignment of stalk values to the given cells (default: all cells)."""
        chosen = sorted(cells) if cells is not None else list(self.base.sorted_cells())
        stalks = [sorted(self.stalk(c), key=_value_key) for c in chosen]
        for combo in product(*stalks):
            yield Section(dict(zip(chosen, combo)))


def _value_key(value: Any) -> tuple:
    # ⊥ first, then values by repr so mixed stalks still sort deterministically
    return (value is not BOTTOM, repr(value))
