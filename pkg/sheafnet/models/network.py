"""Network input model: nodes, signal levels s_i(n_j, t), decode threshold T."""

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from sheafnet.core.errors import ParseError

NodeId = Any

# signal key: (transmitter i, receiver j, t); t is None for a time-invariant entry
SignalKey = tuple[NodeId, NodeId, Optional[int]]


@dataclass(frozen=True)
class Geometry:
    """Disk coverage model: position (x, y) in meters and coverage radius in meters."""

    x: float
    y: float
    radius: float


@dataclass(frozen=True)
class NetworkDescription:
    nodes: tuple[NodeId, ...]
    signal: Mapping[SignalKey, float]
    threshold: float
    geometry: Mapping[NodeId, Geometry] = field(default_factory=dict)
    window: Optional[tuple[int, int]] = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.threshold):
            raise ParseError("threshold must be finite", field="threshold")
        if len(set(self.nodes)) != len(self.nodes):
            raise ParseError("node ids must be unique", field="nodes")

    def level(self, i: NodeId, j: NodeId, t: Optional[int] = None) -> Optional[float]:
        """
        Signal level of transmitter i at receiver j, or None when j is outside i's coverage.

        A timed entry at t takes precedence over a time-invariant entry.
        """
        if t is not None and (i, j, t) in self.signal:
            return self.signal[(i, j, t)]
        return self.signal.get((i, j, None))

    def times(self) -> list[int]:
        """Time indices that carry explicit signal entries."""
        return sorted({t for (_, _, t) in self.signal if t is not None})
