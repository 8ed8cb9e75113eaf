"""Schemas for network documents."""

from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from sheafnet.core.errors import ParseError
from sheafnet.models.network import NetworkDescription
from sheafnet.services.netmodel import disk_signals

NodeIdT = Union[int, str]


class SignalEntry(BaseModel):
    """Signal level of `source`'s transmission as heard at `target`."""

    model_config = ConfigDict(extra="forbid")

    source: NodeIdT
    target: NodeIdT
    level: float = Field(allow_inf_nan=False)
    t: Optional[int] = None


class DiskEntry(BaseModel):
    """Disk coverage geometry for one node, meters."""

    model_config = ConfigDict(extra="forbid")

    node: NodeIdT
    x: float
    y: float
    radius: float = Field(gt=0, allow_inf_nan=False)


class NetworkDocument(BaseModel):
    """
    A network given either as a signal table or as disk geometry.

    With `symmetric`, each signal entry also applies in the reverse direction. Entries
    with `t` override untimed entries at that time.
    """

    model_config = ConfigDict(extra="forbid")

    name: str = "network"
    nodes: list[NodeIdT] = []
    signals: list[SignalEntry] = []
    disks: list[DiskEntry] = []
    symmetric: bool = False
    threshold: float = Field(default=0.0, allow_inf_nan=False)
    window: Optional[tuple[int, int]] = None

    def to_network(self, threshold: Optional[float] = None, window: Optional[tuple[int, int]] = None) -> NetworkDescription:
        """
        Raises:
            ParseError: mixed node id types, undeclared nodes, or both signals and disks.
        """
        threshold = self.threshold if threshold is None else threshold
        window = window or self.window
        if self.signals and self.disks:
            raise ParseError("give either signals or disks, not both", field="disks")
        if self.disks:
            ids = [d.node for d in self.disks]
            self._check_ids(ids, "disks")
            positions = {d.node: (d.x, d.y) for d in self.disks}
            radii = {d.node: d.radius for d in self.disks}
            t_range = range(window[0], window[1] + 1) if window else None
            return disk_signals(positions, radii, t_range=t_range, threshold=threshold)

        self._check_ids(self.nodes, "nodes")
        declared = set(self.nodes)
        signal: dict = {}
        for index, entry in enumerate(self.signals):
            for attr in ("source", "target"):
                if getattr(entry, attr) not in declared:
                    raise ParseError("signal names an undeclared node", field=f"signals[{index}].{attr}")
            signal[(entry.source, entry.target, entry.t)] = entry.level
            if self.symmetric:
                signal.setdefault((entry.target, entry.source, entry.t), entry.level)
        return NetworkDescription(nodes=tuple(self.nodes), signal=signal, threshold=threshold, window=window)

    @staticmethod
    def _check_ids(ids: list[NodeIdT], field: str) -> None:
        if len({type(i) for i in ids}) > 1:
            raise ParseError("node ids must be all integers or all strings", field=field)
