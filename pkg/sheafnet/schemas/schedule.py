"""Schemas for schedule documents: per-slice transmitters, queues and injections."""

from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict

from sheafnet.core.errors import InvalidValue
from sheafnet.models.payload import Packet, Priority, Schedule
from sheafnet.schemas.network import NodeIdT

Coordinate = Union[int, float, str]


class PacketEntry(BaseModel):
    """Payload coordinates as integers or "num/den" strings."""

    model_config = ConfigDict(extra="forbid")

    payload: list[Coordinate]
    destination: Optional[NodeIdT] = None
    priority: Priority = Priority.LOW

    def to_packet(self, d: int) -> Packet:
        if len(self.payload) != d:
            raise InvalidValue("packet dimension does not match --packet-dim", {"expected": d, "got": len(self.payload)})
        try:
            values = [Fraction(v) for v in self.payload]
        except (ValueError, ZeroDivisionError):
            raise InvalidValue("payload coordinate is not a rational number", {"payload": self.payload}) from None
        return Packet.of(values, destination=self.destination, priority=self.priority)


class SliceEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    t: int
    transmitters: list[NodeIdT] = []


class QueueEntry(BaseModel):
    """Initial transmit queue (x2, ..., xn) of a node; null entries are empty slots."""

    model_config = ConfigDict(extra="forbid")

    node: NodeIdT
    queue: list[Optional[PacketEntry]]


class InjectionEntry(PacketEntry):
    node: NodeIdT
    t: int


class RouteEntry(PacketEntry):
    """A single packet released at `source`'s transmit tail at the window start."""

    source: NodeIdT


class ScheduleDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    window: Optional[tuple[int, int]] = None
    slices: list[SliceEntry] = []
    initial_queues: list[QueueEntry] = []
    injections: list[InjectionEntry] = []
    route: Optional[RouteEntry] = None

    def to_schedule(self) -> Schedule:
        transmitters: dict[int, tuple] = {}
        for entry in self.slices:
            transmitters[entry.t] = tuple(transmitters.get(entry.t, ())) + tuple(entry.transmitters)
        return Schedule(transmitters=transmitters)

    def times(self) -> list[int]:
        return sorted({entry.t for entry in self.slices} | {entry.t for entry in self.injections})
