"""Stalk values of the data payload sheaf: packets, node states, queue and link values."""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional

NodeId = Any


class Priority(str, enum.Enum):
    LOW = "LOW"
    HIGH = "HIGH"


@dataclass(frozen=True)
class Packet:
    """
    An element of the packet space D = Q^d plus routing metadata.

    Only the payload coordinates take part in the linear structure. A packet with a
    zero payload is an empty slot.
    """

    payload: tuple[Fraction, ...]
    destination: Optional[NodeId] = None
    priority: Priority = Priority.LOW

    @classmethod
    def zero(cls, d: int) -> "Packet":
        return cls(payload=(Fraction(0),) * d)

    @classmethod
    def of(cls, values: Iterable[Any], destination: Optional[NodeId] = None, priority: Priority = Priority.LOW) -> "Packet":
        return cls(payload=tuple(Fraction(v) for v in values), destination=destination, priority=Priority(priority))

    @property
    def dim(self) -> int:
        return len(self.payload)

    @property
    def is_zero(self) -> bool:
        return not any(self.payload)

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        body = ",".join(str(v) for v in self.payload)
        meta = f"->{self.destination}" if self.destination is not None else ""
        flag = "!" if self.priority is Priority.HIGH else ""
        return f"<{body}{meta}{flag}>"


Buffer = tuple[Packet, ...]


@dataclass(frozen=True)
class NodeState:
    """
    Vertex stalk value: previous state n1, current state n2, and (x1, ..., xn).

    x1 is the receive buffer and (x2, ..., xn) the transmit queue; xn transmits next.
    States are a node id or None (⊥).
    """

    prev_state: Optional[NodeId]
    cur_state: Optional[NodeId]
    buffer: Buffer

    @property
    def receive_buffer(self) -> Packet:
        return self.buffer[0]

    @property
    def transmit_queue(self) -> Buffer:
        return self.buffer[1:]

    @property
    def tail(self) -> Packet:
        return self.buffer[-1]


@dataclass(frozen=True)
class QueueValue:
    """Temporal-edge stalk value: a state and a length n-1 queue."""

    state: Optional[NodeId]
    queue: Buffer


@dataclass(frozen=True)
class LinkValue:
    """Stalk value over a within-slice cell of dimension ≥ 1: a state and one packet."""

    state: Optional[NodeId]
    packet: Packet


@dataclass(frozen=True)
class Schedule:
    """Transmitter set per timeslice; slices not listed are idle."""

    transmitters: dict[int, tuple[NodeId, ...]] = field(default_factory=dict)

    def at(self, t: int) -> tuple[NodeId, ...]:
        return tuple(sorted(self.transmitters.get(t, ())))
