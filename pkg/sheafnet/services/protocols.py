"""
Receive queue functions q : D^n → D^(n-1).

A receive queue function decides how a received packet x1 enters the transmit queue
(x2, ..., xn). Every protocol must be a selection-with-permutation of its inputs,
padded with empty packets. Protocols whose selection does not depend on the packet
contents also publish it as a fixed index list, which makes them linear.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional

from sheafnet.core.errors import InvalidProtocol, InvalidValue, UnknownProtocol
from sheafnet.models.payload import Buffer, NodeId, Packet, Priority

logger = logging.getLogger(__name__)

ReceiveQueue = Callable[[NodeId, Buffer], Buffer]
# output slot -> input slot (0-based), None for an empty packet
Selection = list[Optional[int]]

FORWARD_NOTHING = "forward_nothing"
FORWARD_EVERYTHING = "forward_everything"
FORWARD_WITH_QUEUE_MANAGEMENT = "forward_with_queue_management"
FORWARD_FOR_OTHERS = "forward_for_others"
FORWARD_FOR_OTHERS_PRIORITY = "forward_for_others_priority"


@dataclass(frozen=True)
class Protocol:
    name: str
    fn: ReceiveQueue
    selection: Optional[Callable[[int], Selection]] = None

    @property
    def is_linear(self) -> bool:
        return self.selection is not None

    def __call__(self, self_node: NodeId, x: Buffer) -> Buffer:
        return self.fn(self_node, x)


def _forward_nothing(self_node: NodeId, x: Buffer) -> Buffer:
    return tuple(x[1:])


def _forward_everything(self_node: NodeId, x: Buffer) -> Buffer:
    return (x[0],) + tuple(x[2:])


def _forward_with_queue_management(self_node: NodeId, x: Buffer) -> Buffer:
    queue = list(x[1:])
    empty = [i for i, packet in enumerate(queue) if packet.is_zero]
    # last empty slot is nearest the transmitting end; with none, overwrite the start
    slot = empty[-1] if empty else 0
    queue[slot] = x[0]
    return tuple(queue)


def _destined_for(packet: Packet, node: NodeId) -> bool:
    return packet.destination is not None and packet.destination == node


def _forward_for_others(self_node: NodeId, x: Buffer) -> Buffer:
    if _destined_for(x[0], self_node):
        return _forward_nothing(self_node, x)
    return _forward_everything(self_node, x)


def _forward_for_others_priority(self_node: NodeId, x: Buffer) -> Buffer:
    if _destined_for(x[0], self_node):
        return _forward_nothing(self_node, x)
    if x[0].priority is Priority.HIGH:
        return tuple(x[2:]) + (x[0],)
    return _forward_everything(self_node, x)


_REGISTRY: dict[str, Protocol] = {}


def _sample_buffers(n: int) -> list[Buffer]:
    """Buffers of distinct packets, with empty slots, destinations and priorities varied."""
    nodes = ["self", "other"]
    samples = []
    for dest, prio in product([None] + nodes, list(Priority)):
        head = Packet.of([100], destination=dest, priority=prio)
        rest = tuple(Packet.of([i + 1]) for i in range(n - 1))
        samples.append((head,) + rest)
        holes = tuple(Packet.zero(1) if i % 2 else Packet.of([i + 1]) for i in range(n - 1))
        samples.append((head,) + holes)
    return samples


def check_selection_with_permutation(fn: ReceiveQueue, max_len: int = 5) -> None:
    """
    Raise InvalidProtocol unless fn maps every sample buffer to n-1 entries, each an
    empty packet or a distinct input.
    """
    for n in range(2, max_len + 1):
        for x in _sample_buffers(n):
            out = fn("self", x)
            if len(out) != n - 1:
                raise InvalidProtocol("receive queue output must have n-1 entries", {"n": n, "got": len(out)})
            used: list[int] = []
            for packet in out:
                if packet.is_zero:
                    continue
                matches = [i for i, p in enumerate(x) if p == packet and i not in used]
                if not matches:
                    raise InvalidProtocol("output is not a selection of the inputs", {"n": n, "packet": repr(packet)})
                used.append(matches[0])


def register_protocol(name: str, fn: ReceiveQueue, selection: Optional[Callable[[int], Selection]] = None) -> Protocol:
    """Validate and register a receive queue function under a lowercase name."""
    check_selection_with_permutation(fn)
    protocol = Protocol(name=name.lower(), fn=fn, selection=selection)
    _REGISTRY[protocol.name] = protocol
    logger.debug("registered protocol %s linear=%s", protocol.name, protocol.is_linear)
    return protocol


def get_protocol(name: str) -> Protocol:
    try:
        return _REGISTRY[name.lower()]
    except KeyError:
        raise UnknownProtocol("unknown protocol", {"protocol": name, "known": sorted(_REGISTRY)}) from None


def protocol_names() -> list[str]:
    return sorted(_REGISTRY)


def receive_queue(protocol: "Protocol | str", self_node: NodeId, x: Buffer) -> Buffer:
    """
    Apply a receive queue function to (x1, ..., xn).

    Raises:
        InvalidValue: n < 2.
        UnknownProtocol: no protocol registered under that name.
    """
    if len(x) < 2:
        raise InvalidValue("receive queue needs n >= 2", {"n": len(x)})
    if isinstance(protocol, str):
        protocol = get_protocol(protocol)
    return protocol(self_node, tuple(x))


def apply_selection(selection: Selection, x: Buffer, d: int) -> Buffer:
    return tuple(x[j] if j is not None else Packet.zero(d) for j in selection)


register_protocol(FORWARD_NOTHING, _forward_nothing, selection=lambda n: list(range(1, n)))
register_protocol(FORWARD_EVERYTHING, _forward_everything, selection=lambda n: [0] + list(range(2, n)))
register_protocol(FORWARD_WITH_QUEUE_MANAGEMENT, _forward_with_queue_management)
register_protocol(FORWARD_FOR_OTHERS, _forward_for_others)
register_protocol(FORWARD_FOR_OTHERS_PRIORITY, _forward_for_others_priority)
