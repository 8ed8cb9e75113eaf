"""Tests for receive queue functions."""

from unittest.mock import patch

import pytest

from sheafnet.core.errors import InvalidProtocol, InvalidValue, UnknownProtocol
from sheafnet.models.payload import Packet, Priority
from sheafnet.services import protocols
from sheafnet.services.protocols import (
    FORWARD_EVERYTHING,
    FORWARD_FOR_OTHERS,
    FORWARD_FOR_OTHERS_PRIORITY,
    FORWARD_NOTHING,
    FORWARD_WITH_QUEUE_MANAGEMENT,
    apply_selection,
    get_protocol,
    protocol_names,
    receive_queue,
    register_protocol,
)

ZERO = Packet.zero(1)


@pytest.fixture
def isolated_registry():
    with patch.object(protocols, "_REGISTRY", dict(protocols._REGISTRY)):
        yield


def _p(value, destination=None, priority=Priority.LOW) -> Packet:
    return Packet.of([value], destination=destination, priority=priority)


def test_forward_nothing_discards_the_received_packet():
    x = (_p(9), _p(1), _p(2))
    assert receive_queue(FORWARD_NOTHING, "a", x) == (_p(1), _p(2))


def test_forward_everything_replaces_the_tail():
    x = (_p(9), _p(1), _p(2))
    assert receive_queue(FORWARD_EVERYTHING, "a", x) == (_p(9), _p(2))


def test_queue_management_fills_the_last_empty_slot():
    x = (_p(9), ZERO, _p(1), ZERO, _p(2))
    assert receive_queue(FORWARD_WITH_QUEUE_MANAGEMENT, "a", x) == (ZERO, _p(1), _p(9), _p(2))


def test_queue_management_overwrites_the_start_when_full():
    x = (_p(9), _p(1), _p(2))
    assert receive_queue(FORWARD_WITH_QUEUE_MANAGEMENT, "a", x) == (_p(9), _p(2))


def test_forward_for_others_keeps_packets_for_this_node_out_of_the_queue():
    mine = (_p(9, destination="a"), _p(1), _p(2))
    theirs = (_p(9, destination="b"), _p(1), _p(2))
    assert receive_queue(FORWARD_FOR_OTHERS, "a", mine) == (_p(1), _p(2))
    assert receive_queue(FORWARD_FOR_OTHERS, "a", theirs) == (_p(9, destination="b"), _p(2))


def test_priority_packets_go_to_the_transmitting_end():
    urgent = _p(9, destination="b", priority=Priority.HIGH)
    x = (urgent, _p(1), _p(2))
    assert receive_queue(FORWARD_FOR_OTHERS_PRIORITY, "a", x) == (_p(2), urgent)
    routine = (_p(9, destination="b"), _p(1), _p(2))
    assert receive_queue(FORWARD_FOR_OTHERS_PRIORITY, "a", routine) == (_p(9, destination="b"), _p(2))


def test_linear_protocols_publish_their_selection():
    x = (_p(9), _p(1), _p(2), _p(3))
    for name in (FORWARD_NOTHING, FORWARD_EVERYTHING):
        protocol = get_protocol(name)
        assert protocol.is_linear
        assert apply_selection(protocol.selection(4), x, 1) == protocol("a", x)
    assert not get_protocol(FORWARD_FOR_OTHERS).is_linear


def test_unknown_protocol():
    with pytest.raises(UnknownProtocol):
        get_protocol("forward_sideways")


def test_receive_queue_needs_two_slots():
    with pytest.raises(InvalidValue):
        receive_queue(FORWARD_NOTHING, "a", (_p(1),))


def test_register_rejects_a_function_that_invents_packets(isolated_registry):
    def invent(node, x):
        return (Packet.of([7]),) * (len(x) - 1)

    with pytest.raises(InvalidProtocol):
        register_protocol("invent", invent)
    assert "invent" not in protocol_names()


def test_register_rejects_wrong_output_length(isolated_registry):
    with pytest.raises(InvalidProtocol):
        register_protocol("too_long", lambda node, x: tuple(x))


def test_register_accepts_a_permutation(isolated_registry):
    protocol = register_protocol("Reverse_Queue", lambda node, x: tuple(reversed(x[1:])))
    assert protocol.name == "reverse_queue"
    assert get_protocol("REVERSE_QUEUE") is protocol


def test_registration_stays_inside_the_isolated_registry():
    with patch.object(protocols, "_REGISTRY", dict(protocols._REGISTRY)):
        register_protocol("scratch_queue", lambda node, x: tuple(x[1:]))
        assert "scratch_queue" in protocol_names()
    assert "scratch_queue" not in protocol_names()
