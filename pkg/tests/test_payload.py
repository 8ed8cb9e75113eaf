"""Tests for the data payload sheaf, simulation and the throughput bound."""

from itertools import product

import pytest
import sympy

from sheafnet.core.errors import (
    InconsistentSchedule,
    InjectionConflict,
    InvalidValue,
    NonlinearProtocol,
)
from sheafnet.models.cell import Cell
from sheafnet.models.payload import LinkValue, NodeState, Packet, QueueValue, Schedule
from sheafnet.models.sheaf import BOTTOM, Section
from sheafnet.schemas.network import NetworkDocument, SignalEntry
from sheafnet.seed.sample_networks import path3, relay2, single, six_node, triangle
from sheafnet.services.activation import activation_sheaf, enumerate_global_sections, transmitters
from sheafnet.services.payload import (
    activation_subsheaf,
    empty_tail_transmitters,
    fixed_activation_subsheaf,
    initial_states,
    morphism_violations,
    node_thread_subsheaf,
    payload_sheaf,
    route_section,
    schedule_sections,
    section_data_vector,
    simulate,
    switching_map,
    switching_sheaf_sections,
    throughput_bound,
)
from sheafnet.services.sheaflin import coboundary, rank
from sheafnet.services.temporal import time_dependent_link_complex, timeslice
from tests.oracles import constraint_nullity

ZERO = Packet.zero(1)


def _p(value) -> Packet:
    return Packet.of([value])


def _ps(doc, window, n=3, d=1, protocol="forward_everything"):
    tc = time_dependent_link_complex(doc.to_network(), window)
    return payload_sheaf(tc, d, n, protocol)


def _diamond() -> NetworkDocument:
    """Triangles [1,2,3] and [2,3,4] sharing the edge [2,3]."""
    pairs = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
    return NetworkDocument(
        name="diamond",
        nodes=[1, 2, 3, 4],
        signals=[SignalEntry(source=a, target=b, level=1.0) for a, b in pairs],
        symmetric=True,
        threshold=0.5,
    )


def _v(node, t) -> Cell:
    return Cell(((node, t),))


def _edge(a, b) -> Cell:
    return Cell((a, b))


# restriction formulas, n = 3, d = 1


@pytest.fixture
def relay():
    return _ps(relay2(), (0, 1))


def test_transmitter_advances_its_queue(relay):
    value = NodeState(BOTTOM, 1, (ZERO, _p(5), _p(7)))
    edge = _edge((1, 0), (1, 1))
    assert relay.restrict(_v(1, 0), edge, value) == QueueValue(1, (_p(5), ZERO))


def test_transmitter_with_empty_tail_holds_its_queue(relay):
    value = NodeState(BOTTOM, 1, (ZERO, _p(5), ZERO))
    assert relay.restrict(_v(1, 0), _edge((1, 0), (1, 1)), value) == QueueValue(BOTTOM, (_p(5), ZERO))


def test_receiver_applies_the_receive_queue_function(relay):
    value = NodeState(BOTTOM, 2, (_p(4), _p(5), _p(7)))
    assert relay.restrict(_v(1, 0), _edge((1, 0), (1, 1)), value) == QueueValue(2, (_p(4), _p(7)))


def test_idle_node_drops_its_receive_buffer(relay):
    value = NodeState(BOTTOM, BOTTOM, (_p(4), _p(5), _p(7)))
    assert relay.restrict(_v(1, 0), _edge((1, 0), (1, 1)), value) == QueueValue(BOTTOM, (_p(5), _p(7)))


def test_after_transmitting_the_queue_is_shifted_back(relay):
    value = NodeState(1, BOTTOM, (ZERO, _p(5), _p(7)))
    assert relay.restrict(_v(1, 1), _edge((1, 0), (1, 1)), value) == QueueValue(1, (_p(7), ZERO))


def test_after_receiving_or_idling_the_queue_is_read_as_is(relay):
    edge = _edge((1, 0), (1, 1))
    received = NodeState(2, BOTTOM, (ZERO, _p(5), _p(7)))
    idle = NodeState(BOTTOM, BOTTOM, (ZERO, _p(5), _p(7)))
    assert relay.restrict(_v(1, 1), edge, received) == QueueValue(2, (_p(5), _p(7)))
    assert relay.restrict(_v(1, 1), edge, idle) == QueueValue(BOTTOM, (_p(5), _p(7)))


def test_vertex_to_link_branches(relay):
    link = _edge((1, 0), (2, 0))
    x = (_p(4), _p(5), _p(7))
    assert relay.restrict(_v(1, 0), link, NodeState(BOTTOM, 1, x)) == LinkValue(1, _p(7))
    assert relay.restrict(_v(1, 0), link, NodeState(BOTTOM, 2, x)) == LinkValue(2, _p(4))
    assert relay.restrict(_v(1, 0), link, NodeState(BOTTOM, BOTTOM, x)) == LinkValue(BOTTOM, ZERO)


def test_empty_tail_transmitter_still_names_itself_on_its_links(relay):
    """
    (n2 = a, x3 = 0) restricts to (a, 0) on a link, not to (⊥, 0).

    The activation projection of the vertex value is a, and the activation sheaf
    carries a onto every link containing a, so the link state has to stay a for the
    projection to commute with the restriction.
    """
    link = _edge((1, 0), (2, 0))
    empty_tail = NodeState(BOTTOM, 1, (ZERO, _p(5), ZERO))
    assert relay.restrict(_v(1, 0), link, empty_tail) == LinkValue(1, ZERO)

    sub = activation_subsheaf(relay, 0)
    projected = sub.project(_v(1, 0), empty_tail)
    assert projected == 1
    assert sub.sheaf.restrict(sub.cells[_v(1, 0)], sub.cells[link], projected) == 1
    assert sub.project(link, relay.restrict(_v(1, 0), link, empty_tail)) == 1


def test_receiver_outside_the_link_sees_nothing():
    ps = _ps(path3(), (0, 0))
    value = NodeState(BOTTOM, 1, (_p(4), _p(5), _p(7)))
    assert ps.restrict(_v(2, 0), _edge((2, 0), (3, 0)), value) == LinkValue(BOTTOM, ZERO)
    assert ps.restrict(_v(2, 0), _edge((1, 0), (2, 0)), value) == LinkValue(1, _p(4))


def test_link_to_higher_cell_keeps_states_of_the_coface():
    ps = _ps(_diamond(), (0, 0))
    edge = _edge((2, 0), (3, 0))
    left = Cell(((1, 0), (2, 0), (3, 0)))
    right = Cell(((2, 0), (3, 0), (4, 0)))
    assert ps.restrict(edge, left, LinkValue(1, _p(3))) == LinkValue(1, _p(3))
    assert ps.restrict(edge, right, LinkValue(1, _p(3))) == LinkValue(BOTTOM, ZERO)
    assert ps.restrict(edge, right, LinkValue(BOTTOM, _p(3))) == LinkValue(BOTTOM, _p(3))


def test_stalk_membership(relay):
    with pytest.raises(InvalidValue):
        relay.check_value(_v(1, 0), NodeState(BOTTOM, 3, (ZERO, ZERO, ZERO)))
    with pytest.raises(InvalidValue):
        relay.check_value(_v(1, 0), NodeState(BOTTOM, 1, (ZERO, ZERO)))
    with pytest.raises(InvalidValue):
        relay.check_value(_edge((1, 0), (1, 1)), LinkValue(1, ZERO))


def test_payload_sheaf_parameters():
    tc = time_dependent_link_complex(relay2().to_network(), (0, 1))
    with pytest.raises(InvalidValue):
        payload_sheaf(tc, 0, 2, "forward_nothing")
    with pytest.raises(InvalidValue):
        payload_sheaf(tc, 1, 1, "forward_nothing")


# activation subsheaf and node threads


@pytest.mark.parametrize(
    "doc,window,n",
    [
        (relay2(), (0, 1), 3),
        (path3(), (0, 0), 3),
        (triangle(), (0, 0), 2),
        (_diamond(), (0, 0), 2),
        (six_node(), (0, 2), 2),
    ],
)
def test_activation_projection_commutes_with_restrictions(doc, window, n):
    ps = _ps(doc, window, n=n)
    for t in ps.base.times:
        assert morphism_violations(ps, t, (ZERO, _p(1))) == []


def test_activation_subsheaf_relabels_slice_cells(relay):
    sub = activation_subsheaf(relay, 1)
    assert sub.cells[_edge((1, 1), (2, 1))] == _edge(1, 2)
    assert sub.project(_v(1, 1), NodeState(BOTTOM, 2, (ZERO,) * 3)) == 2


# simulation


def _route_schedule() -> Schedule:
    return Schedule({0: (1,), 1: (2,), 2: (3,)})


def test_route_hops_along_the_path():
    ps = _ps(path3(), (0, 2), n=2)
    trace = route_section(ps, _route_schedule(), 1, _p(5))
    assert trace.hops == [(2, 0), (1, 1), (3, 1), (2, 2)]
    assert ps.is_section(trace.section)
    assert trace.section[_edge((1, 0), (2, 0))] == LinkValue(1, _p(5))
    assert trace.section[_v(2, 0)] == NodeState(BOTTOM, 1, (_p(5), ZERO))


def test_route_section_lies_in_the_kernel_of_the_bound_coboundary():
    ps = _ps(path3(), (0, 2), n=2)
    schedule = _route_schedule()
    P = fixed_activation_subsheaf(ps, schedule)
    section = route_section(ps, schedule, 1, _p(5)).section
    vector = section_data_vector(ps, P, section)
    assert coboundary(P, 0) * vector == sympy.zeros(P.total_dim(1), 1)


def test_empty_tail_transmitters_hold_their_queue_in_the_bound_sheaf():
    """Node 2 transmits at t=1 and t=2 with the forwarded packet still at its queue head."""
    ps = _ps(path3(), (0, 2), n=3)
    schedule = Schedule({0: (1,), 1: (2,), 2: (2,)})
    section = route_section(ps, schedule, 1, _p(5)).section
    assert ps.is_section(section)
    assert section[_v(2, 1)].transmit_queue == (_p(5), ZERO)
    empty = empty_tail_transmitters(section)
    assert empty == {(2, 1), (2, 2)}

    P = fixed_activation_subsheaf(ps, schedule, empty)
    assert coboundary(P, 0) * section_data_vector(ps, P, section) == sympy.zeros(P.total_dim(1), 1)
    advancing = fixed_activation_subsheaf(ps, schedule)
    assert coboundary(advancing, 0) * section_data_vector(ps, advancing, section) != sympy.zeros(P.total_dim(1), 1)


def test_empty_tails_must_be_scheduled_transmitters():
    ps = _ps(path3(), (0, 2), n=3)
    schedule = Schedule({0: (1,), 1: (2,)})
    with pytest.raises(InvalidValue):
        fixed_activation_subsheaf(ps, schedule, {(3, 1)})
    with pytest.raises(InvalidValue):
        fixed_activation_subsheaf(ps, schedule, {(2, 5)})


def test_node_threads_form_grouping_sections():
    ps = _ps(path3(), (0, 2), n=2)
    section = route_section(ps, _route_schedule(), 1, _p(5)).section
    for node in (1, 2, 3):
        thread = node_thread_subsheaf(ps, node)
        values = thread.project(section)
        assert thread.grouping.as_set_sheaf().is_section(Section(values))
    assert node_thread_subsheaf(ps, 2).project(section)[Cell((1,))] == (2, 1)
    with pytest.raises(InvalidValue):
        node_thread_subsheaf(ps, 9)


def test_injection_into_an_empty_head_slot():
    ps = _ps(relay2(), (0, 1), n=2)
    section = simulate(ps, Schedule({1: (1,)}), injections={(1, 0): _p(3)})
    assert section[_v(1, 1)].tail == _p(3)
    assert section[_v(2, 1)].receive_buffer == _p(3)


def test_injection_into_a_determined_slot_conflicts():
    """Node 2 received at t=0, so its head slot at t=1 already holds that packet."""
    ps = _ps(relay2(), (0, 1), n=2)
    schedule = Schedule({0: (1,)})
    initial = initial_states(ps, schedule, {1: (_p(1),)})
    with pytest.raises(InjectionConflict):
        simulate(ps, schedule, initial, {(2, 1): _p(3)})


def test_injection_into_an_occupied_slot_conflicts():
    ps = _ps(relay2(), (0, 1), n=2)
    schedule = Schedule({})
    with pytest.raises(InjectionConflict):
        simulate(ps, schedule, initial_states(ps, schedule, {1: (_p(1),)}), {(1, 0): _p(3)})


def test_injection_at_the_window_start_takes_the_first_empty_slot():
    ps = _ps(relay2(), (0, 1), n=3)
    schedule = Schedule({})
    initial = initial_states(ps, schedule, {1: (_p(1), ZERO)})
    section = simulate(ps, schedule, initial, {(1, 0): _p(3)})
    assert section[_v(1, 0)].transmit_queue == (_p(1), _p(3))


def test_injection_at_the_window_start_conflicts_with_a_full_queue():
    ps = _ps(relay2(), (0, 1), n=3)
    schedule = Schedule({})
    initial = initial_states(ps, schedule, {1: (_p(1), _p(2))})
    with pytest.raises(InjectionConflict):
        simulate(ps, schedule, initial, {(1, 0): _p(3)})


def test_injection_after_a_transmission_goes_to_the_freed_head_slot():
    ps = _ps(relay2(), (0, 1), n=3)
    schedule = Schedule({0: (1,)})
    initial = initial_states(ps, schedule, {1: (ZERO, _p(1))})
    section = simulate(ps, schedule, initial, {(1, 1): _p(3)})
    assert section[_v(1, 1)].transmit_queue == (_p(3), ZERO)
    assert section[_v(2, 0)].receive_buffer == _p(1)


def test_injection_into_an_idle_node_after_the_window_start_conflicts():
    ps = _ps(relay2(), (0, 1), n=3)
    with pytest.raises(InjectionConflict):
        simulate(ps, Schedule({}), injections={(1, 1): _p(3)})


def test_interfering_schedule_names_the_blank_cell():
    ps = _ps(path3(), (0, 0))
    with pytest.raises(InconsistentSchedule) as exc:
        simulate(ps, Schedule({0: (1, 3)}))
    assert exc.value.detail["blank"] == "[2]"


def test_initial_state_must_match_the_schedule():
    ps = _ps(relay2(), (0, 1), n=2)
    initial = {1: NodeState(BOTTOM, BOTTOM, (ZERO, ZERO))}
    with pytest.raises(InconsistentSchedule):
        simulate(ps, Schedule({0: (1,)}), initial)


def test_idle_simulation_is_all_zero():
    ps = _ps(path3(), (0, 1), n=3)
    section = simulate(ps, Schedule({}))
    assert ps.is_section(section)
    for cell, value in section.items():
        if isinstance(value, NodeState):
            assert all(p.is_zero for p in value.buffer)


def test_switching_sheaf_has_one_section_per_center_value():
    sections = switching_sheaf_sections((0, 1))
    assert len(sections) == 2 * 2 ** 2
    assert switching_map(1, 0, 1) == 1
    assert switching_map(0, 0, 1) == 0
    assert switching_map(1, _p(2), _p(5)) == _p(5)


# throughput bound


def test_bound_needs_a_linear_protocol():
    ps = _ps(relay2(), (0, 1), protocol="forward_for_others")
    with pytest.raises(NonlinearProtocol):
        fixed_activation_subsheaf(ps, Schedule({}))


@pytest.mark.parametrize("m,n,d", [(1, 2, 1), (2, 2, 1), (3, 3, 1), (2, 3, 2)])
def test_idle_bound_is_the_sliding_window_count(m, n, d):
    ps = _ps(path3(), (0, m - 1), n=n, d=d)
    P = fixed_activation_subsheaf(ps, Schedule({}))
    assert throughput_bound(P) == 3 * (m + n - 1) * d


def _schedules(ps):
    """Every interference-free schedule over the window."""
    options = []
    for t in ps.base.times:
        sheaf = activation_sheaf(timeslice(ps.base, t))
        options.append([tuple(transmitters(s)) for s in enumerate_global_sections(sheaf)])
    for choice in product(*options):
        yield Schedule(dict(zip(ps.base.times, choice)))


SMALL_NETWORKS = {"relay2": relay2, "path3": path3, "triangle": triangle, "single": single}


@pytest.mark.parametrize("name", sorted(SMALL_NETWORKS))
@pytest.mark.parametrize("window", [(0, 0), (0, 1), (0, 2)])
@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("protocol", ["forward_nothing", "forward_everything"])
def test_bound_matches_constraint_nullity(name, window, n, protocol):
    ps = _ps(SMALL_NETWORKS[name](), window, n=n, protocol=protocol)
    for schedule in _schedules(ps):
        P = fixed_activation_subsheaf(ps, schedule)
        assert throughput_bound(P) == constraint_nullity(P)


@pytest.mark.parametrize("name", sorted(SMALL_NETWORKS))
@pytest.mark.parametrize("window", [(0, 1), (0, 2)])
@pytest.mark.parametrize("n", [2, 3])
def test_route_sections_on_every_schedule(name, window, n):
    ps = _ps(SMALL_NETWORKS[name](), window, n=n)
    for schedule in _schedules(ps):
        states = schedule_sections(ps, schedule)
        for source in ps.base.nodes:
            trace = route_section(ps, schedule, source, _p(5))
            assert ps.is_section(trace.section)
            P = fixed_activation_subsheaf(ps, schedule, empty_tail_transmitters(trace.section))
            vector = section_data_vector(ps, P, trace.section)
            assert coboundary(P, 0) * vector == sympy.zeros(P.total_dim(1), 1)

            sends = [t for t in ps.base.times if source in schedule.at(t)]
            if not sends:
                assert trace.hops == []
                continue
            first = sends[0]
            if any(states[t][Cell((source,))] is not BOTTOM for t in ps.base.times if t < first):
                continue
            listeners = {m for m in ps.base.nodes if m != source and states[first][Cell((m,))] == source}
            assert {node for node, t in trace.hops if t == first} == listeners
            assert all(t >= first for _, t in trace.hops)


@pytest.mark.parametrize("name", ["relay2", "path3"])
def test_pinning_data_never_raises_the_bound(name):
    ps = _ps(SMALL_NETWORKS[name](), (0, 1), n=2)
    for schedule in _schedules(ps):
        P = fixed_activation_subsheaf(ps, schedule)
        delta = coboundary(P, 0)
        size = delta.cols
        dims = [size - rank(sympy.Matrix.vstack(delta, sympy.eye(size)[:k, :])) for k in range(size + 1)]
        assert dims[0] == throughput_bound(P)
        assert all(later <= earlier for earlier, later in zip(dims, dims[1:]))
        assert dims[-1] == 0
