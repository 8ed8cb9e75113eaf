"""
The data payload sheaf over a time-dependent link complex.

Stalks:
    vertex (a, t)               (n1, n2, x1, ..., xn)      NodeState
    temporal edge (a,t)-(a,t+1) (state, n-1 queue slots)   QueueValue
    any other cell in slice t   (state, one packet)        LinkValue

States range over the activation stalk of [a] in the relevant slice: n2 and the
outgoing temporal edge over slice t, n1 over slice t-1 (slice t0 at the window start).
Within a slice, a transmitting node puts its transmit tail xn on its links and a
receiving node's receive buffer x1 matches the link contents. Between slices the
transmit queue advances when the node transmitted, absorbs the received packet via the
receive queue function when it received, and is held otherwise.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Collection, Iterator, Mapping, Optional, Union

import sympy

from sheafnet.core.errors import (
    InconsistentSchedule,
    InjectionConflict,
    InvalidValue,
    NonlinearProtocol,
)
from sheafnet.models.cell import Cell
from sheafnet.models.payload import (
    Buffer,
    LinkValue,
    NodeId,
    NodeState,
    Packet,
    QueueValue,
    Schedule,
)
from sheafnet.models.sheaf import BOTTOM, Section, SetSheaf
from sheafnet.models.vector_sheaf import VectorSheaf
from sheafnet.services.activation import (
    activation_sheaf,
    activation_stalks,
    extend_partial_section,
    section_from_transmitters,
)
from sheafnet.services.complex import from_maximal_cells
from sheafnet.services.protocols import Protocol, Selection, get_protocol
from sheafnet.services.sheaflin import global_section_space
from sheafnet.services.temporal import (
    GroupingSheaf,
    TimeComplex,
    grouping_sheaf,
    relabel_to_nodes,
    timeslice,
)

logger = logging.getLogger(__name__)

StalkValue = Union[NodeState, QueueValue, LinkValue]


class PayloadSheaf:
    def __init__(self, tc: TimeComplex, d: int, n: int, protocol: Protocol):
        if d < 1:
            raise InvalidValue("packet dimension must be at least 1", {"d": d})
        if n < 2:
            raise InvalidValue("buffer length must be at least 2", {"n": n})
        self.base = tc
        self.d = d
        self.n = n
        self.protocol = protocol
        self.slices = {t: timeslice(tc, t) for t in tc.times}
        self._activation = {t: activation_stalks(X) for t, X in self.slices.items()}
        self.zero = Packet.zero(d)

    # stalks

    def activation_stalk(self, t: int, cell: Cell) -> frozenset:
        """Activation stalk of a node-labeled cell of slice t."""
        return self._activation[t][cell]

    def state_alphabet(self, node: NodeId, t: int) -> frozenset:
        """Σ(node, t): states node can carry in slice t."""
        return self.activation_stalk(t, Cell((node,)))

    def prev_alphabet(self, node: NodeId, t: int) -> frozenset:
        return self.state_alphabet(node, max(t - 1, self.base.window[0]))

    def thread_alphabet(self, node: NodeId) -> tuple:
        states = set()
        for t in self.base.times:
            states |= self.state_alphabet(node, t)
        return tuple(sorted(states, key=lambda s: (s is not BOTTOM, repr(s))))

    def _check_buffer(self, cell: Cell, buffer: Buffer, length: int) -> None:
        if len(buffer) != length or any(p.dim != self.d for p in buffer):
            raise InvalidValue("buffer shape does not match stalk", {"cell": repr(cell), "length": length, "d": self.d})

    def check_value(self, cell: Cell, value: StalkValue) -> None:
        """Raise InvalidValue unless value lies in the stalk over cell."""
        if cell.dim == 0:
            (node, t) = cell.vertices[0]
            if not isinstance(value, NodeState):
                raise InvalidValue("vertex stalk holds NodeState values", {"cell": repr(cell)})
            if value.cur_state not in self.state_alphabet(node, t) or value.prev_state not in self.prev_alphabet(node, t):
                raise InvalidValue("state outside stalk", {"cell": repr(cell), "value": (value.prev_state, value.cur_state)})
            self._check_buffer(cell, value.buffer, self.n)
        elif self.base.is_temporal(cell):
            (node, t) = cell.vertices[0]
            if not isinstance(value, QueueValue) or value.state not in self.state_alphabet(node, t):
                raise InvalidValue("temporal edge stalk holds QueueValue values", {"cell": repr(cell)})
            self._check_buffer(cell, value.queue, self.n - 1)
        else:
            t = cell.vertices[0][1]
            if not isinstance(value, LinkValue) or value.state not in self.activation_stalk(t, relabel_to_nodes(cell)):
                raise InvalidValue("link stalk holds LinkValue values", {"cell": repr(cell)})
            self._check_buffer(cell, (value.packet,), 1)

    # restrictions

    def restrict(self, c: Cell, d: Cell, value: StalkValue) -> StalkValue:
        """Restriction along a codimension-1 incidence c ⊂ d of the time complex."""
        if c.dim == 0:
            (node, t) = c.vertices[0]
            if self.base.is_temporal(d):
                if d.vertices[0] == c.vertices[0]:
                    return self.toward_future(node, value)
                return self.from_past(node, value)
            return self.vertex_to_cell(node, t, relabel_to_nodes(d), value)
        t = c.vertices[0][1]
        return self.cell_to_cell(t, relabel_to_nodes(d), value)

    def toward_future(self, node: NodeId, value: NodeState) -> QueueValue:
        """(a, t) ⊂ ((a, t), (a, t+1))"""
        x = value.buffer
        if value.cur_state == node and not x[-1].is_zero:
            return QueueValue(node, tuple(x[1:-1]) + (self.zero,))
        if value.cur_state is not BOTTOM and value.cur_state != node:
            return QueueValue(value.cur_state, self.protocol(node, x))
        return QueueValue(BOTTOM, tuple(x[1:]))

    def from_past(self, node: NodeId, value: NodeState) -> QueueValue:
        """(a, t+1) ⊂ ((a, t), (a, t+1))"""
        x = value.buffer
        if value.prev_state == node:
            return QueueValue(node, tuple(x[2:]) + (self.zero,))
        if value.prev_state is not BOTTOM:
            return QueueValue(value.prev_state, tuple(x[1:]))
        return QueueValue(BOTTOM, tuple(x[1:]))

    def vertex_to_cell(self, node: NodeId, t: int, cell: Cell, value: NodeState) -> LinkValue:
        """(a, t) ⊂ (b, t) for a within-slice cell b; cell is node-labeled."""
        if value.cur_state == node:
            return LinkValue(node, value.buffer[-1])
        if value.cur_state is not BOTTOM and value.cur_state in self.activation_stalk(t, cell):
            return LinkValue(value.cur_state, value.buffer[0])
        return LinkValue(BOTTOM, self.zero)

    def cell_to_cell(self, t: int, cell: Cell, value: LinkValue) -> LinkValue:
        """(a, t) ⊂ (b, t) between within-slice cells of dimension ≥ 1."""
        if value.state in self.activation_stalk(t, cell):
            return value
        return LinkValue(BOTTOM, self.zero)

    # sections

    def violations(self, section: Section) -> Iterator[tuple[Cell, Cell]]:
        X = self.base.complex
        for cell, value in section.items():
            self.check_value(cell, value)
        for c, value in section.items():
            for d in X.cofaces(c):
                if d in section and self.restrict(c, d, value) != section[d]:
                    yield (c, d)

    def is_section(self, section: Section) -> bool:
        return section.is_total_on(self.base.complex) and next(self.violations(section), None) is None


def payload_sheaf(tc: TimeComplex, d: int, n: int, protocol: Union[str, Protocol]) -> PayloadSheaf:
    if isinstance(protocol, str):
        protocol = get_protocol(protocol)
    ps = PayloadSheaf(tc, d, n, protocol)
    logger.info("payload_sheaf window=%s d=%s n=%s protocol=%s", tc.window, d, n, protocol.name)
    return ps


def switching_map(z: int, x: Any, y: Any) -> Any:
    """zy + (1 − z)x for a boolean z: x when z = 0, y when z = 1."""
    z = int(bool(z))
    if isinstance(x, Packet):
        payload = tuple(z * yi + (1 - z) * xi for xi, yi in zip(x.payload, y.payload))
        chosen = y if z else x
        return Packet(payload=payload, destination=chosen.destination, priority=chosen.priority)
    if isinstance(x, tuple):
        return tuple(z * yi + (1 - z) * xi for xi, yi in zip(x, y))
    return z * y + (1 - z) * x


def switching_sheaf(alphabet: tuple) -> SetSheaf:
    """
    The sheaf switching one output between two inputs.

    Center vertex 0 holds (z, x, y); the edges to 1 and 2 extract x and y, the edge to 3
    carries zy + (1 − z)x. Leaf vertices and edges hold alphabet values.
    """

    X = from_maximal_cells([[0, 1], [0, 2], [0, 3]])
    center = frozenset((z, x, y) for z in (0, 1) for x in alphabet for y in alphabet)
    values = frozenset(alphabet)
    stalks = {c: center if c == Cell((0,)) else values for c in X.cells}

    def restrict(c: Cell, d: Cell, v: Any) -> Any:
        if c != Cell((0,)):
            return v
        z, x, y = v
        leaf = d.vertices[1]
        if leaf == 1:
            return x
        if leaf == 2:
            return y
        return switching_map(z, x, y)

    return SetSheaf(X, stalks, restrict)


def switching_sheaf_sections(alphabet: tuple) -> list[Section]:
    """Global sections of the switching sheaf, one per center value (z, x, y)."""
    sheaf = switching_sheaf(alphabet)
    center = Cell((0,))
    sections = []
    for value in sorted(sheaf.stalk(center), key=repr):
        values = {center: value}
        for leaf in (1, 2, 3):
            edge = Cell((0, leaf))
            values[edge] = sheaf.restrict(center, edge, value)
            values[Cell((leaf,))] = values[edge]
        section = Section(values)
        if sheaf.is_section(section):
            sections.append(section)
    return sections


# activation subsheaf


@dataclass(frozen=True)
class ActivationSubsheaf:
    """A_tD: the activation sheaf of slice t and the stalk surjections A_t(a)."""

    t: int
    sheaf: SetSheaf
    cells: Mapping[Cell, Cell]

    def project(self, cell: Cell, value: StalkValue) -> Any:
        """A_t(cell): the n2 component over vertices, the state component elsewhere."""
        if isinstance(value, NodeState):
            return value.cur_state
        return value.state


def activation_subsheaf(ps: PayloadSheaf, t: int) -> ActivationSubsheaf:
    """
    Raises:
        OutOfWindow: t outside the window.
    """
    ps.base.require_time(t)
    sheaf = activation_sheaf(ps.slices[t])
    cells = {c: relabel_to_nodes(c) for c in ps.base.slice_cells(t)}
    return ActivationSubsheaf(t=t, sheaf=sheaf, cells=cells)


def stalk_samples(ps: PayloadSheaf, cell: Cell, packets: tuple[Packet, ...]) -> Iterator[StalkValue]:
    """Every stalk value over cell whose packets are drawn from the given list."""

    (node, t) = cell.vertices[0]
    if cell.dim == 0:
        for prev, cur in product(ps.prev_alphabet(node, t), ps.state_alphabet(node, t)):
            for buffer in product(packets, repeat=ps.n):
                yield NodeState(prev, cur, buffer)
    elif ps.base.is_temporal(cell):
        for state in ps.state_alphabet(node, t):
            for queue in product(packets, repeat=ps.n - 1):
                yield QueueValue(state, queue)
    else:
        for state in ps.activation_stalk(t, relabel_to_nodes(cell)):
            for packet in packets:
                yield LinkValue(state, packet)


def morphism_violations(ps: PayloadSheaf, t: int, packets: tuple[Packet, ...]) -> list[tuple[Cell, Cell, StalkValue]]:
    """
    Sampled failures of A_t(b) ∘ D(a ⊂ b) = A_tD(a ⊂ b) ∘ A_t(a) on slice t.
    """
    sub = activation_subsheaf(ps, t)
    X = ps.base.complex
    bad = []
    for a in ps.base.slice_cells(t):
        for b in X.cofaces(a):
            if ps.base.is_temporal(b):
                continue
            for value in stalk_samples(ps, a, packets):
                left = sub.project(b, ps.restrict(a, b, value))
                right = sub.sheaf.restrict(sub.cells[a], sub.cells[b], sub.project(a, value))
                if left != right:
                    bad.append((a, b, value))
    return bad


# node threads


@dataclass(frozen=True)
class NodeThread:
    node: NodeId
    grouping: GroupingSheaf

    def project(self, section: Section) -> dict[Cell, tuple]:
        """
        State components of a payload section along this node's thread, as grouping
        sheaf values over the path complex on the window: (n2, n1) per vertex.
        """
        out: dict[Cell, tuple] = {}
        t0, t1 = self.grouping.window
        for t in range(t0, t1 + 1):
            value = section[Cell(((self.node, t),))]
            out[Cell((t,))] = (value.cur_state, value.prev_state)
        for t in range(t0, t1):
            value = section[Cell(((self.node, t), (self.node, t + 1)))]
            out[Cell((t, t + 1))] = (value.state,)
        return out


def node_thread_subsheaf(ps: PayloadSheaf, node: NodeId) -> NodeThread:
    """
    The state components along one node's temporal thread: a 2-term grouping sheaf
    valued in the node's neighbours, itself and ⊥.
    """
    if node not in ps.base.nodes:
        raise InvalidValue("unknown node", {"node": node})
    return NodeThread(node=node, grouping=grouping_sheaf(2, ps.thread_alphabet(node), ps.base.window))


# schedules and simulation


def schedule_sections(ps: PayloadSheaf, schedule: Schedule) -> dict[int, Section]:
    """
    Activation section of each timeslice for the scheduled transmitters.

    Raises:
        InconsistentSchedule: a slice's transmitters interfere; detail names the blank cell.
    """
    sections = {}
    for t in ps.base.times:
        X = ps.slices[t]
        sheaf = activation_sheaf(X)
        chosen = schedule.at(t)
        unknown = [n for n in chosen if Cell((n,)) not in X]
        if unknown:
            raise InconsistentSchedule("schedule names an unknown node", {"t": t, "nodes": unknown})
        section = section_from_transmitters(sheaf, chosen)
        if section is None:
            partial = Section({Cell((n,)): n for n in chosen})
            blank = extend_partial_section(sheaf, partial).blank
            raise InconsistentSchedule(
                "scheduled transmitters interfere",
                {"t": t, "transmitters": list(chosen), "blank": repr(blank)},
            )
        sections[t] = section
    return sections


def initial_states(
    ps: PayloadSheaf,
    schedule: Schedule,
    queues: Optional[Mapping[NodeId, Buffer]] = None,
) -> dict[NodeId, NodeState]:
    """States at t0 consistent with the schedule: empty receive buffers, given queues."""
    t0 = ps.base.window[0]
    s0 = schedule_sections(ps, schedule)[t0]
    queues = queues or {}
    states = {}
    for node in ps.base.nodes:
        queue = tuple(queues.get(node, (ps.zero,) * (ps.n - 1)))
        states[node] = NodeState(BOTTOM, s0[Cell((node,))], (ps.zero,) + queue)
    return states


def simulate(
    ps: PayloadSheaf,
    schedule: Schedule,
    initial: Optional[Mapping[NodeId, NodeState]] = None,
    injections: Optional[Mapping[tuple[NodeId, int], Packet]] = None,
) -> Section:
    """
    Advance the network slice by slice and return the full payload section.

    Raises:
        InconsistentSchedule: the schedule interferes, or the initial states disagree with it.
        InjectionConflict: no zero transmit slot is open. At t0 every slot is open; later
            only the head slot freed by a transmission in the previous slice.
    """
    tc = ps.base
    t0, t1 = tc.window
    activations = schedule_sections(ps, schedule)
    initial = dict(initial) if initial is not None else initial_states(ps, schedule)
    injections = dict(injections or {})
    for node, t in injections:
        tc.require_time(t)
        if node not in tc.nodes:
            raise InvalidValue("injection names an unknown node", {"node": node, "t": t})

    values: dict[Cell, StalkValue] = {}
    edge_values: dict[NodeId, QueueValue] = {}
    for t in tc.times:
        s_t = activations[t]
        states: dict[NodeId, NodeState] = {}
        for node in tc.nodes:
            cur = s_t[Cell((node,))]
            if t == t0:
                start = initial.get(node) or NodeState(BOTTOM, cur, (ps.zero,) * ps.n)
                if start.cur_state != cur:
                    raise InconsistentSchedule(
                        "initial state disagrees with the schedule",
                        {"node": node, "t": t, "initial": start.cur_state, "scheduled": cur},
                    )
                prev, receive, queue = start.prev_state, start.buffer[0], list(start.buffer[1:])
                open_slots = range(len(queue))
            else:
                edge = edge_values[node]
                prev, receive = edge.state, ps.zero
                if edge.state == node:
                    queue = [ps.zero] + list(edge.queue[:-1])
                    open_slots = range(1)
                else:
                    queue = list(edge.queue)
                    open_slots = range(0)
            packet = injections.pop((node, t), None)
            if packet is not None:
                slot = next((i for i in open_slots if queue[i].is_zero), None)
                if slot is None:
                    raise InjectionConflict(
                        "no free transmit slot for the injection",
                        {"node": node, "t": t},
                    )
                queue[slot] = packet
            states[node] = NodeState(prev, cur, (receive,) + tuple(queue))

        for node, state in states.items():
            cur = state.cur_state
            if cur is not BOTTOM and cur != node:
                heard = states[cur].tail
                if t == t0 and not state.receive_buffer.is_zero and state.receive_buffer != heard:
                    raise InconsistentSchedule(
                        "initial receive buffer disagrees with the transmitted packet",
                        {"node": node, "t": t},
                    )
                states[node] = NodeState(state.prev_state, cur, (heard,) + state.transmit_queue)

        for node, state in states.items():
            vertex = tc.vertex(node, t)
            ps.check_value(vertex, state)
            values[vertex] = state
            if t < t1:
                edge_values[node] = ps.toward_future(node, state)
                values[tc.temporal_edge(node, t)] = edge_values[node]
        for cell in tc.slice_cells(t):
            if cell.dim == 0:
                continue
            first = Cell((cell.vertices[0],))
            anchor = Cell(cell.vertices[:2]) if cell.dim > 1 else cell
            link = ps.restrict(first, anchor, values[first])
            values[cell] = link if anchor == cell else ps.cell_to_cell(t, relabel_to_nodes(cell), link)
        logger.debug("simulate: t=%s transmitters=%s", t, schedule.at(t))

    section = Section(values)
    first_bad = next(ps.violations(section), None)
    if first_bad is not None:
        c, d = first_bad
        raise InconsistentSchedule("no section exists for these inputs", {"face": repr(c), "coface": repr(d)})
    logger.info("simulate: window=%s cells=%s", tc.window, len(values))
    return section


def trace_records(section: Section) -> list[tuple[Cell, Any]]:
    """Ordered (cell, value) records."""
    return section.items()


# fixed activation subsheaf and throughput bound


def _selection_matrix(selection: Selection, n_in: int, d: int) -> sympy.Matrix:
    matrix = sympy.zeros(len(selection) * d, n_in * d)
    for i, j in enumerate(selection):
        if j is None:
            continue
        for k in range(d):
            matrix[i * d + k, j * d + k] = 1
    return matrix


def empty_tail_transmitters(section: Section) -> frozenset:
    """(node, t) where node transmits in the section with nothing in its transmit tail."""
    return frozenset(
        cell.vertices[0]
        for cell, value in section.items()
        if cell.dim == 0 and value.cur_state == cell.vertices[0][0] and value.tail.is_zero
    )


def fixed_activation_subsheaf(
    ps: PayloadSheaf,
    schedule: Schedule,
    empty_tails: Collection[tuple[NodeId, int]] = frozenset(),
) -> VectorSheaf:
    """
    𝒫: the part of 𝒟 whose state components agree with the schedule.

    Every state component is pinned, so each restriction becomes a fixed projection
    between copies of D. A scheduled transmitter advances its queue across the
    temporal edge, unless it is listed in empty_tails: then, as in 𝒟, the edge state
    is ⊥ and the queue is held on both sides.

    Raises:
        NonlinearProtocol: the receive queue function depends on the packet contents.
        InconsistentSchedule: the schedule interferes.
        InvalidValue: an empty_tails entry is not a scheduled transmitter.
    """
    if not ps.protocol.is_linear:
        raise NonlinearProtocol("𝒫 needs a linear receive queue function", {"protocol": ps.protocol.name})
    tc, n, d = ps.base, ps.n, ps.d
    activations = schedule_sections(ps, schedule)
    empty_tails = frozenset(empty_tails)
    for node, t in empty_tails:
        if t not in tc.times or node not in schedule.at(t):
            raise InvalidValue("empty tail listed for a node that is not scheduled to transmit", {"node": node, "t": t})

    def advances(node: NodeId, t: int) -> bool:
        return activations[t][Cell((node,))] == node and (node, t) not in empty_tails

    X = tc.complex
    keep_tail = list(range(1, n - 1)) + [None]
    shift = list(range(2, n)) + [None]
    hold = list(range(1, n))
    dims: dict[Cell, int] = {}
    restrictions: dict[tuple[Cell, Cell], sympy.Matrix] = {}
    for cell in X.sorted_cells():
        if cell.dim == 0:
            dims[cell] = n * d
        elif tc.is_temporal(cell):
            dims[cell] = (n - 1) * d
        else:
            dims[cell] = d
    for c in X.sorted_cells():
        for e in X.cofaces(c):
            if c.dim == 0:
                (node, t) = c.vertices[0]
                if tc.is_temporal(e):
                    if e.vertices[0] == c.vertices[0]:
                        state = activations[t][Cell((node,))]
                        if advances(node, t):
                            selection = keep_tail
                        elif state is not BOTTOM and state != node:
                            selection = ps.protocol.selection(n)
                        else:
                            selection = hold
                    else:
                        selection = shift if advances(node, t - 1) else hold
                    restrictions[(c, e)] = _selection_matrix(selection, n, d)
                else:
                    state = activations[t][Cell((node,))]
                    if state == node:
                        selection = [n - 1]
                    elif state is not BOTTOM and state in ps.activation_stalk(t, relabel_to_nodes(e)):
                        selection = [0]
                    else:
                        selection = [None]
                    restrictions[(c, e)] = _selection_matrix(selection, n, d)
            else:
                t = c.vertices[0][1]
                state = activations[t][relabel_to_nodes(c)]
                keep = state in ps.activation_stalk(t, relabel_to_nodes(e))
                restrictions[(c, e)] = _selection_matrix([0] if keep else [None], 1, d)
    return VectorSheaf(X, dims, restrictions)


def throughput_bound(P: VectorSheaf) -> int:
    """dim H^0(𝒫): an upper bound on deliverable data for the fixed schedule."""
    return len(global_section_space(P))


def section_data_vector(ps: PayloadSheaf, P: VectorSheaf, section: Section) -> sympy.Matrix:
    """The data components of a payload section, laid out as a 0-cochain of 𝒫."""
    entries: list = []
    for cell in P.base.cells_of_dim(0):
        for packet in section[cell].buffer:
            entries.extend(sympy.Rational(v.numerator, v.denominator) for v in packet.payload)
    return sympy.Matrix(len(entries), 1, entries)


@dataclass(frozen=True)
class RouteTrace:
    section: Section
    hops: list[tuple[NodeId, int]]


def route_section(ps: PayloadSheaf, schedule: Schedule, source: NodeId, packet: Packet) -> RouteTrace:
    """
    A single packet placed at the source's transmit tail at t0, zeros elsewhere,
    advanced through the schedule. hops lists (node, t) where the packet sits in a
    receive buffer.
    """
    t0 = ps.base.window[0]
    queue = (ps.zero,) * (ps.n - 2) + (packet,)
    initial = initial_states(ps, schedule, {source: queue})
    section = simulate(ps, schedule, initial)
    hops = [
        (cell.vertices[0][0], cell.vertices[0][1])
        for cell, value in section.items()
        if cell.dim == 0 and value.receive_buffer == packet
    ]
    hops.sort(key=lambda hop: (hop[1], repr(hop[0])))
    logger.debug("route_section: source=%s t0=%s hops=%s", source, t0, hops)
    return RouteTrace(section=section, hops=hops)
