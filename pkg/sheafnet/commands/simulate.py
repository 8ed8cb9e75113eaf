"""`simulate`: the full payload section for a schedule, as an ordered trace."""

import logging
from typing import Any

from sheafnet.commands.common import payload_inputs, render, schedule_echo
from sheafnet.core.errors import InvalidValue
from sheafnet.models.cell import Cell
from sheafnet.models.payload import LinkValue, NodeState, Packet, QueueValue
from sheafnet.schemas.reports import Hop, PacketOut, SimulateReport, TraceRecord
from sheafnet.schemas.run_config import RunConfig
from sheafnet.services.dot_export import time_complex_to_dot
from sheafnet.services.payload import PayloadSheaf, initial_states, route_section, simulate, trace_records

logger = logging.getLogger(__name__)


def packet_out(packet: Packet) -> PacketOut:
    return PacketOut(
        payload=[str(v) for v in packet.payload],
        destination=packet.destination,
        priority=packet.priority.value,
    )


def trace_record(cell: Cell, value: Any) -> TraceRecord:
    vertices = [list(v) for v in cell.vertices]
    if isinstance(value, NodeState):
        return TraceRecord(
            cell=vertices,
            kind="vertex",
            prev_state=value.prev_state,
            state=value.cur_state,
            packets=[packet_out(p) for p in value.buffer],
        )
    if isinstance(value, QueueValue):
        return TraceRecord(cell=vertices, kind="temporal", state=value.state, packets=[packet_out(p) for p in value.queue])
    if isinstance(value, LinkValue):
        return TraceRecord(cell=vertices, kind="link", state=value.state, packets=[packet_out(value.packet)])
    raise InvalidValue("unexpected stalk value in trace", {"cell": repr(cell)})


def _initial_queues(ps: PayloadSheaf, doc) -> dict:
    queues = {}
    for entry in doc.initial_queues:
        if entry.node not in ps.base.nodes:
            raise InvalidValue("initial queue names an unknown node", {"node": entry.node})
        if len(entry.queue) != ps.n - 1:
            raise InvalidValue("initial queue must have queue_len - 1 slots", {"node": entry.node, "expected": ps.n - 1})
        queues[entry.node] = tuple(p.to_packet(ps.d) if p is not None else Packet.zero(ps.d) for p in entry.queue)
    return queues


def run(config: RunConfig) -> str:
    name, ps, doc, schedule = payload_inputs(config)
    hops = None
    if doc.route is not None:
        route = route_section(ps, schedule, doc.route.source, doc.route.to_packet(ps.d))
        section = route.section
        hops = [Hop(node=node, t=t) for node, t in route.hops]
    else:
        initial = initial_states(ps, schedule, _initial_queues(ps, doc))
        injections = {(e.node, e.t): e.to_packet(ps.d) for e in doc.injections}
        section = simulate(ps, schedule, initial, injections)

    if config.output_format == "dot":
        return time_complex_to_dot(ps.base, section, name=name)
    report = SimulateReport(
        network=name,
        window=ps.base.window,
        protocol=ps.protocol.name,
        packet_dim=ps.d,
        queue_len=ps.n,
        schedule=schedule_echo(ps, schedule),
        trace=[trace_record(c, v) for c, v in trace_records(section)],
        hops=hops,
    )
    logger.info("simulate: network=%s records=%s", name, len(report.trace))
    return render(report)
