"""Input loading and report rendering shared by the command modules."""

import logging
from datetime import datetime, timezone
from typing import Any, Optional

from sheafnet.core.config import settings
from sheafnet.core.errors import ParseError
from sheafnet.models.cell import Cell
from sheafnet.models.network import NetworkDescription
from sheafnet.models.payload import Schedule
from sheafnet.schemas.loader import load_document
from sheafnet.schemas.network import NetworkDocument
from sheafnet.schemas.reports import ReportBase, SliceEcho
from sheafnet.schemas.run_config import RunConfig
from sheafnet.schemas.schedule import ScheduleDocument
from sheafnet.services.netmodel import random_disk_network
from sheafnet.services.payload import PayloadSheaf, payload_sheaf
from sheafnet.services.temporal import time_dependent_link_complex

logger = logging.getLogger(__name__)


def load_network(config: RunConfig) -> tuple[str, NetworkDescription]:
    """Network named by --network, or a seeded random disk network with --random."""
    if config.random_nodes is not None:
        net = random_disk_network(config.random_nodes, settings.report_seed)
        return f"random-disk-{config.random_nodes}-seed-{settings.report_seed}", net
    if not config.network:
        raise ParseError("--network is required", field="--network")
    doc = load_document(config.network, NetworkDocument)
    net = doc.to_network(threshold=config.threshold, window=config.window)
    logger.info("loaded network %s: nodes=%s signals=%s", doc.name, len(net.nodes), len(net.signal))
    return doc.name, net


def load_schedule(config: RunConfig) -> ScheduleDocument:
    if not config.schedule:
        raise ParseError("--schedule is required", field="--schedule")
    return load_document(config.schedule, ScheduleDocument)


def slice_times(config: RunConfig, net: NetworkDescription) -> list[Optional[int]]:
    """Timeslices a static-analysis command reports on; [None] for a time-invariant network."""
    window = config.window or net.window
    if window is None and net.times():
        window = (net.times()[0], net.times()[-1])
    if window is None:
        return [None]
    return list(range(window[0], window[1] + 1))


def payload_window(config: RunConfig, net: NetworkDescription, doc: ScheduleDocument) -> tuple[int, int]:
    if config.window:
        return config.window
    for window in (doc.window, net.window):
        if window:
            return window
    times = sorted(set(net.times()) | set(doc.times()))
    if times:
        return (times[0], times[-1])
    return (0, 0)


def cell_out(cell: Cell) -> list[Any]:
    return list(cell.vertices)


def render(report: ReportBase) -> str:
    """Deterministic JSON; generated_at only when timestamps are enabled."""
    if settings.include_timestamps:
        report = report.model_copy(update={"generated_at": datetime.now(timezone.utc).isoformat()})
        return report.model_dump_json(indent=2) + "\n"
    return report.model_dump_json(indent=2, exclude={"generated_at"}) + "\n"


def payload_inputs(config: RunConfig) -> tuple[str, PayloadSheaf, ScheduleDocument, Schedule]:
    """Network, schedule and payload sheaf for simulate and bound."""
    name, net = load_network(config)
    doc = load_schedule(config)
    window = payload_window(config, net, doc)
    tc = time_dependent_link_complex(net, window)
    ps = payload_sheaf(tc, config.packet_dim, config.queue_len, config.protocol)
    return name, ps, doc, doc.to_schedule()


def schedule_echo(ps: PayloadSheaf, schedule: Schedule) -> list[SliceEcho]:
    return [SliceEcho(t=t, transmitters=list(schedule.at(t))) for t in ps.base.times]
