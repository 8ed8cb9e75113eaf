"""Worked example networks and schedules, as documents."""

from sheafnet.schemas.network import NetworkDocument, SignalEntry
from sheafnet.schemas.schedule import RouteEntry, ScheduleDocument, SliceEntry


def _links(pairs, level: float = 1.0, t=None) -> list[SignalEntry]:
    return [SignalEntry(source=a, target=b, level=level, t=t) for a, b in pairs]


def path3() -> NetworkDocument:
    """1 - 2 - 3: nodes 1 and 3 both reach 2 but not each other."""
    return NetworkDocument(name="path3", nodes=[1, 2, 3], signals=_links([(1, 2), (2, 3)]), symmetric=True, threshold=0.5)


def triangle() -> NetworkDocument:
    return NetworkDocument(
        name="triangle", nodes=[1, 2, 3], signals=_links([(1, 2), (1, 3), (2, 3)]), symmetric=True, threshold=0.5
    )


def single() -> NetworkDocument:
    return NetworkDocument(name="single", nodes=[1], threshold=0.5)


def empty() -> NetworkDocument:
    return NetworkDocument(name="empty")


def two_components() -> NetworkDocument:
    return NetworkDocument(
        name="two_components", nodes=[1, 2, 3, 4], signals=_links([(1, 2), (3, 4)]), symmetric=True, threshold=0.5
    )


def six_node() -> NetworkDocument:
    """
    A chain 1-...-6 whose links change: at t=1 node 1 also reaches 3, at t=2 the
    5-6 link fades below threshold.
    """
    return NetworkDocument(
        name="six_node",
        nodes=[1, 2, 3, 4, 5, 6],
        signals=_links([(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)])
        + _links([(1, 3)], t=1)
        + _links([(5, 6)], level=0.0, t=2),
        symmetric=True,
        threshold=0.5,
        window=(0, 2),
    )


def relay2() -> NetworkDocument:
    return NetworkDocument(name="relay2", nodes=[1, 2], signals=_links([(1, 2)]), symmetric=True, threshold=0.5, window=(0, 1))


def relay2_schedule() -> ScheduleDocument:
    """Node 1 sends at t=0; the packet lands in node 2's receive buffer."""
    return ScheduleDocument(
        window=(0, 1),
        slices=[SliceEntry(t=0, transmitters=[1]), SliceEntry(t=1, transmitters=[])],
        route=RouteEntry(source=1, payload=[1]),
    )


def path3_idle_schedule() -> ScheduleDocument:
    return ScheduleDocument(window=(0, 1))


def path3_interfering_schedule() -> ScheduleDocument:
    """Nodes 1 and 3 transmit together and collide at node 2."""
    return ScheduleDocument(window=(0, 0), slices=[SliceEntry(t=0, transmitters=[1, 3])])


NETWORKS = {
    "path3": path3,
    "triangle": triangle,
    "single": single,
    "empty": empty,
    "two_components": two_components,
    "six_node": six_node,
    "relay2": relay2,
}

SCHEDULES = {
    "relay2_schedule": relay2_schedule,
    "path3_idle_schedule": path3_idle_schedule,
    "path3_interfering_schedule": path3_interfering_schedule,
}
