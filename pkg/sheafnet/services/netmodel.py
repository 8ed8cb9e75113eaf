"""Link graphs and link complexes built from node signal levels and the decode threshold."""

import logging
import random
from itertools import combinations
from typing import Mapping, Optional, Sequence

import networkx as nx

from sheafnet.core.errors import InvalidValue
from sheafnet.core.geo import within_radius
from sheafnet.models.cell import SimplicialComplex
from sheafnet.models.network import Geometry, NetworkDescription, NodeId
from sheafnet.services.complex import clique_complex

logger = logging.getLogger(__name__)

# Side of the square region for random disk networks (meters)
RANDOM_REGION_SIDE_M = 100.0
# Coverage radius range for random disk networks (meters)
RANDOM_RADIUS_RANGE_M = (15.0, 45.0)


def link_graph(net: NetworkDescription, t: Optional[int] = None) -> nx.Graph:
    """
    Link graph at time t (or the time-invariant graph when t is None).

    An edge joins n_i and n_j iff s_i(n_j) > T and s_j(n_i) > T. A level equal to T
    does not link.
    """
    graph = nx.Graph()
    graph.add_nodes_from(net.nodes)
    for i, j in combinations(net.nodes, 2):
        forward = net.level(i, j, t)
        backward = net.level(j, i, t)
        if forward is None or backward is None:
            continue
        if forward > net.threshold and backward > net.threshold:
            graph.add_edge(i, j)
    return graph


def link_complex(net: NetworkDescription, t: Optional[int] = None) -> SimplicialComplex:
    """Clique complex of the link graph."""
    graph = link_graph(net, t)
    complex_ = clique_complex(graph)
    logger.info(
        "link_complex t=%s: nodes=%s links=%s cells=%s",
        t,
        graph.number_of_nodes(),
        graph.number_of_edges(),
        len(complex_),
    )
    return complex_


def disk_signals(
    positions: Mapping[NodeId, tuple[float, float]],
    radii: Mapping[NodeId, float],
    t_range: Optional[Sequence[int]] = None,
    threshold: float = 0.0,
) -> NetworkDescription:
    """
    Network whose coverage regions are closed disks.

    s_i(n_j, t) = T + 1 when n_j lies within radius_i of n_i; absent otherwise. The
    levels are time-invariant, either as untimed entries (t_range None) or repeated
    for every t in t_range.
    """
    for node in positions:
        if node not in radii:
            raise InvalidValue("radius missing for node", {"node": node})
        if radii[node] <= 0:
            raise InvalidValue("radius must be positive", {"node": node, "radius": radii[node]})
    nodes = tuple(sorted(positions))
    times: list[Optional[int]] = list(t_range) if t_range is not None else [None]
    signal: dict = {}
    for i in nodes:
        xi, yi = positions[i]
        for j in nodes:
            if i == j:
                continue
            xj, yj = positions[j]
            if within_radius(xi, yi, xj, yj, radii[i]):
                for t in times:
                    signal[(i, j, t)] = threshold + 1.0
    geometry = {n: Geometry(x=positions[n][0], y=positions[n][1], radius=radii[n]) for n in nodes}
    window = (min(t_range), max(t_range)) if t_range else None
    return NetworkDescription(nodes=nodes, signal=signal, threshold=threshold, geometry=geometry, window=window)


def random_disk_network(n_nodes: int, seed: int) -> NetworkDescription:
    """Seeded random disk network with nodes 0..n_nodes-1 in a square region."""
    rng = random.Random(seed)
    positions = {
        n: (rng.uniform(0.0, RANDOM_REGION_SIDE_M), rng.uniform(0.0, RANDOM_REGION_SIDE_M))
        for n in range(n_nodes)
    }
    radii = {n: rng.uniform(*RANDOM_RADIUS_RANGE_M) for n in range(n_nodes)}
    return disk_signals(positions, radii)
