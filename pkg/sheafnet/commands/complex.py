"""`complex`: cells, facets and broadcast-resource membership of the link complex."""

import logging

from sheafnet.commands.common import cell_out, load_network, render, slice_times
from sheafnet.schemas.reports import ComplexReport, ComplexSlice, NodeFacets
from sheafnet.schemas.run_config import RunConfig
from sheafnet.services.complex import facets
from sheafnet.services.dot_export import complex_to_dot
from sheafnet.services.netmodel import link_complex

logger = logging.getLogger(__name__)


def run(config: RunConfig) -> str:
    name, net = load_network(config)
    times = slice_times(config, net)
    if config.output_format == "dot":
        return "".join(complex_to_dot(link_complex(net, t), name=f"{name}_t{t}" if t is not None else name) for t in times)

    slices = []
    for t in times:
        X = link_complex(net, t)
        facet_list = facets(X)
        membership = [
            NodeFacets(node=n, facets=[i for i, f in enumerate(facet_list) if n in f.vertices])
            for n in X.vertices
        ]
        slices.append(
            ComplexSlice(
                t=t,
                dimension=X.dimension,
                euler_characteristic=X.euler_characteristic(),
                cells=[cell_out(c) for c in X.sorted_cells()],
                facets=[cell_out(f) for f in facet_list],
                broadcast_resources=membership,
            )
        )
    logger.info("complex: network=%s slices=%s", name, len(slices))
    return render(ComplexReport(network=name, slices=slices))
