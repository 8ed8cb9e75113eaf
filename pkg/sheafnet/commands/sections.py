"""`sections`: every interference-free transmitter set with its regions."""

import logging

from sheafnet.commands.common import cell_out, load_network, render, slice_times
from sheafnet.schemas.reports import NodeRegion, SectionOut, SectionsReport, SectionsSlice
from sheafnet.schemas.run_config import RunConfig
from sheafnet.services.activation import (
    active_region,
    activation_sheaf,
    enumerate_global_sections,
    maximal_transmitter_sets,
    region_of_influence_node,
    transmitters,
)
from sheafnet.services.dot_export import complex_to_dot
from sheafnet.services.netmodel import link_complex

logger = logging.getLogger(__name__)


def run(config: RunConfig) -> str:
    name, net = load_network(config)
    slices = []
    graphs = []
    for t in slice_times(config, net):
        X = link_complex(net, t)
        sheaf = activation_sheaf(X)
        sections = enumerate_global_sections(sheaf)
        if config.output_format == "dot":
            for i, s in enumerate(sections):
                graphs.append(complex_to_dot(X, s, name=f"{name}_t{t}_s{i}" if t is not None else f"{name}_s{i}"))
            continue
        out = []
        for s in sections:
            regions = [
                NodeRegion(
                    node=n,
                    active_region=[cell_out(c) for c in sorted(active_region(sheaf, s, n))],
                    region_of_influence=[cell_out(c) for c in sorted(region_of_influence_node(sheaf, s, n))],
                )
                for n in transmitters(s)
            ]
            out.append(SectionOut(transmitters=transmitters(s), regions=regions))
        maximal = [list(m) for m in maximal_transmitter_sets(sheaf)]
        slices.append(SectionsSlice(t=t, sections=out, maximal_sets=maximal))
        logger.info("sections: t=%s sections=%s", t, len(out))
    if config.output_format == "dot":
        return "".join(graphs)
    return render(SectionsReport(network=name, slices=slices))
