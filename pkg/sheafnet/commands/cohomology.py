"""`cohomology`: dimensions of the vector activation sheaf's cohomology."""

import logging

from sheafnet.commands.common import load_network, render, slice_times
from sheafnet.schemas.reports import CohomologyReport, CohomologySlice
from sheafnet.schemas.run_config import RunConfig
from sheafnet.services.dot_export import complex_to_dot
from sheafnet.services.netmodel import link_complex
from sheafnet.services.sheaflin import cohomology_dims, vector_activation_sheaf

logger = logging.getLogger(__name__)


def run(config: RunConfig) -> str:
    name, net = load_network(config)
    times = slice_times(config, net)
    if config.output_format == "dot":
        return "".join(complex_to_dot(link_complex(net, t), name=f"{name}_t{t}" if t is not None else name) for t in times)

    slices = []
    for t in times:
        X = link_complex(net, t)
        dims = cohomology_dims(vector_activation_sheaf(X))
        # H^0 counts the nodes, everything above vanishes
        expected = [len(X.vertices)] + [0] * (len(dims) - 1) if dims else []
        check = "PASS" if dims == expected else "FAIL"
        if check == "FAIL":
            logger.warning("cohomology check failed at t=%s: got %s, expected %s", t, dims, expected)
        slices.append(CohomologySlice(t=t, nodes=len(X.vertices), dims=dims, expected=expected, check=check))
    return render(CohomologyReport(network=name, slices=slices))
