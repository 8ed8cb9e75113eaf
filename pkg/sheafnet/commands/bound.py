"""`bound`: dim H^0 of the fixed-schedule payload sheaf."""

import logging

from sheafnet.commands.common import payload_inputs, render, schedule_echo
from sheafnet.schemas.reports import BoundReport
from sheafnet.schemas.run_config import RunConfig
from sheafnet.services.dot_export import time_complex_to_dot
from sheafnet.services.payload import fixed_activation_subsheaf, throughput_bound

logger = logging.getLogger(__name__)


def run(config: RunConfig) -> str:
    name, ps, _, schedule = payload_inputs(config)
    P = fixed_activation_subsheaf(ps, schedule)
    if config.output_format == "dot":
        return time_complex_to_dot(ps.base, name=name)
    bound = throughput_bound(P)
    logger.info("bound: network=%s window=%s bound=%s", name, ps.base.window, bound)
    return render(
        BoundReport(
            network=name,
            window=ps.base.window,
            protocol=ps.protocol.name,
            packet_dim=ps.d,
            queue_len=ps.n,
            schedule=schedule_echo(ps, schedule),
            bound=bound,
            cochain_dims=[P.total_dim(k) for k in range(P.base.dimension + 1)],
        )
    )
