"""Resolved options for one CLI invocation."""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from sheafnet.core.config import settings

Command = Literal["complex", "sections", "cohomology", "simulate", "bound"]
OutputFormat = Literal["report", "dot"]


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    network: Optional[str] = None
    schedule: Optional[str] = None
    window: Optional[tuple[int, int]] = None
    threshold: Optional[float] = Field(default=None, allow_inf_nan=False)
    protocol: str = Field(default_factory=lambda: settings.default_protocol)
    packet_dim: int = Field(default_factory=lambda: settings.default_packet_dim, ge=1)
    queue_len: int = Field(default_factory=lambda: settings.default_queue_len, ge=2)
    output_format: OutputFormat = "report"
    random_nodes: Optional[int] = Field(default=None, ge=1)
