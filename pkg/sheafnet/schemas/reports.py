"""Report schemas emitted by the CLI commands."""

from typing import Any, Literal, Optional

from pydantic import BaseModel

from sheafnet.schemas.network import NodeIdT

CellOut = list[Any]


class ReportBase(BaseModel):
    network: str
    generated_at: Optional[str] = None


class NodeFacets(BaseModel):
    """Facets (by index into `facets`) whose broadcast resource a node shares."""

    node: NodeIdT
    facets: list[int]


class ComplexSlice(BaseModel):
    t: Optional[int] = None
    dimension: int
    euler_characteristic: int
    cells: list[CellOut]
    facets: list[CellOut]
    broadcast_resources: list[NodeFacets]


class ComplexReport(ReportBase):
    command: Literal["complex"] = "complex"
    slices: list[ComplexSlice]


class NodeRegion(BaseModel):
    node: NodeIdT
    active_region: list[CellOut]
    region_of_influence: list[CellOut]


class SectionOut(BaseModel):
    transmitters: list[NodeIdT]
    regions: list[NodeRegion]


class SectionsSlice(BaseModel):
    t: Optional[int] = None
    sections: list[SectionOut]
    maximal_sets: list[list[NodeIdT]]


class SectionsReport(ReportBase):
    command: Literal["sections"] = "sections"
    slices: list[SectionsSlice]


class CohomologySlice(BaseModel):
    t: Optional[int] = None
    nodes: int
    dims: list[int]
    expected: list[int]
    check: Literal["PASS", "FAIL"]


class CohomologyReport(ReportBase):
    command: Literal["cohomology"] = "cohomology"
    slices: list[CohomologySlice]


class PacketOut(BaseModel):
    payload: list[str]
    destination: Optional[NodeIdT] = None
    priority: str = "LOW"


class TraceRecord(BaseModel):
    """One (cell, value) record; `prev_state` is set on vertices only."""

    cell: CellOut
    kind: Literal["vertex", "temporal", "link"]
    prev_state: Optional[NodeIdT] = None
    state: Optional[NodeIdT] = None
    packets: list[PacketOut]


class SliceEcho(BaseModel):
    t: int
    transmitters: list[NodeIdT]


class Hop(BaseModel):
    node: NodeIdT
    t: int


class PayloadReport(ReportBase):
    window: tuple[int, int]
    protocol: str
    packet_dim: int
    queue_len: int
    schedule: list[SliceEcho]


class SimulateReport(PayloadReport):
    command: Literal["simulate"] = "simulate"
    trace: list[TraceRecord]
    hops: Optional[list[Hop]] = None


class BoundReport(PayloadReport):
    command: Literal["bound"] = "bound"
    bound: int
    cochain_dims: list[int]
