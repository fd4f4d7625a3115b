from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import INFORMATION, InteractionNetwork, build_network
from .ingest import Message
from .layout import (
    GeometryParams,
    LayoutTable,
    SectorAssignment,
    SectorFractions,
    partition,
    place,
    rank_vertices,
)


@dataclass(frozen=True)
class GlobalStructure:
    """Everything fixed over the whole animation: ranking, sectors, positions."""

    network: InteractionNetwork
    assignment: SectorAssignment
    layout: LayoutTable


def global_structure(
    messages: Sequence[Message],
    direction: str = INFORMATION,
    rank_by: str = "strength",
    fractions: SectorFractions = SectorFractions(),
    geometry: GeometryParams = GeometryParams(),
) -> GlobalStructure:
    net = build_network(messages, direction)
    assignment = partition(rank_vertices(net, rank_by), fractions)
    return GlobalStructure(net, assignment, place(assignment, geometry))
