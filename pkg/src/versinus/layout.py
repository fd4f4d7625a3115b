"""Global vertex ranking, hub/intermediary/peripheral sectors and fixed positions.

Canvas coordinates are in the unit square with y pointing up. Hubs sit on
the positive arch of a sinusoid, intermediaries on the negative arch, and
the periphery on a horizontal line above the crest.
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from .graph import InteractionNetwork

RANK_METRICS = ("strength", "degree")


class Sector(str, enum.Enum):
    HUB = "hub"
    INTERMEDIARY = "intermediary"
    PERIPHERAL = "peripheral"


def _exact(value: float) -> Fraction:
    # decimal reading of the float, so 0.15 * 100 is 15 and not 15.000000000000002
    return Fraction(repr(value))


@dataclass(frozen=True)
class SectorFractions:
    hub: float = 0.05
    intermediary: float = 0.15

    def __post_init__(self):
        for name in ("hub", "intermediary"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise ValueError(f"{name} fraction must lie in [0, 1], got {value}")
        if _exact(self.hub) + _exact(self.intermediary) > 1:
            raise ValueError("hub and intermediary fractions sum to more than 1")

    @property
    def peripheral(self) -> float:
        return float(1 - _exact(self.hub) - _exact(self.intermediary))

    def as_dict(self) -> dict:
        return {"hub": self.hub, "intermediary": self.intermediary, "peripheral": self.peripheral}


@dataclass(frozen=True)
class GeometryParams:
    x_margin: float = 0.05
    baseline: float = 0.45
    amplitude: float = 0.25
    line_y: float = 0.85
    periods: int = 1
    decay: float = 1.0

    def __post_init__(self):
        if not 0 < self.x_margin < 0.5:
            raise ValueError(f"x_margin must lie in (0, 0.5), got {self.x_margin}")
        if not self.amplitude > 0:
            raise ValueError(f"amplitude must be positive, got {self.amplitude}")
        if not self.baseline + self.amplitude < self.line_y <= 1:
            raise ValueError(
                f"need baseline + amplitude < line_y <= 1, got {self.baseline} + {self.amplitude} vs {self.line_y}"
            )
        if not (isinstance(self.periods, int) and self.periods >= 1):
            raise ValueError(f"periods must be a positive integer, got {self.periods!r}")
        if not self.decay > 0:
            raise ValueError(f"decay must be positive, got {self.decay}")

    def as_dict(self) -> dict:
        return asdict(self)

    # Segment j of the u-axis carries one full period; its width is
    # proportional to decay**j, so decay > 1 lowers the frequency to the right.
    def _segment_edges(self) -> list[float]:
        widths = [self.decay**j for j in range(self.periods)]
        total = sum(widths)
        edges = [0.0]
        for w in widths:
            edges.append(edges[-1] + w / total)
        edges[-1] = 1.0
        return edges

    def phase(self, u: float) -> float:
        """Sinusoid phase at normalized abscissa ``u`` in [0, 1]."""
        if self.periods == 1:
            return 2 * math.pi * u
        edges = self._segment_edges()
        j = min(bisect.bisect_right(edges, u) - 1, self.periods - 1)
        frac = (u - edges[j]) / (edges[j + 1] - edges[j])
        return 2 * math.pi * (j + frac)

    def u_at_phase(self, phi: float) -> float:
        if self.periods == 1:
            return phi / (2 * math.pi)
        edges = self._segment_edges()
        turns = phi / (2 * math.pi)
        j = min(int(turns), self.periods - 1)
        return edges[j] + (turns - j) * (edges[j + 1] - edges[j])

    def total_phase(self) -> float:
        return 2 * math.pi * self.periods

    def x_of_u(self, u: float) -> float:
        return self.x_margin + u * (1 - 2 * self.x_margin)

    def u_of_x(self, x: float) -> float:
        return (x - self.x_margin) / (1 - 2 * self.x_margin)

    def curve_y(self, x: float) -> float:
        return self.baseline + self.amplitude * math.sin(self.phase(self.u_of_x(x)))


@dataclass(frozen=True)
class SectorAssignment:
    ranking: tuple[str, ...]
    sector: Mapping[str, Sector]
    global_rank: Mapping[str, int]
    hubs: int
    intermediaries: int
    peripherals: int

    def members(self, sector: Sector) -> tuple[str, ...]:
        if sector is Sector.HUB:
            return self.ranking[: self.hubs]
        if sector is Sector.INTERMEDIARY:
            return self.ranking[self.hubs : self.hubs + self.intermediaries]
        return self.ranking[self.hubs + self.intermediaries :]


@dataclass(frozen=True)
class LayoutTable:
    position: Mapping[str, tuple[float, float]]

    def __getitem__(self, vertex: str) -> tuple[float, float]:
        return self.position[vertex]

    def __contains__(self, vertex: str) -> bool:
        return vertex in self.position

    def __len__(self) -> int:
        return len(self.position)


def rank_vertices(global_net: InteractionNetwork, by: str = "strength") -> list[str]:
    """Most connected first; ties by more messages sent, then by name."""
    if by not in RANK_METRICS:
        raise ValueError(f"rank metric must be one of {RANK_METRICS}, got {by!r}")

    def key(v):
        s = global_net.vertices[v]
        score = s.strength if by == "strength" else s.degree
        return (-score, -s.message_count, v)

    return sorted(global_net.vertices, key=key)


def sector_sizes(n: int, fractions: SectorFractions) -> tuple[int, int, int]:
    h = min(math.ceil(_exact(fractions.hub) * n), n)
    i = min(math.ceil(_exact(fractions.intermediary) * n), n - h)
    return h, i, n - h - i


def partition(ranking: Sequence[str], fractions: SectorFractions = SectorFractions()) -> SectorAssignment:
    ranking = tuple(ranking)
    h, i, p = sector_sizes(len(ranking), fractions)
    sector = {}
    for k, v in enumerate(ranking):
        sector[v] = Sector.HUB if k < h else Sector.INTERMEDIARY if k < h + i else Sector.PERIPHERAL
    return SectorAssignment(
        ranking=ranking,
        sector=MappingProxyType(sector),
        global_rank=MappingProxyType({v: k + 1 for k, v in enumerate(ranking)}),
        hubs=h,
        intermediaries=i,
        peripherals=p,
    )


def place(assignment: SectorAssignment, geometry: GeometryParams = GeometryParams()) -> LayoutTable:
    positions: dict[str, tuple[float, float]] = {}
    half = geometry.total_phase() / 2

    def on_curve(members, phase_start):
        n = len(members)
        for k, v in enumerate(members):
            phi = phase_start + half * (k + 0.5) / n
            x = geometry.x_of_u(geometry.u_at_phase(phi))
            positions[v] = (x, geometry.baseline + geometry.amplitude * math.sin(phi))

    on_curve(assignment.members(Sector.HUB), 0.0)
    on_curve(assignment.members(Sector.INTERMEDIARY), half)
    periphery = assignment.members(Sector.PERIPHERAL)
    for k, v in enumerate(periphery):
        positions[v] = (geometry.x_of_u((k + 0.5) / len(periphery)), geometry.line_y)
    return LayoutTable(MappingProxyType(positions))


def dump_layout(assignment: SectorAssignment, table: LayoutTable) -> str:
    rows = []
    for v in assignment.ranking:
        x, y = table[v]
        rows.append(f"{v}\t{assignment.sector[v].value}\t{assignment.global_rank[v]}\t{x:.6f}\t{y:.6f}\n")
    return "".join(rows)
