"""Glyph and edge encodings for one window.

Glyph height follows out-strength and width follows in-strength, both
log-compressed against the frame maximum. Color encodes out/in asymmetry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConsistencyError
from .graph import InteractionNetwork, VertexStats
from .layout import LayoutTable, SectorAssignment

MEASURES = ("out:in", "out_strength", "in_strength", "total", "rank")

RGB = tuple[int, int, int]


@dataclass(frozen=True)
class BlinkSchedule:
    period: int = 30
    duty: int = 6

    def __post_init__(self):
        if not 1 <= self.duty <= self.period:
            raise ValueError(f"blink needs 1 <= duty <= period, got period={self.period}, duty={self.duty}")

    def shows(self, frame_index: int) -> bool:
        return frame_index % self.period < self.duty


@dataclass(frozen=True)
class SizeConfig:
    min_size: float = 0.004
    max_size: float = 0.02
    edge_width: float = 0.003

    def __post_init__(self):
        if not 0 < self.min_size <= self.max_size:
            raise ValueError("glyph sizes need 0 < min_size <= max_size")
        if not self.edge_width > 0:
            raise ValueError("edge_width must be positive")


@dataclass(frozen=True)
class GlyphSpec:
    vertex: str
    center: tuple[float, float]
    width: float
    height: float
    color: RGB
    rank_label: int
    measure_text: str | None = None


@dataclass(frozen=True)
class EdgeSpec:
    source: str
    target: str
    start: tuple[float, float]
    end: tuple[float, float]
    stroke_width: float
    opacity: float


@dataclass(frozen=True)
class FrameScene:
    frame_index: int
    window_start: int
    glyphs: tuple[GlyphSpec, ...]
    edges: tuple[EdgeSpec, ...]


def _log_ratio(value: int, frame_max: int) -> float:
    if frame_max <= 0:
        return 0.0
    return math.log1p(value) / math.log1p(frame_max)


def glyph_size(value: int, frame_max: int, min_size: float, max_size: float) -> float:
    return min_size + (max_size - min_size) * _log_ratio(value, frame_max)


def glyph_color(stats: VertexStats) -> RGB:
    """Blue for net receivers, white for balanced, red for net senders."""
    total = stats.out_strength + stats.in_strength
    c = 0.0 if total == 0 else (stats.out_strength - stats.in_strength) / total
    fade = int(255 * (1 - abs(c)))
    if c >= 0:
        return (255, fade, fade)
    return (fade, fade, 255)


def measure_text(stats: VertexStats, rank: int, measure: str) -> str:
    if measure == "out:in":
        return f"{stats.out_strength}:{stats.in_strength}"
    if measure == "out_strength":
        return str(stats.out_strength)
    if measure == "in_strength":
        return str(stats.in_strength)
    if measure == "total":
        return str(stats.strength)
    if measure == "rank":
        return str(rank)
    raise ValueError(f"measure must be one of {MEASURES}, got {measure!r}")


def build_scene(
    window_net: InteractionNetwork,
    layout: LayoutTable,
    assignment: SectorAssignment,
    frame_index: int,
    blink: BlinkSchedule = BlinkSchedule(),
    sizes: SizeConfig = SizeConfig(),
    measure: str = "out:in",
    window_start: int = 0,
) -> FrameScene:
    if measure not in MEASURES:
        raise ValueError(f"measure must be one of {MEASURES}, got {measure!r}")
    active = {
        v: s for v, s in window_net.vertices.items() if s.strength + s.message_count > 0
    }
    for v in active:
        if v not in layout or v not in assignment.global_rank:
            raise ConsistencyError(f"vertex {v!r} is active in frame {frame_index} but has no layout slot")

    max_out = max((s.out_strength for s in active.values()), default=0)
    max_in = max((s.in_strength for s in active.values()), default=0)
    show = blink.shows(frame_index)

    glyphs = []
    for v in sorted(active, key=assignment.global_rank.__getitem__):
        s = active[v]
        rank = assignment.global_rank[v]
        glyphs.append(GlyphSpec(
            vertex=v,
            center=layout[v],
            width=glyph_size(s.in_strength, max_in, sizes.min_size, sizes.max_size),
            height=glyph_size(s.out_strength, max_out, sizes.min_size, sizes.max_size),
            color=glyph_color(s),
            rank_label=rank,
            measure_text=measure_text(s, rank, measure) if show else None,
        ))

    drawn = sorted((a, b, w) for (a, b), w in window_net.edges.items() if a != b)
    w_max = max((w for _, _, w in drawn), default=0)
    edges = []
    for a, b, w in drawn:
        ratio = _log_ratio(w, w_max)
        edges.append(EdgeSpec(
            source=a,
            target=b,
            start=layout[a],
            end=layout[b],
            stroke_width=sizes.edge_width * ratio,
            opacity=0.25 + 0.75 * ratio,
        ))
    return FrameScene(frame_index, window_start, tuple(glyphs), tuple(edges))
