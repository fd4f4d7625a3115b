"""Versinus: sliding-window animations of reply-interaction networks."""

from .errors import ConsistencyError, ParseError, VersinusError, WindowError
from .graph import (
    InteractionNetwork,
    VertexStats,
    WindowConfig,
    WindowEngine,
    audit,
    build_network,
    resolve_contribution,
    window_advance,
    window_count,
    window_init,
)
from .ingest import Message, detect_format, parse, parse_csv, parse_jsonl, parse_mbox
from .layout import GeometryParams, LayoutTable, Sector, SectorAssignment, SectorFractions, partition, place, rank_vertices
from .pipeline import GlobalStructure, global_structure
from .render import RenderConfig, render_animation, render_frame
from .visual import BlinkSchedule, FrameScene, SizeConfig, build_scene, glyph_color, glyph_size

__version__ = "0.1.0"
