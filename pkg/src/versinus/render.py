"""SVG frames and the animation manifest.

Output is byte-deterministic: fixed element order, every number printed
with four decimals, and no timestamps or environment data in any file.
"""

from __future__ import annotations

import json
import os
import shlex
import subprocess
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .errors import VersinusError
from .graph import WindowEngine
from .layout import GeometryParams, LayoutTable, SectorAssignment, SectorFractions
from .visual import BlinkSchedule, FrameScene, SizeConfig, build_scene

FRAME_PATTERN = "frame_%06d.svg"
MANIFEST_NAME = "manifest.json"
ENCODER_TEMPLATE = "ffmpeg -framerate {fps_hint} -i frame_%06d.svg -c:v libx264 -pix_fmt yuv420p versinus.mp4"

BACKGROUND = "#101418"
LABEL_RADIUS = 0.008
BATCH = 256


@dataclass(frozen=True)
class RenderConfig:
    canvas_px: tuple[int, int] = (1000, 600)
    fps_hint: int = 25
    blink: BlinkSchedule = field(default_factory=BlinkSchedule)
    sizes: SizeConfig = field(default_factory=SizeConfig)
    measure: str = "out:in"
    fractions: SectorFractions = field(default_factory=SectorFractions)
    geometry: GeometryParams = field(default_factory=GeometryParams)

    def __post_init__(self):
        _check_canvas(self.canvas_px)
        if self.fps_hint < 1:
            raise ValueError(f"fps_hint must be >= 1, got {self.fps_hint}")


def _check_canvas(canvas_px) -> None:
    width, height = canvas_px
    if width <= 0 or height <= 0:
        raise ValueError(f"canvas must be positive, got {width}x{height}")


def _num(value: float) -> str:
    return f"{value + 0.0:.4f}"


def render_frame(scene: FrameScene, canvas_px: tuple[int, int] = (1000, 600)) -> str:
    _check_canvas(canvas_px)
    width, height = canvas_px

    def px(point):
        x, y = point
        return _num(x * width), _num((1 - y) * height)

    w, h, zero = _num(width), _num(height), _num(0)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="{zero} {zero} {w} {h}" data-frame="{scene.frame_index}" data-window-start="{scene.window_start}">',
        f'<rect x="{zero}" y="{zero}" width="{w}" height="{h}" fill="{BACKGROUND}"/>',
        '<g class="edges" stroke="#c8c8c8" fill="none">',
    ]
    for e in sorted(scene.edges, key=lambda e: (e.source, e.target)):
        (x1, y1), (x2, y2) = px(e.start), px(e.end)
        out.append(
            f'<line data-from={quoteattr(e.source)} data-to={quoteattr(e.target)} '
            f'x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke-width="{_num(e.stroke_width * width)}" stroke-opacity="{_num(e.opacity)}"/>'
        )
    out.append("</g>")

    glyphs = sorted(scene.glyphs, key=lambda g: g.rank_label)
    out.append('<g class="glyphs">')
    for g in glyphs:
        cx, cy = px(g.center)
        r, gr, b = g.color
        out.append(
            f'<ellipse data-vertex={quoteattr(g.vertex)} data-rank="{g.rank_label}" cx="{cx}" cy="{cy}" '
            f'rx="{_num(g.width * width / 2)}" ry="{_num(g.height * height / 2)}" fill="rgb({r},{gr},{b})"/>'
        )
    out.append("</g>")

    out.append('<g class="ranks" font-family="sans-serif" text-anchor="middle">')
    radius = LABEL_RADIUS * height
    for g in glyphs:
        cx, cy = px(g.center)
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{_num(radius)}" fill="#ffffff"/>')
        out.append(
            f'<text x="{cx}" y="{_num((1 - g.center[1]) * height + radius * 0.6)}" '
            f'font-size="{_num(radius * 1.4)}" fill="#000000">{g.rank_label}</text>'
        )
    out.append("</g>")

    out.append('<g class="measures" font-family="sans-serif" fill="#ffe680">')
    for g in glyphs:
        if g.measure_text is None:
            continue
        cx = _num(g.center[0] * width + radius * 1.5)
        cy = _num((1 - g.center[1]) * height - radius * 1.5)
        out.append(
            f'<text data-vertex={quoteattr(g.vertex)} x="{cx}" y="{cy}" '
            f'font-size="{_num(radius * 1.6)}">{escape(g.measure_text)}</text>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _write_frame(job: tuple[Path, FrameScene, tuple[int, int]]) -> None:
    path, scene, canvas_px = job
    path.write_text(render_frame(scene, canvas_px), encoding="utf-8")


def _prepare_out_dir(out_dir: Path) -> None:
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise VersinusError(f"cannot create output directory {out_dir}: {exc}") from None
    if not out_dir.is_dir() or not os.access(out_dir, os.W_OK | os.X_OK):
        raise VersinusError(f"output directory {out_dir} is not writable")


def encoder_command(fps_hint: int) -> str:
    return ENCODER_TEMPLATE.format(fps_hint=fps_hint)


def render_animation(
    engine: WindowEngine,
    layout: LayoutTable,
    assignment: SectorAssignment,
    config: RenderConfig,
    out_dir: str | os.PathLike,
    jobs: int = 1,
) -> dict:
    """Render one SVG per window position and write ``manifest.json`` last.

    Scenes are built sequentially from the engine; file writing is spread over
    ``jobs`` worker processes. Output bytes do not depend on ``jobs``.
    """
    out_dir = Path(out_dir)
    _prepare_out_dir(out_dir)
    if engine.position != 0:
        raise VersinusError("engine must be positioned at window 0")

    records = []
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        batch = []

        def flush():
            if executor is None:
                for job in batch:
                    _write_frame(job)
            else:
                list(executor.map(_write_frame, batch, chunksize=16))
            batch.clear()

        for index, start, net in engine.windows():
            scene = build_scene(
                net, layout, assignment, index,
                blink=config.blink, sizes=config.sizes, measure=config.measure, window_start=start,
            )
            records.append({
                "index": index,
                "window_start": start,
                "active_vertices": len(scene.glyphs),
                "edge_count": len(net.edges),
            })
            batch.append((out_dir / (FRAME_PATTERN % index), scene, config.canvas_px))
            if len(batch) >= BATCH:
                flush()
        flush()
    finally:
        if executor is not None:
            executor.shutdown()

    manifest = {
        "delta": engine.config.delta,
        "total": engine.config.total,
        "stride": engine.config.stride,
        "frame_count": len(records),
        "canvas_px": list(config.canvas_px),
        "fps_hint": config.fps_hint,
        "fractions": config.fractions.as_dict(),
        "geometry": config.geometry.as_dict(),
        "direction": engine.direction,
        "measure": config.measure,
        "blink": {"period": config.blink.period, "duty": config.blink.duty},
        "encoder_hint": encoder_command(config.fps_hint),
        "frames": records,
    }
    (out_dir / MANIFEST_NAME).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return manifest


def run_encoder(out_dir: str | os.PathLike, fps_hint: int) -> int:
    """Run the suggested ffmpeg command inside ``out_dir`` (only when asked)."""
    return subprocess.call(shlex.split(encoder_command(fps_hint)), cwd=out_dir)
