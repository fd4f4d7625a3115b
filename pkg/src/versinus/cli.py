"""Command line entry point.

Subcommands: ``render`` (frames + manifest), ``inspect`` (ranking, sectors,
layout dump), ``oracle`` (incremental vs. batch check per window) and
``generate`` (seeded synthetic corpus). Options may also come from a JSON
file given with ``--config``; keys mirror the long flag names and explicit
flags win.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import ingest
from .errors import VersinusError
from .graph import DIRECTIONS, WindowConfig, WindowEngine, audit, build_network, window_count
from .layout import RANK_METRICS, GeometryParams, SectorFractions, dump_layout
from .pipeline import global_structure
from .render import RenderConfig, encoder_command, render_animation, run_encoder
from .synth import generate_stream
from .visual import MEASURES, BlinkSchedule

log = logging.getLogger("versinus")


def _pair(kind, sep=","):
    def convert(text: str):
        parts = text.lower().split(sep)
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"expected two values separated by {sep!r}, got {text!r}")
        try:
            return tuple(kind(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid value {text!r}") from None

    return convert


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _pipeline_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="JSON file with option defaults")
    p.add_argument("--input", required=False, help="message log (csv, jsonl or mbox)")
    p.add_argument("--format", choices=("csv", "jsonl", "mbox", "auto"), default="auto")
    p.add_argument("--window", type=_positive_int, default=400, help="messages per window (default 400)")
    p.add_argument("--max-messages", type=_positive_int, default=None, help="use only the first M messages")
    p.add_argument("--stride", type=_positive_int, default=1, help="messages between frames")
    p.add_argument("--direction", choices=DIRECTIONS, default="information")
    p.add_argument("--rank-by", choices=RANK_METRICS, default="strength")
    p.add_argument("--fractions", type=_pair(float), default=(0.05, 0.15), metavar="HUB,INTERMEDIARY")

    g = p.add_argument_group("geometry")
    d = GeometryParams()
    g.add_argument("--x-margin", type=float, default=d.x_margin)
    g.add_argument("--baseline", type=float, default=d.baseline, help="sinusoid baseline y")
    g.add_argument("--amplitude", type=float, default=d.amplitude)
    g.add_argument("--line-y", type=float, default=d.line_y, help="height of the peripheral line")
    g.add_argument("--periods", type=_positive_int, default=d.periods)
    g.add_argument("--decay", type=float, default=d.decay, help="width ratio between successive periods")

    p.add_argument("--canvas", type=_pair(int, "x"), default=(1000, 600), metavar="WxH")
    p.add_argument("--blink", type=_pair(int), default=(30, 6), metavar="PERIOD,DUTY")
    p.add_argument("--measure", choices=MEASURES, default="out:in")
    p.add_argument("--fps", type=_positive_int, default=25, help="frame rate hint for the encoder")
    p.add_argument("--out", help="output directory for frames")
    p.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1)
    p.add_argument("--encode", action="store_true", help="run the suggested ffmpeg command after rendering")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="versinus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _pipeline_options()
    sub.add_parser("render", parents=[common], help="render SVG frames and manifest")
    sub.add_parser("inspect", parents=[common], help="print ranking, sector sizes and layout")
    sub.add_parser("oracle", parents=[common], help="check incremental windows against batch rebuilds")

    gen = sub.add_parser("generate", help="write a seeded synthetic message stream")
    gen.add_argument("--config", help="JSON file with option defaults")
    gen.add_argument("--messages", type=_positive_int, default=2000)
    gen.add_argument("--senders", type=_positive_int, default=60)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--reply-prob", type=float, default=0.7)
    gen.add_argument("--ghost-prob", type=float, default=0.0)
    gen.add_argument("--format", choices=ingest.FORMATS, default="jsonl")
    gen.add_argument("--out", help="output file (default stdout)")
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    """Install defaults from ``--config`` on the chosen subparser."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config or not known.command:
        return
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    subparser = subparsers.choices.get(known.command)
    if subparser is None:
        return
    try:
        settings = json.loads(Path(known.config).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {known.config}: {exc}")
    if not isinstance(settings, dict):
        parser.error("config file must hold a JSON object")
    dests = {a.dest for a in subparser._actions}
    defaults = {}
    for key, value in settings.items():
        dest = key.lstrip("-").replace("-", "_")
        if dest not in dests or dest in ("help", "config"):
            parser.error(f"unknown config key {key!r}")
        if isinstance(value, list):
            sep = "x" if dest == "canvas" else ","
            value = sep.join(str(v) for v in value)
        elif not isinstance(value, (bool, str)) and value is not None:
            value = str(value)
        defaults[dest] = value
    subparser.set_defaults(**defaults)


def _configs(args, parser):
    try:
        fractions = SectorFractions(*args.fractions)
        geometry = GeometryParams(args.x_margin, args.baseline, args.amplitude, args.line_y, args.periods, args.decay)
        render_config = RenderConfig(
            canvas_px=tuple(args.canvas),
            fps_hint=args.fps,
            blink=BlinkSchedule(*args.blink),
            measure=args.measure,
            fractions=fractions,
            geometry=geometry,
        )
    except ValueError as exc:
        parser.error(str(exc))
    return fractions, geometry, render_config


def _load_messages(args):
    if not args.input:
        raise VersinusError("--input is required")
    data = Path(args.input).read_bytes()
    messages = ingest.parse(data, args.format)
    total = len(messages) if args.max_messages is None else args.max_messages
    if total > len(messages):
        raise VersinusError(f"--max-messages {total} exceeds the {len(messages)} messages in {args.input}")
    return messages[:total]


def _cmd_inspect(args, fractions, geometry, render_config) -> int:
    messages = _load_messages(args)
    g = global_structure(messages, args.direction, args.rank_by, fractions, geometry)
    a = g.assignment
    print(f"messages: {len(messages)}")
    print(f"vertices: {len(a.ranking)}")
    print(f"h={a.hubs}, i={a.intermediaries}, p={a.peripherals}")
    print("vertex\tsector\trank\tx\ty")
    sys.stdout.write(dump_layout(a, g.layout))
    return 0


def _cmd_oracle(args, fractions, geometry, render_config) -> int:
    messages = _load_messages(args)
    engine = WindowEngine(messages, WindowConfig(args.window, len(messages), args.stride), args.direction)
    failures = 0
    for index, start, net in engine.windows():
        batch = build_network(engine.window_messages(), args.direction, engine.id_index)
        ok = net == batch and not audit(net)
        failures += not ok
        print(f"window {index} start {start}: {'pass' if ok else 'FAIL'}")
    n = window_count(engine.config)
    if failures:
        print(f"{failures} of {n} windows differ")
        return 1
    print(f"all {n} windows match")
    return 0


def _cmd_render(args, fractions, geometry, render_config) -> int:
    if not args.out:
        raise VersinusError("--out is required for render")
    messages = _load_messages(args)
    g = global_structure(messages, args.direction, args.rank_by, fractions, geometry)
    engine = WindowEngine(messages, WindowConfig(args.window, len(messages), args.stride), args.direction)
    manifest = render_animation(engine, g.layout, g.assignment, render_config, args.out, jobs=args.jobs)
    if engine.warnings:
        log.warning("unresolved reply targets: %d", engine.warnings["unresolved_reply"])
    print(f"wrote {manifest['frame_count']} frames and manifest.json to {args.out}")
    command = encoder_command(render_config.fps_hint)
    if args.encode:
        return 0 if run_encoder(args.out, render_config.fps_hint) == 0 else 1
    print(f"suggested encoder (run inside {args.out}): {command}")
    return 0


def _cmd_generate(args) -> int:
    messages = generate_stream(args.messages, args.senders, args.seed, args.reply_prob, args.ghost_prob)
    data = ingest.WRITERS[args.format](messages)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0


COMMANDS = {"render": _cmd_render, "inspect": _cmd_inspect, "oracle": _cmd_oracle}


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        if args.command == "generate":
            if not 0 <= args.reply_prob <= 1 or not 0 <= args.ghost_prob <= 1:
                parser.error("probabilities must lie in [0, 1]")
            return _cmd_generate(args)
        if args.max_messages is not None and args.window > args.max_messages:
            parser.error(f"--window {args.window} exceeds --max-messages {args.max_messages}")
        configs = _configs(args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args, *configs)
    except (VersinusError, OSError) as exc:
        print(f"versinus: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
