"""Render a short versinus animation from a synthetic mailing list.

    python scripts/demo_render.py --out demo_frames
"""

import argparse
import logging

from versinus.graph import WindowConfig, WindowEngine
from versinus.pipeline import global_structure
from versinus.render import RenderConfig, encoder_command, render_animation
from versinus.synth import generate_stream


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--messages", type=int, default=3000)
    parser.add_argument("--senders", type=int, default=120)
    parser.add_argument("--window", type=int, default=400)
    parser.add_argument("--stride", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", default="demo_frames")
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO)

    msgs = generate_stream(args.messages, args.senders, seed=args.seed)
    g = global_structure(msgs)
    a = g.assignment
    logging.info("%d vertices: %d hubs, %d intermediary, %d peripheral", len(a.ranking), a.hubs, a.intermediaries, a.peripherals)
    engine = WindowEngine(msgs, WindowConfig(args.window, len(msgs), args.stride))
    manifest = render_animation(engine, g.layout, g.assignment, RenderConfig(), args.out, jobs=args.jobs)
    logging.info("wrote %d frames to %s", manifest["frame_count"], args.out)
    print(f"cd {args.out} && {encoder_command(manifest['fps_hint'])}")


if __name__ == "__main__":
    main()
