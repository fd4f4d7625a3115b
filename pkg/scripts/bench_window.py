"""Time incremental window maintenance against rebuilding every window.

With a 400-message window over 20000 messages the incremental
engine touches two messages per step; a rebuild touches all 400.
"""

import argparse
import time

from versinus.graph import WindowConfig, WindowEngine, build_id_index, build_network
from versinus.synth import generate_stream


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--messages", type=int, default=20000)
    parser.add_argument("--senders", type=int, default=500)
    parser.add_argument("--window", type=int, default=400)
    parser.add_argument("--check-every", type=int, default=500, help="compare with a rebuild every N windows")
    args = parser.parse_args()

    msgs = generate_stream(args.messages, args.senders, seed=1)
    config = WindowConfig(args.window, len(msgs))

    t0 = time.perf_counter()
    engine = WindowEngine(msgs, config)
    steps = 0
    while engine.position + 1 < engine.window_count:
        engine.advance()
        steps += 1
        if steps % args.check_every == 0:
            start = engine.window_start
            assert engine.current == build_network(msgs[start : start + args.window], id_index=engine.id_index)
    incremental = time.perf_counter() - t0

    index = build_id_index(msgs)
    t0 = time.perf_counter()
    for start in range(engine.window_count):
        build_network(msgs[start : start + args.window], id_index=index)
    rebuild = time.perf_counter() - t0

    print(f"windows: {engine.window_count}")
    print(f"incremental: {incremental:.2f} s  rebuild: {rebuild:.2f} s  speedup: {rebuild / incremental:.1f}x")


if __name__ == "__main__":
    main()
