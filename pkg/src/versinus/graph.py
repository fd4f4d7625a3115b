"""Reply-interaction networks and the sliding message window.

A reply from ``b`` to a message written by ``a`` is an edge ``a -> b``
(information direction) or ``b -> a`` (status direction), with weight equal
to the number of such replies.
"""

from __future__ import annotations

import copy
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .errors import WindowError
from .ingest import Message

log = logging.getLogger(__name__)

INFORMATION = "information"
STATUS = "status"
DIRECTIONS = (INFORMATION, STATUS)

Edge = tuple[str, str]


@dataclass
class VertexStats:
    in_strength: int = 0
    out_strength: int = 0
    in_degree: int = 0
    out_degree: int = 0
    message_count: int = 0

    @property
    def strength(self) -> int:
        return self.in_strength + self.out_strength

    @property
    def degree(self) -> int:
        return self.in_degree + self.out_degree

    def is_empty(self) -> bool:
        return not (self.in_strength or self.out_strength or self.message_count)


@dataclass
class InteractionNetwork:
    vertices: dict[str, VertexStats] = field(default_factory=dict)
    edges: dict[Edge, int] = field(default_factory=dict)

    def total_weight(self) -> int:
        return sum(self.edges.values())

    def transpose(self) -> InteractionNetwork:
        return InteractionNetwork(
            vertices={
                v: VertexStats(s.out_strength, s.in_strength, s.out_degree, s.in_degree, s.message_count)
                for v, s in self.vertices.items()
            },
            edges={(b, a): w for (a, b), w in self.edges.items()},
        )

    def snapshot(self) -> InteractionNetwork:
        return InteractionNetwork(
            vertices={v: copy.copy(s) for v, s in self.vertices.items()},
            edges=dict(self.edges),
        )


def build_id_index(messages: Sequence[Message]) -> dict[str, str]:
    return {m.message_id: m.sender for m in messages}


def resolve_contribution(
    msg: Message, id_index: Mapping[str, str], warnings: Counter | None = None
) -> Edge | None:
    """Return the (original author, responder) pair for a reply, or None."""
    if msg.reply_to is None:
        return None
    author = id_index.get(msg.reply_to)
    if author is None:
        if warnings is not None:
            warnings["unresolved_reply"] += 1
        return None
    return (author, msg.sender)


def _oriented(pair: Edge, direction: str) -> Edge:
    return pair if direction == INFORMATION else (pair[1], pair[0])


def _check_direction(direction: str) -> None:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")


def build_network(
    messages: Sequence[Message],
    direction: str = INFORMATION,
    id_index: Mapping[str, str] | None = None,
    warnings: Counter | None = None,
) -> InteractionNetwork:
    """Batch construction from scratch.

    ``id_index`` resolves reply targets; it defaults to an index over
    ``messages`` themselves. Window code passes a global index so that reply
    targets outside the window still resolve.
    """
    _check_direction(direction)
    if id_index is None:
        id_index = build_id_index(messages)

    sent = Counter(m.sender for m in messages)
    weights: Counter = Counter()
    for m in messages:
        pair = resolve_contribution(m, id_index, warnings)
        if pair is not None:
            weights[_oriented(pair, direction)] += 1

    vertices = {v: VertexStats(message_count=n) for v, n in sent.items()}
    for (a, b), w in weights.items():
        vertices.setdefault(a, VertexStats())
        vertices.setdefault(b, VertexStats())
        vertices[a].out_strength += w
        vertices[a].out_degree += 1
        vertices[b].in_strength += w
        vertices[b].in_degree += 1
    return InteractionNetwork(vertices=vertices, edges=dict(weights))


def audit(net: InteractionNetwork) -> list[str]:
    """Recompute strengths and degrees from the edge map; return mismatches."""
    findings = []
    expected = {v: VertexStats(message_count=s.message_count) for v, s in net.vertices.items()}
    for (a, b), w in net.edges.items():
        if w < 1:
            findings.append(f"edge {a}->{b} has weight {w}")
        for end in (a, b):
            if end not in net.vertices:
                findings.append(f"edge {a}->{b} endpoint {end!r} is not a vertex")
                expected.setdefault(end, VertexStats())
        expected[a].out_strength += w
        expected[a].out_degree += 1
        expected[b].in_strength += w
        expected[b].in_degree += 1
    for v, stats in net.vertices.items():
        if stats != expected[v]:
            findings.append(f"vertex {v!r}: stored {stats}, recomputed {expected[v]}")
        elif stats.is_empty():
            findings.append(f"vertex {v!r} has no messages and no edges")
    return findings


def dump_edges(net: InteractionNetwork) -> str:
    rows = sorted(net.edges.items())
    return "".join(f"{a}\t{b}\t{w}\n" for (a, b), w in rows)


# --- sliding window ---------------------------------------------------------


@dataclass(frozen=True)
class WindowConfig:
    delta: int
    total: int
    stride: int = 1

    def __post_init__(self):
        if not 1 <= self.delta <= self.total:
            raise WindowError(f"window length must satisfy 1 <= delta <= total, got delta={self.delta}, total={self.total}")
        if self.stride < 1:
            raise WindowError(f"stride must be >= 1, got {self.stride}")


def window_count(config: WindowConfig) -> int:
    return (config.total - config.delta) // config.stride + 1


class WindowEngine:
    """Keeps the network of ``messages[start:start + delta]`` up to date.

    Each advance subtracts the contribution of departing messages and adds
    that of arriving ones, so the cost per step does not depend on delta.
    """

    def __init__(self, messages: Sequence[Message], config: WindowConfig, direction: str = INFORMATION):
        _check_direction(direction)
        if len(messages) < config.total:
            raise WindowError(f"stream has {len(messages)} messages, fewer than total={config.total}")
        self.config = config
        self.direction = direction
        self.messages = list(messages[: config.total])
        self.id_index = build_id_index(self.messages)
        self.warnings: Counter = Counter()
        self.window_start = 0
        self.position = 0
        self.current = InteractionNetwork()
        for m in self.messages[: config.delta]:
            self._apply(m, +1)

    @property
    def window_count(self) -> int:
        return window_count(self.config)

    def window_messages(self) -> list[Message]:
        return self.messages[self.window_start : self.window_start + self.config.delta]

    def _stats(self, v: str) -> VertexStats:
        stats = self.current.vertices.get(v)
        if stats is None:
            stats = self.current.vertices[v] = VertexStats()
        return stats

    def _prune(self, v: str) -> None:
        stats = self.current.vertices.get(v)
        if stats is not None and stats.is_empty():
            del self.current.vertices[v]

    def _apply(self, msg: Message, sign: int) -> None:
        net = self.current
        self._stats(msg.sender).message_count += sign
        pair = resolve_contribution(msg, self.id_index, self.warnings if sign > 0 else None)
        if pair is not None:
            a, b = _oriented(pair, self.direction)
            src, dst = self._stats(a), self._stats(b)
            old = net.edges.get((a, b), 0)
            new = old + sign
            if new < 0:
                raise AssertionError(f"negative weight on {a}->{b}")
            if new:
                net.edges[(a, b)] = new
            else:
                del net.edges[(a, b)]
            src.out_strength += sign
            dst.in_strength += sign
            if old == 0 or new == 0:
                src.out_degree += sign
                dst.in_degree += sign
            self._prune(a)
            self._prune(b)
        self._prune(msg.sender)

    def advance(self) -> None:
        last_start = self.config.total - self.config.delta
        if self.window_start + self.config.stride > last_start:
            raise WindowError(
                f"cannot advance past the last window (start={self.window_start}, stride={self.config.stride}, last start={last_start})"
            )
        delta = self.config.delta
        for _ in range(self.config.stride):
            self._apply(self.messages[self.window_start], -1)
            self._apply(self.messages[self.window_start + delta], +1)
            self.window_start += 1
        self.position += 1

    def windows(self) -> Iterator[tuple[int, int, InteractionNetwork]]:
        """Yield (frame index, window start, snapshot) for every remaining position."""
        while True:
            yield self.position, self.window_start, self.current.snapshot()
            if self.position + 1 >= self.window_count:
                return
            self.advance()


def window_init(messages: Sequence[Message], config: WindowConfig, direction: str = INFORMATION) -> WindowEngine:
    return WindowEngine(messages, config, direction)


def window_advance(engine: WindowEngine) -> WindowEngine:
    engine.advance()
    return engine
