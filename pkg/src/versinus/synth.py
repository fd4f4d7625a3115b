"""Seeded synthetic reply streams for demos and tests."""

from __future__ import annotations

import random
from collections import Counter, defaultdict

from .ingest import Message

BASE_TIME = 1_300_000_000


def sender_name(k: int) -> str:
    return f"user{k:02d}@example.org"


def generate_stream(
    n_messages: int,
    n_senders: int,
    seed: int = 0,
    reply_prob: float = 0.7,
    ghost_prob: float = 0.0,
) -> list[Message]:
    """Mailing-list-like stream with preferential attachment.

    Posters are drawn with weight ``1 + messages sent so far``; a reply picks
    the original author with weight ``1 + replies received so far`` and then
    one of that author's messages uniformly. With ``ghost_prob`` a reply
    points at a message id that never appears in the stream.
    """
    if n_messages < 0 or n_senders < 1:
        raise ValueError("need n_messages >= 0 and n_senders >= 1")
    rng = random.Random(seed)
    senders = [sender_name(k) for k in range(n_senders)]
    sent: Counter = Counter()
    received: Counter = Counter()
    by_author: dict[str, list[str]] = defaultdict(list)
    messages = []
    for i in range(n_messages):
        sender = rng.choices(senders, weights=[1 + sent[s] for s in senders])[0]
        message_id = f"m{i:06d}@synthetic"
        reply_to = None
        if by_author and rng.random() < reply_prob:
            if rng.random() < ghost_prob:
                reply_to = f"ghost{i:06d}@elsewhere"
            else:
                authors = sorted(by_author)
                author = rng.choices(authors, weights=[1 + received[a] for a in authors])[0]
                reply_to = rng.choice(by_author[author])
                received[author] += 1
        messages.append(Message(i, sender, message_id, reply_to, BASE_TIME + 60 * i))
        sent[sender] += 1
        by_author[sender].append(message_id)
    return messages
