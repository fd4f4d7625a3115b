import random

import pytest

from versinus.ingest import Message

_acceptance_results = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        _acceptance_results.append((number, title, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_acceptance_results):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")


def stream(rows):
    """Build messages from (sender, message_id, reply_to) tuples."""
    return [Message(i, s, mid, r) for i, (s, mid, r) in enumerate(rows)]


def corpus_with_senders(n_senders, n_messages, seed=0, reply_prob=0.8):
    """Every sender posts at least once; later posters and reply targets are skewed."""
    rng = random.Random(seed)
    senders = [f"s{k:03d}@list.org" for k in range(n_senders)]
    messages = []
    for i in range(n_messages):
        if i < n_senders:
            sender = senders[i]
        else:
            sender = senders[min(int(rng.paretovariate(1.2)) - 1, n_senders - 1)]
        reply_to = None
        if i and rng.random() < reply_prob:
            j = min(int(rng.expovariate(1 / 40)), i - 1)
            reply_to = messages[i - 1 - j].message_id
        messages.append(Message(i, sender, f"id{i}@list.org", reply_to))
    return messages


@pytest.fixture
def small_stream():
    return stream([
        ("alice", "m1", None),
        ("bob", "m2", "m1"),
        ("bob", "m3", "m1"),
        ("carol", "m4", "m2"),
        ("alice", "m5", "m4"),
    ])
