"""Message log readers for CSV, JSON-lines and mbox input.

Every reader returns a list of :class:`Message` in file order with dense
``seq_index`` values. Only sender, message id and reply target (plus an
optional timestamp) are read; mbox bodies are never looked at.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import re
from collections import Counter
from dataclasses import dataclass
from email.utils import format_datetime, parsedate_to_datetime
from datetime import datetime, timezone
from typing import Iterable

from .errors import ParseError

log = logging.getLogger(__name__)

CSV_HEADER = ("message_id", "sender", "reply_to", "timestamp")
FORMATS = ("csv", "jsonl", "mbox")


@dataclass(frozen=True)
class Message:
    seq_index: int
    sender: str
    message_id: str
    reply_to: str | None = None
    timestamp: int | None = None


def normalize_sender(raw: str) -> str:
    return raw.strip().lower()


class _StreamBuilder:
    """Assigns sequence indexes and enforces the per-stream invariants."""

    def __init__(self, skip_duplicates: bool = False, warnings: Counter | None = None):
        self.messages: list[Message] = []
        self.seen: set[str] = set()
        self.skip_duplicates = skip_duplicates
        self.warnings = warnings if warnings is not None else Counter()

    def add(self, sender, message_id, reply_to, timestamp, line):
        sender = normalize_sender(sender or "")
        message_id = (message_id or "").strip()
        if not message_id:
            raise ParseError("empty message_id", line)
        if not sender:
            raise ParseError("empty sender", line)
        if message_id in self.seen:
            if self.skip_duplicates:
                self.warnings["duplicate_message_id"] += 1
                log.warning("line %s: skipping duplicate message id %r", line, message_id)
                return
            raise ParseError(f"duplicate message_id {message_id!r}", line)
        self.seen.add(message_id)
        reply_to = (reply_to or "").strip() or None
        self.messages.append(
            Message(len(self.messages), sender, message_id, reply_to, timestamp)
        )


def _parse_timestamp(value, line: int) -> int | None:
    if value is None:
        return None
    if isinstance(value, bool):
        raise ParseError(f"timestamp must be an integer, got {value!r}", line)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        value = value.strip()
        if not value:
            return None
        try:
            return int(value)
        except ValueError:
            pass
    raise ParseError(f"timestamp must be an integer, got {value!r}", line)


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not valid UTF-8 ({exc})") from None


def parse_csv(data: bytes) -> list[Message]:
    text = _decode(data)
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("missing header row", 1) from None
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise ParseError(f"expected header {','.join(CSV_HEADER)!r}, got {','.join(header)!r}", 1)

    builder = _StreamBuilder()
    for row in reader:
        line = reader.line_num
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise ParseError(f"expected {len(CSV_HEADER)} columns, got {len(row)}", line)
        message_id, sender, reply_to, timestamp = (field.strip() for field in row)
        builder.add(sender, message_id, reply_to, _parse_timestamp(timestamp, line), line)
    return builder.messages


def parse_jsonl(data: bytes) -> list[Message]:
    builder = _StreamBuilder()
    for line_no, line in enumerate(_decode(data).splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON ({exc.msg})", line_no) from None
        if not isinstance(record, dict):
            raise ParseError("expected a JSON object", line_no)
        for key in ("message_id", "sender"):
            if key not in record:
                raise ParseError(f"missing key {key!r}", line_no)
        for key in ("message_id", "sender", "reply_to"):
            value = record.get(key)
            if value is not None and not isinstance(value, str):
                raise ParseError(f"{key} must be a string", line_no)
        builder.add(
            record["sender"],
            record["message_id"],
            record.get("reply_to"),
            _parse_timestamp(record.get("timestamp"), line_no),
            line_no,
        )
    return builder.messages


# --- mbox -------------------------------------------------------------------

_ANGLE = re.compile(r"<([^<>]*)>")
_LINE_BREAK = re.compile(r"\r?\n")


def _angle_or_whole(value: str) -> str:
    m = _ANGLE.search(value)
    return m.group(1).strip() if m else value.strip()


def _first_id(value: str) -> str | None:
    m = _ANGLE.search(value)
    if m:
        return m.group(1).strip() or None
    parts = value.split()
    return parts[0] if parts else None


def _unfold_headers(lines: list[str]) -> dict[str, str]:
    headers: dict[str, str] = {}
    unfolded: list[str] = []
    for line in lines:
        if line[:1] in (" ", "\t") and unfolded:
            unfolded[-1] = unfolded[-1] + " " + line.strip()
        else:
            unfolded.append(line)
    for line in unfolded:
        name, sep, value = line.partition(":")
        if not sep:
            continue
        # first occurrence wins
        headers.setdefault(name.strip().lower(), value.strip())
    return headers


def _mbox_timestamp(value: str | None) -> int | None:
    if not value:
        return None
    try:
        dt = parsedate_to_datetime(value)
    except (TypeError, ValueError, IndexError):
        return None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return int(dt.timestamp())


def _split_mbox(text: str) -> Iterable[tuple[int, list[str]]]:
    """Yield (line number of the ``From `` separator, header lines) per message."""
    start = None
    header: list[str] = []
    in_header = False
    for line_no, line in enumerate(_LINE_BREAK.split(text), start=1):
        if line.startswith("From "):
            if start is not None:
                yield start, header
            start, header, in_header = line_no, [], True
        elif in_header:
            if line == "":
                in_header = False
            else:
                header.append(line)
    if start is not None:
        yield start, header


def parse_mbox(data: bytes, warnings: Counter | None = None) -> list[Message]:
    """Read an mbox archive.

    Messages lacking ``Message-ID:`` or ``From:`` (and repeated message ids)
    are skipped; each skip is counted in ``warnings`` when a Counter is passed.
    Raises :class:`ParseError` if nothing parseable remains.
    """
    warnings = warnings if warnings is not None else Counter()
    text = data.decode("utf-8-sig", errors="replace")
    builder = _StreamBuilder(skip_duplicates=True, warnings=warnings)
    for line_no, header_lines in _split_mbox(text):
        headers = _unfold_headers(header_lines)
        message_id = _angle_or_whole(headers.get("message-id", ""))
        if not message_id:
            warnings["missing_message_id"] += 1
            log.warning("line %d: message without Message-ID skipped", line_no)
            continue
        sender = _angle_or_whole(headers.get("from", ""))
        if not sender:
            warnings["missing_from"] += 1
            log.warning("line %d: message without From skipped", line_no)
            continue
        reply_to = _first_id(headers.get("in-reply-to", ""))
        builder.add(sender, message_id, reply_to, _mbox_timestamp(headers.get("date")), line_no)
    if not builder.messages:
        raise ParseError("no parseable messages in mbox input")
    return builder.messages


# --- dispatch and writers ---------------------------------------------------


def detect_format(data: bytes) -> str:
    if data.startswith(b"\xef\xbb\xbf"):
        data = data[3:]
    if data.startswith(b"From "):
        return "mbox"
    if data.lstrip()[:1] == b"{":
        return "jsonl"
    return "csv"


_PARSERS = {"csv": parse_csv, "jsonl": parse_jsonl, "mbox": parse_mbox}


def parse(data: bytes, fmt: str = "auto") -> list[Message]:
    if fmt == "auto":
        fmt = detect_format(data)
    try:
        parser = _PARSERS[fmt]
    except KeyError:
        raise ValueError(f"unknown input format {fmt!r}") from None
    return parser(data)


def to_csv(messages: Iterable[Message]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for m in messages:
        writer.writerow([
            m.message_id,
            m.sender,
            m.reply_to or "",
            "" if m.timestamp is None else m.timestamp,
        ])
    return buf.getvalue().encode("utf-8")


def to_jsonl(messages: Iterable[Message]) -> bytes:
    lines = []
    for m in messages:
        record = {"message_id": m.message_id, "sender": m.sender}
        if m.reply_to is not None:
            record["reply_to"] = m.reply_to
        if m.timestamp is not None:
            record["timestamp"] = m.timestamp
        lines.append(json.dumps(record, sort_keys=True))
    return ("\n".join(lines) + "\n" if lines else "").encode("utf-8")


def to_mbox(messages: Iterable[Message]) -> bytes:
    chunks = []
    for m in messages:
        ts = 0 if m.timestamp is None else m.timestamp
        when = datetime.fromtimestamp(ts, tz=timezone.utc)
        chunks.append(f"From {m.sender} {when.strftime('%a %b %d %H:%M:%S %Y')}")
        chunks.append(f"From: {m.sender}")
        chunks.append(f"Message-ID: <{m.message_id}>")
        if m.reply_to is not None:
            chunks.append(f"In-Reply-To: <{m.reply_to}>")
        if m.timestamp is not None:
            chunks.append(f"Date: {format_datetime(when)}")
        chunks.append("")
        chunks.append(f"message {m.seq_index}")
        chunks.append("")
    return "\n".join(chunks).encode("utf-8")


WRITERS = {"csv": to_csv, "jsonl": to_jsonl, "mbox": to_mbox}
