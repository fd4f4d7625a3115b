from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from versinus.errors import ParseError
from versinus.ingest import (
    Message,
    detect_format,
    parse,
    parse_csv,
    parse_jsonl,
    parse_mbox,
    to_csv,
    to_jsonl,
    to_mbox,
)

HEADER = b"message_id,sender,reply_to,timestamp\n"


class TestCsv:
    def test_field_mapping(self):
        got = parse_csv(HEADER + b"m1,alice,,\nm2,bob,m1,\n")
        assert got == [Message(0, "alice", "m1", None), Message(1, "bob", "m2", "m1")]

    def test_empty_after_header(self):
        assert parse_csv(HEADER) == []

    def test_duplicate_id_names_it(self):
        with pytest.raises(ParseError, match="'m1'"):
            parse_csv(HEADER + b"m1,alice,,\nm1,bob,,\n")

    def test_wrong_column_count_has_line_number(self):
        with pytest.raises(ParseError) as err:
            parse_csv(HEADER + b"m1,alice,,\nm2,bob\n")
        assert err.value.line == 3

    @pytest.mark.parametrize("row", [b",alice,,\n", b"m1, ,,\n"])
    def test_empty_fields_rejected(self, row):
        with pytest.raises(ParseError) as err:
            parse_csv(HEADER + row)
        assert err.value.line == 2

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_csv(b"id,from,reply,time\nm1,a,,\n")

    def test_sender_normalized_and_timestamp(self):
        (m,) = parse_csv(HEADER + b"m1,  Alice@X.org ,,1234\n")
        assert m.sender == "alice@x.org" and m.timestamp == 1234

    def test_bad_timestamp(self):
        with pytest.raises(ParseError):
            parse_csv(HEADER + b"m1,alice,,yesterday\n")

    def test_crlf(self):
        got = parse_csv(HEADER.replace(b"\n", b"\r\n") + b"m1,alice,,\r\n")
        assert got == [Message(0, "alice", "m1")]


class TestJsonl:
    def test_lowercases_sender(self):
        assert parse_jsonl(b'{"message_id":"m1","sender":"A"}\n') == [Message(0, "a", "m1")]

    def test_missing_sender(self):
        data = b'{"message_id":"m1","sender":"a"}\n{"message_id":"m2"}\n'
        with pytest.raises(ParseError) as err:
            parse_jsonl(data)
        assert err.value.line == 2

    def test_two_lines(self):
        data = b'{"message_id":"m1","sender":"a"}\n{"message_id":"m2","sender":"b","reply_to":"m1","timestamp":5}\n'
        got = parse_jsonl(data)
        assert [m.seq_index for m in got] == [0, 1]
        assert got[1] == Message(1, "b", "m2", "m1", 5)

    @pytest.mark.parametrize("line", [b"not json", b"[1, 2]", b'{"message_id": 3, "sender": "a"}'])
    def test_malformed(self, line):
        with pytest.raises(ParseError):
            parse_jsonl(line + b"\n")


MBOX_ONE = b"""From alice Mon Jan  1 00:00:00 2001
From: Alice <a@x.org>
Message-ID: <m1@x>
Subject: hi

body
"""


class TestMbox:
    def test_header_extraction(self):
        assert parse_mbox(MBOX_ONE) == [Message(0, "a@x.org", "m1@x")]

    def test_reply(self):
        data = MBOX_ONE + b"""From bob Mon Jan  1 00:00:00 2001
From: bob@y.org
Message-ID: <m2@y>
In-Reply-To: <m1@x>

re
"""
        assert parse_mbox(data)[1] == Message(1, "bob@y.org", "m2@y", "m1@x")

    def test_folded_header(self):
        data = MBOX_ONE + b"From b\nFrom: b@y\nMessage-ID: <m2@y>\nIn-Reply-To:\n <m1@x>\n\n"
        assert parse_mbox(data)[1].reply_to == "m1@x"

    def test_first_of_several_reply_ids(self):
        data = b"From a\nFrom: a@x\nMessage-ID: <m2>\nIn-Reply-To: <m1@x> <m0@x>\n\n"
        assert parse_mbox(data)[0].reply_to == "m1@x"

    def test_references_ignored(self):
        data = b"From a\nFrom: a@x\nMessage-ID: <m2>\nReferences: <m0@x> <m1@x>\n\n"
        assert parse_mbox(data)[0].reply_to is None

    def test_crlf(self):
        assert parse_mbox(MBOX_ONE.replace(b"\n", b"\r\n")) == parse_mbox(MBOX_ONE)

    def test_skips_are_counted(self):
        data = (
            b"From x\nFrom: x@y\nSubject: no id\n\n"
            b"From y\nMessage-ID: <q>\n\n"
            + MBOX_ONE
            + b"From z\nFrom: z@y\nMessage-ID: <m1@x>\n\n"
        )
        warnings = Counter()
        assert parse_mbox(data, warnings) == [Message(0, "a@x.org", "m1@x")]
        assert warnings == Counter(missing_message_id=1, missing_from=1, duplicate_message_id=1)

    def test_nothing_parseable(self):
        with pytest.raises(ParseError):
            parse_mbox(b"From x\nSubject: nothing\n\n")
        with pytest.raises(ParseError):
            parse_mbox(b"")

    def test_body_headers_are_not_read(self):
        decoy = MBOX_ONE + b"Message-ID: <decoy>\nIn-Reply-To: <decoy2>\nFrom: mallory@evil\n"
        assert parse_mbox(decoy) == parse_mbox(MBOX_ONE)

    def test_date_header(self):
        data = MBOX_ONE.replace(b"Subject", b"Date: Thu, 01 Jan 1970 00:01:40 +0000\nSubject")
        assert parse_mbox(data)[0].timestamp == 100


@pytest.mark.parametrize(
    "data, fmt",
    [
        (b"From a\n", "mbox"),
        (b'  {"message_id": "m"}', "jsonl"),
        (HEADER, "csv"),
        (b"", "csv"),
        (b"\xef\xbb\xbfFrom a\n", "mbox"),
    ],
)
def test_detect_format(data, fmt):
    assert detect_format(data) == fmt


def test_parse_auto_dispatch():
    assert parse(MBOX_ONE) == parse_mbox(MBOX_ONE)
    with pytest.raises(ValueError):
        parse(MBOX_ONE, "xml")


ident = st.text(alphabet=st.characters(min_codepoint=33, max_codepoint=126, blacklist_characters="<>"), min_size=1, max_size=12)


@st.composite
def message_streams(draw, mbox_safe=False):
    n = draw(st.integers(0, 30))
    ids = draw(st.lists(ident, min_size=n, max_size=n, unique=True))
    senders = draw(st.lists(ident.map(str.lower), min_size=1, max_size=6))
    out = []
    for i, mid in enumerate(ids):
        reply = draw(st.one_of(st.none(), st.sampled_from(ids), ident))
        ts = draw(st.one_of(st.none(), st.integers(0, 2**31)))
        out.append(Message(i, draw(st.sampled_from(senders)), mid, reply, ts))
    return out


@given(message_streams())
def test_csv_round_trip(messages):
    assert parse_csv(to_csv(messages)) == messages


@given(message_streams())
@settings(max_examples=50)
def test_format_equivalence(messages):
    from_csv = parse_csv(to_csv(messages))
    assert parse_jsonl(to_jsonl(messages)) == from_csv
    if messages:
        assert parse_mbox(to_mbox(messages)) == from_csv


@given(message_streams(), st.text(alphabet="abc :\n<>@", max_size=80))
@settings(max_examples=50)
def test_mbox_bodies_do_not_matter(messages, body):
    if not messages:
        return
    plain = to_mbox(messages).decode()
    # bodies are the single line "message N" written by to_mbox
    body = "\n".join(line for line in body.split("\n") if line)
    noisy = "\n".join(
        f"{line}\n{body}" if line.startswith("message ") else line for line in plain.split("\n")
    )
    truncated = "\n".join(line for line in plain.split("\n") if not line.startswith("message "))
    assert parse_mbox(noisy.encode()) == parse_mbox(plain.encode()) == parse_mbox(truncated.encode())
