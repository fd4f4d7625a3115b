import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import stream
from versinus.errors import ConsistencyError
from versinus.graph import VertexStats, build_network
from versinus.layout import partition, place, rank_vertices
from versinus.visual import BlinkSchedule, SizeConfig, build_scene, glyph_color, glyph_size, measure_text


def test_glyph_size_examples():
    assert glyph_size(0, 10, 0.004, 0.02) == 0.004
    assert glyph_size(7, 7, 0.004, 0.02) == pytest.approx(0.02)
    assert glyph_size(0, 0, 0.004, 0.02) == 0.004
    # ln 4 / ln 16 = 1/2
    assert glyph_size(3, 15, 0.004, 0.02) == pytest.approx(0.012, abs=1e-15)


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_glyph_size_monotone_and_bounded(a, b, extra):
    top = max(a, b) + extra
    sa, sb = glyph_size(a, top, 0.004, 0.02), glyph_size(b, top, 0.004, 0.02)
    assert 0.004 <= sa <= 0.02 + 1e-15
    if a >= b:
        assert sa >= sb


@pytest.mark.parametrize(
    "out_s, in_s, rgb",
    [(3, 3, (255, 255, 255)), (0, 0, (255, 255, 255)), (4, 0, (255, 0, 0)), (0, 4, (0, 0, 255)), (2, 6, (127, 127, 255)), (6, 2, (255, 127, 127))],
)
def test_glyph_color(out_s, in_s, rgb):
    assert glyph_color(VertexStats(in_strength=in_s, out_strength=out_s)) == rgb


@given(st.integers(0, 1000), st.integers(0, 1000))
def test_color_components_in_range(o, i):
    assert all(0 <= c <= 255 for c in glyph_color(VertexStats(in_strength=i, out_strength=o)))


def test_measure_text_choices():
    s = VertexStats(in_strength=2, out_strength=5)
    assert [measure_text(s, 9, m) for m in ("out:in", "out_strength", "in_strength", "total", "rank")] == ["5:2", "5", "2", "7", "9"]
    with pytest.raises(ValueError):
        measure_text(s, 1, "entropy")


def test_blink_schedule():
    blink = BlinkSchedule()
    assert blink.shows(0) and not blink.shows(12) and blink.shows(30)
    with pytest.raises(ValueError):
        BlinkSchedule(5, 6)
    with pytest.raises(ValueError):
        BlinkSchedule(5, 0)


@given(st.integers(1, 50), st.data())
def test_blink_duty_over_any_period(period, data):
    duty = data.draw(st.integers(1, period))
    offset = data.draw(st.integers(0, 500))
    blink = BlinkSchedule(period, duty)
    assert sum(blink.shows(f) for f in range(offset, offset + period)) == duty


@pytest.fixture
def scene_inputs():
    msgs = stream([
        ("a", "m1", None), ("b", "m2", "m1"), ("c", "m3", "m1"), ("a", "m4", "m2"),
        ("a", "m5", "m5x"), ("d", "m6", None), ("a", "m7", "m7"),
    ])
    net = build_network(msgs)
    assignment = partition(rank_vertices(net))
    return msgs, net, assignment, place(assignment)


def test_scene_encodings(scene_inputs):
    msgs, net, assignment, layout = scene_inputs
    scene = build_scene(net, layout, assignment, 0)
    by_vertex = {g.vertex: g for g in scene.glyphs}
    assert set(by_vertex) == set(net.vertices)
    assert [g.rank_label for g in scene.glyphs] == sorted(g.rank_label for g in scene.glyphs)
    a = by_vertex["a"]
    assert a.center == layout["a"] and a.rank_label == assignment.global_rank["a"]
    assert a.height == pytest.approx(SizeConfig().max_size)  # a has the frame's max out-strength
    assert a.measure_text == f"{net.vertices['a'].out_strength}:{net.vertices['a'].in_strength}"
    # self loop a->a kept out of the drawing
    assert ("a", "a") in net.edges
    assert all(e.source != e.target for e in scene.edges)
    assert len(scene.edges) == len(net.edges) - 1
    w_max = max(net.edges.values())
    for e in scene.edges:
        w = net.edges[(e.source, e.target)]
        assert e.stroke_width == pytest.approx(SizeConfig().edge_width * math.log1p(w) / math.log1p(w_max))
        assert 0 < e.opacity <= 1


def test_measure_text_follows_blink(scene_inputs):
    _, net, assignment, layout = scene_inputs
    hidden = build_scene(net, layout, assignment, 12)
    assert all(g.measure_text is None for g in hidden.glyphs)
    shown = build_scene(net, layout, assignment, 5, measure="rank")
    assert all(g.measure_text == str(g.rank_label) for g in shown.glyphs)


def test_inactive_vertex_hidden(scene_inputs):
    msgs, net_all, assignment, layout = scene_inputs
    window = build_network(msgs[5:6])  # only d
    scene = build_scene(window, layout, assignment, 0)
    assert [g.vertex for g in scene.glyphs] == ["d"]
    assert scene.glyphs[0].center == layout["d"]


def test_missing_layout_slot(scene_inputs):
    msgs, net, assignment, layout = scene_inputs
    stranger = build_network(stream([("zed", "q1", None)]))
    with pytest.raises(ConsistencyError):
        build_scene(stranger, layout, assignment, 0)


def test_scene_is_pure(scene_inputs):
    _, net, assignment, layout = scene_inputs
    assert build_scene(net, layout, assignment, 3) == build_scene(net, layout, assignment, 3)
