import pytest

from quandlekit.datafiles import bundled, load_diagram
from quandlekit.diagrams import (
    Component,
    Crossing,
    DiagramParseError,
    LinkDiagram,
    crossings_under,
    parse_diagram,
    serialize_diagram,
    traverse,
    with_base,
)

LINK_FILES = bundled(".lnk")


@pytest.mark.parametrize("path", LINK_FILES, ids=lambda p: p.stem)
def test_round_trip_is_byte_exact(path):
    text = path.read_text()
    D = parse_diagram(text)
    assert serialize_diagram(D) == text
    assert parse_diagram(serialize_diagram(D)) == D


@pytest.mark.parametrize("path", LINK_FILES, ids=lambda p: p.stem)
def test_under_crossings_partition(path):
    D = parse_diagram(path.read_text())
    parts = [crossings_under(D, i) for i in range(len(D.components))]
    assert sum(map(len, parts)) == D.crossing_count
    assert sorted(k for p in parts for k in p) == list(range(D.crossing_count))


def test_trefoil():
    D = load_diagram("trefoil.lnk")
    assert (D.arc_count, D.crossing_count, len(D.components)) == (3, 3, 1)
    assert all(c.sign == 1 for c in D.crossings)
    events = traverse(D, 0)
    assert len(events) == 3 and all(e.sign == 1 for e in events)
    assert crossings_under(D, 0) == [0, 1, 2]


def test_whitehead():
    D = load_diagram("whitehead.lnk")
    assert (D.arc_count, D.crossing_count, len(D.components)) == (5, 5, 2)
    sizes = [len(crossings_under(D, i)) for i in range(2)]
    assert sum(sizes) == 5
    assert sorted(sizes) == [2, 3]  # five crossings cannot split evenly


def test_unknot_and_unlink():
    D = parse_diagram("link unknot\narcs 1\ncomponent base=0 trace=0\n")
    assert D.arc_count == 1 and traverse(D, 0) == []
    U = load_diagram("unlink2.lnk")
    assert crossings_under(U, 1) == []


def test_base_change_rotates_events():
    D = load_diagram("knot8_18.lnk")
    events = traverse(D, 0)
    for shift in range(len(events)):
        moved = traverse(with_base(D, 0, events[shift].arc), 0)
        assert moved == events[shift:] + events[:shift]


def test_kinked_crossing_may_reuse_over_arc():
    D = load_diagram("unknot_kink.lnk")
    c = D.crossings[0]
    assert c.over == c.under_in == c.under_out == 0


def test_sign_convention():
    pos = Crossing(1, 0, 1, 2)
    neg = Crossing(-1, 0, 1, 2)
    assert (pos.r1, pos.r2) == (1, 2)
    assert (neg.r1, neg.r2) == (2, 1)


@pytest.mark.parametrize(
    "text,line,needle",
    [
        ("link a\narcs 2\nx + over=0 in=0 out=5\ncomponent base=0 trace=0,1\n", 3, "dangling"),
        (
            "link a\narcs 2\nx + over=0 in=0 out=1\nx + over=0 in=1 out=0\ncomponent base=0 trace=0,1\ncomponent base=1 trace=1\n",
            6,
            "appears in components",
        ),
        ("link a\narcs 2\nx + over=0 in=0 out=1\nx + over=0 in=1 out=0\ncomponent base=0 trace=1,0,1\n", 5, None),
        ("link a\narcs 3\nx + over=0 in=0 out=1\nx + over=0 in=1 out=2\nx + over=0 in=2 out=0\ncomponent base=0 trace=0,2,1\n", 6, "trace step"),
        ("link a\narcs 1\nx * over=0 in=0 out=0\n", 3, "malformed"),
        ("link a\narcs 1\nbogus\n", 3, "unknown record"),
    ],
)
def test_errors_carry_line_numbers(text, line, needle):
    with pytest.raises(DiagramParseError) as info:
        parse_diagram(text)
    assert info.value.line == line
    if needle:
        assert needle in str(info.value)


def test_missing_component_and_header():
    with pytest.raises(DiagramParseError, match="belongs to no component"):
        parse_diagram("link a\narcs 2\ncomponent base=0 trace=0\n")
    with pytest.raises(DiagramParseError, match="header"):
        parse_diagram("arcs 1\n")


def test_direct_construction_is_validated():
    with pytest.raises(DiagramParseError):
        LinkDiagram("x", 2, (Crossing(1, 0, 0, 1),), (Component(0, (0, 1)),))
