import pytest
from hypothesis import given, strategies as st

from quandlekit.datafiles import bundled, load_quandle
from quandlekit.formats import (
    MalformedInputError,
    parse_cochain,
    parse_quandle,
    read_table,
    serialize_cochain,
    serialize_quandle,
)
from quandlekit.homology import Cochain2, FiniteAbelianGroup
from quandlekit.quandle import QuandleAxiomError, make_dihedral


@pytest.mark.parametrize("path", [p for p in bundled(".qnd") if p.stem != "bad"], ids=lambda p: p.stem)
def test_quandle_files_round_trip(path):
    text = path.read_text()
    X = parse_quandle(text)
    assert serialize_quandle(X) == text
    assert "\r" not in text and not any(line.endswith(" ") for line in text.splitlines())


@pytest.mark.parametrize("path", bundled(".coc"), ids=lambda p: p.stem)
def test_cochain_files_round_trip(path):
    text = path.read_text()
    qname = text.split()[1]
    X = load_quandle(f"{qname.lower()}.qnd")
    f = parse_cochain(text, X)
    assert f.quandle_name == qname
    assert serialize_cochain(f.cochain, qname) == text


def test_comments_are_ignored():
    X = parse_quandle("# a comment\nquandle R3 3  # trailing\n0 2 1\n2 1 0\n1 0 2\n")
    assert X == make_dihedral(3) and X.label == "R3"


def test_bad_table_is_an_axiom_failure_not_malformed():
    text = (bundled(".qnd")[0].parent / "bad.qnd").read_text()
    read_table(text)
    with pytest.raises(QuandleAxiomError):
        parse_quandle(text)


@pytest.mark.parametrize(
    "text,line",
    [
        ("", None),
        ("quandel R 1\n0\n", 1),
        ("quandle R x\n", 1),
        ("quandle R 2\n0 1\n", 2),
        ("quandle R 2\n0 1\n1\n", 3),
        ("quandle R 2\n0 1\n1 a\n", 3),
        ("quandle R 2\n0 1\n1 7\n", 3),
    ],
)
def test_malformed_tables(text, line):
    with pytest.raises(MalformedInputError) as info:
        read_table(text, "f.qnd")
    assert info.value.line == line


@pytest.mark.parametrize(
    "body,line",
    [
        ("0 1\n", 2),
        ("0 9 1\n", 2),
        ("0 1 1\n0 1 1\n", 3),
        ("1 1 1\n", 2),
        ("0 1 x\n", 2),
    ],
)
def test_malformed_cochains(body, line):
    with pytest.raises(MalformedInputError) as info:
        parse_cochain("cocycle R4 Z2\n" + body, make_dihedral(4))
    assert info.value.line == line


def test_malformed_cochain_header():
    with pytest.raises(MalformedInputError):
        parse_cochain("cocycle R4 Q2\n", make_dihedral(4))


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda p: p[0] != p[1]), st.integers(1, 7)))
def test_noncyclic_cochain_round_trip(values):
    A = FiniteAbelianGroup.parse("Z2xZ4")
    X = make_dihedral(4)
    phi = Cochain2.from_terms(X, A, {k: v for k, v in values.items()})
    text = serialize_cochain(phi)
    assert parse_cochain(text, X).cochain == phi
