from collections import Counter

import pytest
from hypothesis import given, strategies as st

from quandlekit.coloring import _solve, count_colorings, enumerate_colorings
from quandlekit.datafiles import bundled, bundled_cocycles, load_cochain, load_diagram, load_quandle
from quandlekit.extensions import build_extension
from quandlekit.homology import Cochain2, FiniteAbelianGroup, coboundary1
from quandlekit.invariants import (
    GroupRingValue,
    boltzmann_weight,
    componentwise_state_sum,
    obstruction_report,
    render,
    render_raw,
    render_vector,
    state_sum,
)
from quandlekit.quandle import make_dihedral

COCYCLES = bundled_cocycles()
DIAGRAMS = [p.name for p in bundled(".lnk")]
TREFOILS = [d for d in DIAGRAMS if d.startswith("trefoil")]


def s4():
    X = load_quandle("s4.qnd")
    return X, load_cochain("s4_z2.coc", X)


def test_rendering():
    Z2 = FiniteAbelianGroup.cyclic(2)
    assert render(GroupRingValue(Z2, {0: 4, 1: 12})) == "4 + 12t"
    assert render(GroupRingValue(FiniteAbelianGroup.cyclic(4), {0: 1, 1: 1, 3: 2})) == "1 + t + 2t^3"
    assert render(GroupRingValue(Z2, {0: 7})) == "7"
    A = FiniteAbelianGroup.parse("Z2xZ3")
    assert render(GroupRingValue(A, {0: 1, A.encode((1, 2)): 3})) == "1 + 3t1*t2^2"
    assert render_raw(GroupRingValue(Z2, {0: 4, 1: 12})) == "coeff 0 4\ncoeff 1 12\n"
    assert render_vector([GroupRingValue(Z2, {0: 1})] * 2) == "(1, 1)"


@pytest.mark.parametrize("name,expected", [("trefoil.lnk", "4 + 12t"), ("figure8.lnk", "4 + 12t"), ("knot8_18.lnk", "16 + 48t")])
def test_s4_state_sums(name, expected):
    X, phi = s4()
    assert render(state_sum(load_diagram(name), X, phi)) == expected


def test_zero_cocycle_gives_coloring_count():
    X, phi = s4()
    D = load_diagram("knot8_18.lnk")
    v = state_sum(D, X, Cochain2.zero(X, phi.group))
    assert v.is_integer() and v.constant_term == count_colorings(D, X)


def test_refuses_non_cocycles():
    X, phi = s4()
    with pytest.raises(ValueError, match="not a 2-cocycle"):
        state_sum(load_diagram("trefoil.lnk"), X, Cochain2.from_terms(X, phi.group, [(0, 1)]))


def test_boltzmann_weight_vanishes_on_monochromatic():
    X, phi = s4()
    D = load_diagram("trefoil_r1neg.lnk")
    for x in range(X.size):
        assert all(boltzmann_weight(D, k, (x,) * D.arc_count, phi) == 0 for k in range(D.crossing_count))


def test_kink_weights_vanish():
    X, phi = s4()
    for name in ("trefoil_r1pos.lnk", "trefoil_r1neg.lnk"):
        D = load_diagram(name)
        kinks = [k for k, c in enumerate(D.crossings) if c.over in (c.under_in, c.under_out)]
        assert kinks
        for colors in _solve(D, X):
            assert all(boltzmann_weight(D, k, colors, phi) == 0 for k in kinks)


def test_whitehead_componentwise():
    X = load_quandle("r8.qnd")
    phi = load_cochain("doubling8.coc", X)
    W = load_diagram("whitehead.lnk")
    assert render_vector(componentwise_state_sum(W, X, phi)) == "(32 + 32t, 32 + 32t)"
    r = obstruction_report(W, X, phi)
    assert (r.total, r.extendable, r.non_extendable) == (64, 32, 32)


def test_unlink_componentwise():
    for _, X, phi in COCYCLES:
        vec = componentwise_state_sum(load_diagram("unlink2.lnk"), X, phi)
        assert [dict(v.coefficients) for v in vec] == [{0: X.size**2}] * 2


def test_trefoil_obstruction():
    X, phi = s4()
    r = obstruction_report(load_diagram("trefoil.lnk"), X, phi)
    assert (r.total, r.extendable, r.non_extendable) == (16, 4, 12)


@pytest.mark.parametrize("name", DIAGRAMS)
@pytest.mark.parametrize("stem,X,phi", COCYCLES, ids=[c[0] for c in COCYCLES])
def test_mass_constant_term_and_knot_vector(name, stem, X, phi):
    D = load_diagram(name)
    v = state_sum(D, X, phi)
    assert v.mass == count_colorings(D, X)
    vec = componentwise_state_sum(D, X, phi)
    assert all(c.mass == v.mass for c in vec)
    if len(D.components) == 1:
        assert vec == (v,)
    r = obstruction_report(D, X, phi)
    assert r.total == v.mass
    if len(D.components) == 1:
        assert r.extendable == v.constant_term


@pytest.mark.parametrize("stem,X,phi", COCYCLES, ids=[c[0] for c in COCYCLES])
def test_coboundary_means_everything_extends(stem, X, phi):
    f = list(range(X.size))
    d = coboundary1(X, phi.group, [v % phi.group.order for v in f])
    for name in DIAGRAMS:
        r = obstruction_report(load_diagram(name), X, d)
        assert r.extendable == r.total


@given(st.data())
def test_coboundary_invariance(data):
    stem, X, phi = data.draw(st.sampled_from(COCYCLES))
    f = data.draw(st.lists(st.integers(0, phi.group.order - 1), min_size=X.size, max_size=X.size))
    psi = phi + coboundary1(X, phi.group, f)
    name = data.draw(st.sampled_from(DIAGRAMS))
    D = load_diagram(name)
    assert state_sum(D, X, psi) == state_sum(D, X, phi)
    assert componentwise_state_sum(D, X, psi) == componentwise_state_sum(D, X, phi)


@pytest.mark.parametrize("stem,X,phi", COCYCLES, ids=[c[0] for c in COCYCLES])
def test_trefoil_variants_agree(stem, X, phi):
    values = {name: (state_sum(load_diagram(name), X, phi), componentwise_state_sum(load_diagram(name), X, phi)) for name in TREFOILS}
    assert len({(tuple(v.coefficients.items()), tuple(tuple(c.coefficients.items()) for c in vec)) for v, vec in values.values()}) == 1


def test_lifts_are_all_extension_colorings():
    # each extendable coloring has exactly |A|^components preimages among colorings by E
    X = load_quandle("r8.qnd")
    phi = load_cochain("doubling8.coc", X)
    W = load_diagram("whitehead.lnk")
    ext = build_extension(X, phi.group, phi)
    pre = Counter(tuple(int(ext.projection.images[c]) for c in colors) for colors in _solve(W, ext.total))
    assert set(pre.values()) == {phi.group.order ** 2}
    assert len(pre) == obstruction_report(W, X, phi).extendable
    assert len(enumerate_colorings(W, make_dihedral(16))) == sum(pre.values())
