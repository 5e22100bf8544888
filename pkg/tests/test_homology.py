import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quandlekit.datafiles import bundled, load_quandle
from quandlekit.golden import H2_R4_Z2_RANK, MODULUS_LIFT_2_2
from quandlekit.homology import (
    Chain1,
    Chain2,
    Cochain2,
    FiniteAbelianGroup,
    boundary2,
    boundary3,
    chain_boundary,
    coboundary1,
    cohomologous,
    compute_H2,
    evaluate,
    h2_from_universal_coefficients,
    integral_H2,
    is_coboundary,
    is_cocycle2,
    is_cycle2,
)
from quandlekit.quandle import make_alexander, make_dihedral, make_trivial

Z2 = FiniteAbelianGroup.cyclic(2)
R3, R4 = make_dihedral(3), make_dihedral(4)


def test_group_parse_and_arithmetic():
    A = FiniteAbelianGroup.parse("Z2xZ4")
    assert A.order == 8 and str(A) == "Z2xZ4" and not A.is_cyclic
    a = A.parse_element("1,3")
    assert A.element_str(A.add(a, a)) == "0,2"
    assert A.neg(a) == A.parse_element("1,1")
    with pytest.raises(ValueError):
        FiniteAbelianGroup.parse("Q3")


def test_boundary_examples():
    assert boundary2(R3, (0, 1)) == Chain1({0: 1, 2: -1})
    assert boundary2(R3, (1, 1)) == Chain1({})


QUANDLE_FILES = [p for p in bundled(".qnd") if p.stem != "bad"]


@pytest.mark.parametrize("path", QUANDLE_FILES, ids=lambda p: p.stem)
def test_boundary_squares_to_zero_on_bundled(path):
    X = load_quandle(path)
    assert X.size <= 16
    for t in itertools.product(range(X.size), repeat=3):
        assert chain_boundary(X, boundary3(X, t)) == Chain1({})


def test_chi01_alone_is_not_a_cocycle():
    assert not is_cocycle2(Cochain2.from_terms(R4, Z2, [(0, 1)]))
    assert is_cocycle2(Cochain2.from_terms(R4, Z2, MODULUS_LIFT_2_2))


def test_cochain_diagonal_must_vanish():
    with pytest.raises(ValueError):
        Cochain2.from_terms(R4, Z2, [(1, 1)])


def test_coboundary_examples():
    assert coboundary1(R4, Z2, [1, 1, 1, 1]).is_zero()
    d = coboundary1(R4, Z2, [1, 0, 0, 0])
    for x, y in itertools.product(range(4), repeat=2):
        assert d(x, y) == ((x == 0) - (R4.op(x, y) == 0)) % 2


groups = st.sampled_from(["Z2", "Z3", "Z4", "Z6", "Z2xZ2", "Z2xZ4"]).map(FiniteAbelianGroup.parse)
quandles = st.sampled_from([R3, R4, make_dihedral(6), make_alexander(2, [1, 1, 1]), make_trivial(3)])


@given(quandles, groups, st.data())
def test_coboundaries_are_cocycles_and_detected(X, A, data):
    f = data.draw(st.lists(st.integers(0, A.order - 1), min_size=X.size, max_size=X.size))
    d = coboundary1(X, A, f)
    assert is_cocycle2(d)
    witness = is_coboundary(d)
    assert witness is not None
    assert coboundary1(X, A, witness) == d


@given(quandles, groups, st.data())
def test_coboundaries_vanish_on_cycles(X, A, data):
    f = data.draw(st.lists(st.integers(0, A.order - 1), min_size=X.size, max_size=X.size))
    t = data.draw(st.tuples(*[st.integers(0, X.size - 1)] * 3))
    c = boundary3(X, t)  # boundaries are cycles
    assert is_cycle2(X, c)
    assert evaluate(coboundary1(X, A, f), c) == 0


def test_zero_cochain_is_coboundary():
    w = is_coboundary(Cochain2.zero(R4, Z2))
    assert w is not None and not np.any(w)


def test_modulus_lift_on_r4_is_not_a_coboundary():
    assert is_coboundary(Cochain2.from_terms(R4, Z2, MODULUS_LIFT_2_2)) is None


def test_cycles():
    assert is_cycle2(make_dihedral(8), Chain2.of((0, 1), (2, 1)), modulus=2)
    assert not is_cycle2(R3, Chain2.of((0, 1)))
    assert is_cycle2(R3, Chain2.of((2, 2)))
    assert evaluate(Cochain2.from_terms(R4, Z2, MODULUS_LIFT_2_2), Chain2.of()) == 0


def test_h2_trivial_quandle_one_element():
    assert compute_H2(make_trivial(1), 2).orders == ()


def test_h2_r4_pinned_rank():
    res = compute_H2(R4, 2)
    assert res.rank >= 3
    assert res.rank == H2_R4_Z2_RANK
    assert res.invariant_factors == h2_from_universal_coefficients(R4, 2)
    assert integral_H2(R4) == (2, [2, 2])


@pytest.mark.parametrize(
    "X,q",
    [(R3, 3), (R4, 4), (make_dihedral(6), 2), (make_alexander(2, [1, 1, 1]), 2), (make_alexander(2, [1, 1, 1]), 4), (make_trivial(3), 3)],
    ids=["R3-3", "R4-4", "R6-2", "S4-2", "S4-4", "T3-3"],
)
def test_h2_matches_universal_coefficients(X, q):
    res = compute_H2(X, q)
    assert res.invariant_factors == h2_from_universal_coefficients(X, q)
    for rep in res.representatives:
        assert is_cocycle2(rep)
        assert is_coboundary(rep) is None
    for a, b in itertools.combinations(res.representatives, 2):
        assert not cohomologous(a, b)


def test_h2_rejects_bad_modulus():
    with pytest.raises(ValueError):
        compute_H2(R4, 1)
