import numpy as np
import pytest
from hypothesis import given, strategies as st

from quandlekit.quandle import (
    FiniteQuandle,
    FinitenessError,
    MalformedTableError,
    NotAGroupError,
    QuandleAxiomError,
    QuandleMap,
    are_isomorphic,
    cyclic_group_table,
    find_isomorphism,
    make_alexander,
    make_conjugation,
    make_dihedral,
    make_product,
    make_trivial,
    symmetric_group_table,
    verify_quandle,
)

S4_POLY = [1, 1, 1]  # T^2 + T + 1, lowest degree first


def test_dihedral_table_entries():
    assert make_dihedral(3).op(0, 1) == 2
    assert make_dihedral(4).op(1, 2) == 3
    assert verify_quandle(make_dihedral(4).table).valid


def test_idempotence_witness():
    report = verify_quandle(np.array([[1, 0], [1, 1]]))
    assert not report.valid
    assert report.violations[0].axiom == "idempotence"
    assert report.violations[0].witness == (0,)


@pytest.mark.parametrize("table", [[[0, 2], [1, 1]], [[0, 1]], [[0.5]], [[0, 1], [1]]])
def test_malformed_is_not_an_axiom_failure(table):
    with pytest.raises(MalformedTableError):
        verify_quandle(table)


def test_constructor_rejects_axiom_failure():
    with pytest.raises(QuandleAxiomError):
        FiniteQuandle(np.array([[0, 0, 1], [2, 1, 0], [1, 2, 2]]))


def test_trivial():
    assert make_trivial(1).table.tolist() == [[0]]
    assert make_trivial(3).table.tolist() == [[0, 0, 0], [1, 1, 1], [2, 2, 2]]
    assert verify_quandle(make_trivial(4).table).valid


def test_alexander_examples():
    assert make_alexander(4, [1, 1]) == make_dihedral(4)
    assert make_alexander(8, [1, 1]) == make_dihedral(8)
    unipotent = make_alexander(2, [1, -2, 1], basis="1-T")
    assert unipotent == make_dihedral(4)  # 0, 1, (1-T), (1-T)+1 in that order
    assert find_isomorphism(make_alexander(2, [1, -2, 1]), make_dihedral(4)) is not None
    S4 = make_alexander(2, S4_POLY)
    assert S4.size == 4 and verify_quandle(S4.table).valid


def test_alexander_codec_is_base_n_lowest_first():
    X = make_alexander(3, [1, 1, 1])
    assert X.codec.decode(1) == (1, 0)
    assert X.codec.decode(3) == (0, 1)
    assert X.codec.encode((2, 1)) == 5


def test_alexander_finiteness():
    with pytest.raises(FinitenessError):
        make_alexander(4, [2, 1])
    with pytest.raises(FinitenessError):
        make_alexander(4, [1, 2])


def test_conjugation():
    for n in (1, 2, 3):
        assert make_conjugation(cyclic_group_table(5), n) == make_trivial(5)
    assert make_conjugation(cyclic_group_table(2)) == make_trivial(2)
    S3 = make_conjugation(symmetric_group_table(3))
    assert S3.size == 6 and verify_quandle(S3.table).valid


def test_conjugation_rejects_non_groups():
    with pytest.raises(NotAGroupError):
        make_conjugation(make_dihedral(3).table)


def test_products():
    X = make_dihedral(5)
    assert are_isomorphic(make_product(make_trivial(1), X), X)
    assert find_isomorphism(make_product(make_dihedral(2), make_dihedral(3)), make_dihedral(6)) is not None
    assert verify_quandle(make_product(make_dihedral(3), make_alexander(2, S4_POLY)).table).valid


def test_solve_right():
    R4 = make_dihedral(4)
    assert R4.solve_right(3, 2) == 1
    T = make_trivial(3)
    assert all(T.solve_right(a, b) == a for a in range(3) for b in range(3))
    for n in (3, 5, 8):
        R = make_dihedral(n)
        assert all(R.solve_right(a, b) == (2 * b - a) % n for a in range(n) for b in range(n))


quandles = st.sampled_from(
    [
        make_dihedral(5),
        make_dihedral(6),
        make_alexander(2, S4_POLY),
        make_alexander(3, [1, 1]),
        make_conjugation(symmetric_group_table(3)),
        make_alexander(5, [2, 1]),
    ]
)


@given(quandles, st.data())
def test_right_division_inverts(X, data):
    a = data.draw(st.integers(0, X.size - 1))
    b = data.draw(st.integers(0, X.size - 1))
    assert X.solve_right(X.op(a, b), b) == a
    assert X.op(X.solve_right(a, b), b) == a


@pytest.mark.parametrize("n", range(1, 65))
def test_constructors_pass_axioms(n):
    assert verify_quandle(make_dihedral(n).table).valid
    assert verify_quandle(make_trivial(n).table).valid


def test_unipotent_square_matches_modulus_square():
    # Z_n[T]/(1-T)^2 is isomorphic to Z_{n^2}[T]/(T-(kn+1)) when gcd(n, k) = 1
    for n in (2, 3, 4):
        left = make_alexander(n, [1, -2, 1])
        for k in range(1, n + 1):
            if np.gcd(n, k) == 1:
                right = make_alexander(n * n, [-(k * n + 1), 1])
                assert find_isomorphism(left, right) is not None


def test_isomorphism_search():
    assert find_isomorphism(make_dihedral(4), make_trivial(4)) is None
    assert find_isomorphism(make_dihedral(4), make_dihedral(5)) is None
    X = make_alexander(2, S4_POLY)
    f = find_isomorphism(X, X)
    assert f.images.tolist() == list(range(4))  # lexicographically first is the identity


@given(quandles, st.randoms(use_true_random=False))
def test_isomorphism_symmetric_under_relabelling(X, rng):
    perm = list(range(X.size))
    rng.shuffle(perm)
    p = np.array(perm)
    inv = np.argsort(p)
    Y = FiniteQuandle(p[X.table[inv[:, None], inv[None, :]]])
    f = find_isomorphism(X, Y)
    g = find_isomorphism(Y, X)
    assert f is not None and g is not None
    QuandleMap(X, Y, f.images)  # re-validates the homomorphism property
    assert f.is_bijective
