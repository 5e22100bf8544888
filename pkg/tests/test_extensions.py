import numpy as np
import pytest
from hypothesis import given, strategies as st

from quandlekit.extensions import (
    ExtensionHypothesisError,
    NotACocycleError,
    Section,
    build_extension,
    crt_decompose_dihedral,
    dihedral_doubling_cocycle,
    extract_cocycle,
    find_pairing,
    is_trivial_extension,
    modulus_lift_cocycle,
    pullback_cocycle,
    qadic_alexander,
    unipotent_lift_cocycle,
    zero_section,
)
from quandlekit.golden import MODULUS_LIFT_2_2, MODULUS_LIFT_3_1, MODULUS_LIFT_3_2, UNIPOTENT_LIFT_2_2
from quandlekit.homology import Cochain2, FiniteAbelianGroup, coboundary1, cohomologous, is_cocycle2
from quandlekit.quandle import (
    QuandleMap,
    are_isomorphic,
    find_isomorphism,
    make_dihedral,
    make_product,
    make_trivial,
    product_projection,
    verify_quandle,
)

Z2 = FiniteAbelianGroup.cyclic(2)
R4 = make_dihedral(4)


def terms(phi):
    return {(x, y): a for x, y, a in phi.nonzero_terms()}


@pytest.mark.parametrize(
    "q,m,expected", [(2, 2, MODULUS_LIFT_2_2), (3, 1, MODULUS_LIFT_3_1), (3, 2, MODULUS_LIFT_3_2)]
)
def test_modulus_lift_tables(q, m, expected):
    _, phi = modulus_lift_cocycle(q, m)
    assert terms(phi) == expected


def test_unipotent_lift_table():
    X, phi = unipotent_lift_cocycle(2, 2)
    assert X == R4
    assert terms(phi) == UNIPOTENT_LIFT_2_2
    assert all(phi(x, x) == 0 for x in range(4))


def test_build_extension_examples():
    ext = build_extension(R4, Z2, Cochain2.from_terms(R4, Z2, MODULUS_LIFT_2_2))
    assert verify_quandle(ext.total.table).valid
    assert are_isomorphic(ext.total, make_dihedral(8))
    zero = build_extension(R4, Z2, Cochain2.zero(R4, Z2))
    assert are_isomorphic(zero.total, make_product(make_trivial(2), R4))


def test_build_extension_rejects_non_cocycles():
    with pytest.raises(NotACocycleError):
        build_extension(R4, Z2, Cochain2.from_terms(R4, Z2, [(0, 1)]))


@pytest.mark.parametrize("lift", [modulus_lift_cocycle, unipotent_lift_cocycle])
@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 1), (2, 3), (5, 1)])
def test_round_trip_with_canonical_pairing(lift, q, m):
    X, phi = lift(q, m)
    ext = build_extension(X, phi.group, phi)
    assert extract_cocycle(ext.total, X, phi.group, pairing=np.arange(ext.total.size)) == phi
    searched = extract_cocycle(ext.total, X, phi.group, projection=ext.projection)
    assert is_cocycle2(searched)
    assert cohomologous(searched, phi)


def test_extract_from_r8_with_digit_map():
    # R_8 -> Z_2 x R_4, r -> (top binary digit, r mod 4)
    R8 = make_dihedral(8)
    pairing = np.array([(r // 4) * 4 + r % 4 for r in range(8)])
    phi = extract_cocycle(R8, R4, Z2, pairing=pairing)
    assert phi == modulus_lift_cocycle(2, 2)[1]


def test_extract_from_product_is_zero():
    X = make_dihedral(3)
    E = make_product(make_trivial(2), X)
    assert extract_cocycle(E, X, Z2, pairing=np.arange(6)).is_zero()


def test_extract_reports_bad_pairing():
    R8 = make_dihedral(8)
    pairing = np.arange(8)
    pairing[[0, 1]] = pairing[[1, 0]]  # base part is no longer a homomorphism
    with pytest.raises(ExtensionHypothesisError) as info:
        extract_cocycle(R8, R4, Z2, pairing=pairing)
    assert info.value.witness is not None


def test_extract_requires_matching_size():
    with pytest.raises(ExtensionHypothesisError):
        extract_cocycle(make_dihedral(6), R4, Z2)


@given(st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_cohomologous_cocycles_give_equivalent_extensions(f):
    phi = Cochain2.from_terms(R4, Z2, MODULUS_LIFT_2_2)
    psi = phi + coboundary1(R4, Z2, f)
    e1, e2 = build_extension(R4, Z2, phi), build_extension(R4, Z2, psi)
    # (a, x) -> (a - f(x), x) commutes with the projections
    images = np.array([((a - f[x]) % 2) * 4 + x for a in range(2) for x in range(4)])
    iso = QuandleMap(e1.total, e2.total, images)
    assert iso.is_bijective
    assert np.array_equal(e2.projection.images[iso.images], e1.projection.images)


def test_sections():
    ext = build_extension(R4, Z2, Cochain2.from_terms(R4, Z2, MODULUS_LIFT_2_2))
    s = zero_section(ext)
    assert np.array_equal(ext.projection.images[s.images], np.arange(4))
    with pytest.raises(ValueError):
        Section(ext.projection, np.array([0, 0, 2, 3]))


def test_pullback():
    R3 = make_dihedral(3)
    P = make_product(R4, R3)
    p = product_projection(P, R4, R3)
    phi = Cochain2.from_terms(R4, Z2, MODULUS_LIFT_2_2)
    assert pullback_cocycle(p, Cochain2.zero(R4, Z2)).is_zero()
    pulled = pullback_cocycle(p, phi)
    assert is_cocycle2(pulled)
    E = build_extension(P, Z2, pulled).total
    assert find_isomorphism(E, make_dihedral(24)) is not None
    psi = Cochain2.from_terms(R4, Z2, [(0, 1), (0, 3)])
    assert pullback_cocycle(p, phi + psi) == pulled + pullback_cocycle(p, psi)


def test_crt():
    f, moduli = crt_decompose_dihedral(6)
    assert moduli == [2, 3] and f.is_bijective
    f, moduli = crt_decompose_dihedral(4)
    assert moduli == [4] and f.images.tolist() == [0, 1, 2, 3]
    f, moduli = crt_decompose_dihedral(12)
    assert moduli == [4, 3]
    assert find_isomorphism(make_dihedral(12), f.target) is not None


@pytest.mark.parametrize("n", range(1, 9))
def test_doubling(n):
    phi = dihedral_doubling_cocycle(n)
    assert phi.quandle == make_dihedral(2 * n)
    assert are_isomorphic(build_extension(phi.quandle, Z2, phi).total, make_dihedral(4 * n))


def test_doubling_on_r4_matches_modulus_lift():
    assert cohomologous(dihedral_doubling_cocycle(2), Cochain2.from_terms(R4, Z2, MODULUS_LIFT_2_2))


def test_trivial_extension_detection():
    assert is_trivial_extension(build_extension(R4, Z2, Cochain2.zero(R4, Z2)))
    X, phi = modulus_lift_cocycle(2, 2)
    assert not is_trivial_extension(build_extension(X, Z2, phi))
    X, phi = unipotent_lift_cocycle(3, 2)
    assert not is_trivial_extension(build_extension(X, phi.group, phi))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_modulus_family_starts_trivial(q):
    # T = 1 - q acts as the identity mod q
    assert qadic_alexander(q, 1) == make_trivial(q)


def test_find_pairing_none_for_wrong_fibres():
    # T_8 has no projection onto R_4 with shift-form fibres
    assert find_pairing(make_trivial(8), R4, Z2) is None


def test_extract_reports_fibre_dependent_offset():
    X, phi = modulus_lift_cocycle(3, 2)
    ext = build_extension(X, phi.group, phi)
    pairing = np.arange(27)
    for a in range(3):
        pairing[a * 9 + 1] = ((-a) % 3) * 9 + 1  # negate the fibre over 1: not a translation
    with pytest.raises(ExtensionHypothesisError, match="depends on more than the base pair") as info:
        extract_cocycle(ext.total, X, phi.group, pairing=pairing)
    assert info.value.witness == (10, 0)
