from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from heckebranch import branching as br
from heckebranch import hecke, linalg
from heckebranch.bitableaux import (
    Bipartition,
    Marker,
    ShapeError,
    ShapeTransformKind,
    enumerate_bipartitions,
    enumerate_standard,
    is_fixed,
    transform,
)
from heckebranch.exactfield import DEFAULT_POINT, ONE, RatFunc

ALL_SHAPES_4 = [s for n in range(1, 5) for s in enumerate_bipartitions(n)]


def test_psi_factor_cases():
    t = enumerate_standard(Bipartition((2,), (1,)))[0]
    assert br.psi_factor(t, 2, 1) == ONE  # 1 and 2 in one row
    assert br.psi_value(t).is_zero() is False


@pytest.mark.parametrize("kind", ["natural", "flat"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_intertwiners(n, kind):
    for lam in enumerate_bipartitions(n):
        rows = br.intertwiner_check(lam, kind)
        assert all(r["status"] == "pass" for r in rows), (str(lam), rows)


def test_intertwiner_rejects_other_markers():
    with pytest.raises(ValueError):
        br.intertwiner_check(Bipartition((1,), (1,)), "sharp")


def test_intertwiner_detects_wrong_sign():
    """Negative control: flipping the b1 sign of the flat rule must fail."""
    lam = Bipartition((2,), (1,))
    src = br.build_rep(lam, "b", True)
    dst = br.build_rep(transform(lam, ShapeTransformKind.TRANSPOSE), "b", True)
    Qm = br.intertwiner_matrix(lam, ShapeTransformKind.TRANSPOSE, True)
    lhs = linalg.mat_mul(dst.gen(1), Qm)
    rhs = linalg.mat_scale(linalg.mat_mul(Qm, src.gen(1)), -1)
    assert not linalg.mat_eq(lhs, rhs)


@pytest.mark.parametrize("kind", list(ShapeTransformKind))
def test_derived_actions(kind):
    for lam in ALL_SHAPES_4:
        assert all(r["status"] == "pass" for r in br.derived_action_check(lam, kind))


def test_omega():
    for n in range(2, 5):
        for lam in enumerate_bipartitions(n):
            if is_fixed(lam, Marker.SHARP):
                assert all(r["status"] == "pass" for r in br.omega_check(lam))
    with pytest.raises(ShapeError):
        br.omega_check(Bipartition((2,), (1,)))


@pytest.mark.parametrize("marker", list(Marker))
@pytest.mark.parametrize("n", [2, 3])
def test_generating_words_generate(n, marker):
    full = 2**n * factorial(n)
    expected = {Marker.DAGGER: full // 4}.get(marker, full // 2)
    assert br.generated_dimension(n, marker) == expected


@pytest.mark.parametrize("marker", [Marker.SHARP, Marker.FLAT, Marker.DAGGER])
def test_generating_words_are_fixed(marker):
    alg = hecke.HeckeAlgebra(3, True)
    invs = {Marker.SHARP: ["sharp"], Marker.FLAT: ["flat"], Marker.DAGGER: ["sharp", "flat"]}[marker]
    for w in br.generating_words(3, marker):
        x = alg.b_word(w)
        for inv in invs:
            assert hecke.involute(inv, x) == x


def test_natural_words_fixed_generically():
    alg = hecke.HeckeAlgebra(3)
    for w in br.generating_words(3, Marker.NATURAL):
        x = alg.b_word(w)
        assert hecke.involute("natural", x) == x


def test_restrict_requires_u_one():
    rep = br.build_rep(Bipartition((1,), (1,)), "b", False)
    with pytest.raises(ValueError):
        br.restrict(rep, "sharp")
    r = br.restrict(rep, "natural")
    assert len(r.matrices) == len(r.words) == 2


def test_exact_and_modular_intertwiner_spaces_agree():
    lam = Bipartition((2, 1), (1,))
    g = br.restriction_at(lam, Marker.FLAT, DEFAULT_POINT)
    exact = br.intertwiner_space(g, g)
    modular = br.intertwiner_space(g, g, modulus=2**61 - 1)
    assert len(exact) == len(modular) == 2


@pytest.mark.parametrize("marker", list(Marker))
def test_cyclic_vector_dimension_matches_exact(marker):
    for lam in enumerate_bipartitions(4):
        g = br.restriction_at(lam, marker, DEFAULT_POINT)
        assert br.cyclic_commutant_dimension(g) == br.commutant(g).dim


def test_large_commutant_uses_witnesses():
    lam = Bipartition((2, 1), (1,))
    g = br.restriction_at(lam, Marker.FLAT, DEFAULT_POINT)
    w = br._commutant_helpers(lam, Marker.FLAT, DEFAULT_POINT) or ()
    d = len(g[0])
    ident = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    F = linalg.specialize_matrix(br.intertwiner_matrix(lam, ShapeTransformKind.TRANSPOSE, True), DEFAULT_POINT)
    res = br.commutant(g, witnesses=[ident, F], exact_limit=0)
    assert (res.lower, res.upper, res.commutative) == (2, 2, True)
    assert w == ()


def test_clifford_restrictions_of_swapped_shapes_are_equivalent():
    """A moved shape and its image restrict to isomorphic modules."""
    for lam in enumerate_bipartitions(3):
        mu = transform(lam, ShapeTransformKind.TRANSPOSE)
        if mu == lam:
            continue
        a = br.restriction_at(lam, Marker.FLAT, DEFAULT_POINT)
        b = br.restriction_at(mu, Marker.FLAT, DEFAULT_POINT)
        assert br.equivalent(a, b)
        other = [s for s in enumerate_bipartitions(3) if s not in (lam, mu)
                 and len(enumerate_standard(s)) == len(enumerate_standard(lam))]
        for s in other:
            assert not br.equivalent(a, br.restriction_at(s, Marker.FLAT, DEFAULT_POINT))


def test_fixed_shape_halves_are_inequivalent():
    rpt = br.split(Bipartition((2, 1), (1,)), Marker.FLAT)
    assert rpt.ok and rpt.commutant.dim == 2


def test_equivalent_checks_sizes():
    a = br.restriction_at(Bipartition((2,), (1,)), Marker.SHARP, DEFAULT_POINT)
    b = br.restriction_at(Bipartition((1,), (1, 1)), Marker.SHARP, DEFAULT_POINT)
    assert br.equivalent(a, a, seed=5)
    with pytest.raises(ValueError):
        br.equivalent(a, b[:1])


@pytest.mark.parametrize("lam,marker", [(s, m) for s in enumerate_bipartitions(4)
                                        for m in (Marker.SHARP, Marker.FLAT, Marker.NATURAL)
                                        if is_fixed(s, m)])
def test_two_fold_splits_n4(lam, marker):
    rpt = br.split(lam, marker)
    assert rpt.ok, rpt.to_json()["checks"]
    assert [b.dim for b in rpt.blocks] == [len(enumerate_standard(lam)) // 2] * 2


def test_one_one_special_case():
    lam = Bipartition((1,), (1,))
    for m in (Marker.SHARP, Marker.FLAT, Marker.NATURAL):
        rpt = br.split(lam, m)
        assert rpt.ok and len(rpt.blocks) == 2 and rpt.commutant.dim == 2


def test_split_rejects_moved_shapes():
    with pytest.raises(ShapeError):
        br.split(Bipartition((2,), (1,)), "sharp")
    rpt = br.unsplit_report(Bipartition((2,), (1,)), "sharp")
    assert rpt.ok and rpt.commutant.dim == 1


def test_split_report_is_deterministic():
    a = br.split(Bipartition((2, 1), (1,)), Marker.FLAT).to_json()
    b = br.split(Bipartition((2, 1), (1,)), Marker.FLAT).to_json()
    assert a == b


@pytest.mark.parametrize("marker,count", [(Marker.SHARP, 13), (Marker.FLAT, 16),
                                          (Marker.NATURAL, 13), (Marker.DAGGER, 11)])
def test_basic_sets_n4(marker, count):
    r = br.basic_set(4, marker, certify=True)
    assert r["count"] == count
    assert r["audit"] == "pass"


def test_dagger_families_n4():
    r = br.basic_set(4, Marker.DAGGER)
    assert r["families"] == {"lambda": 3, "mu": 1, "nu": 2, "kappa": 1}


def test_basic_set_validation():
    with pytest.raises(ValueError):
        br.basic_set(3, Marker.DAGGER)


def test_psi_table_zero_guard():
    # every shape of size <= 5 has nonvanishing psi
    for n in range(1, 6):
        for lam in enumerate_bipartitions(n):
            for u_one in (False, True):
                assert br.psi(lam, u_one).zeros() == []


def test_swap_sign_of_psi():
    """psi(T*) = (-1)^(n/2) psi(T) at u = 1 for swap-fixed shapes."""
    for lam in (Bipartition((1,), (1,)), Bipartition((2,), (2,)), Bipartition((1, 1), (1, 1))):
        table = br.psi(lam, True)
        sign = (-1) ** (lam.n // 2)
        for t in enumerate_standard(lam):
            assert table[transform(t, ShapeTransformKind.SWAP)] == table[t] * RatFunc(sign)
