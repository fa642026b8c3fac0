from __future__ import annotations

import pytest

from heckebranch import branching as br
from heckebranch import linalg
from heckebranch.bitableaux import Bipartition, enumerate_bipartitions
from heckebranch.exactfield import DEFAULT_POINT, ONE, Q, U, FieldDivisionByZero, Specialization
from heckebranch.seminormal import (
    affine_b_from_a,
    build_rep,
    kernel_matrix,
    rep_word,
    verify_relations,
)


@pytest.mark.parametrize("kind", ["a", "b"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_relations(n, kind):
    for lam in enumerate_bipartitions(n):
        rows = verify_relations(build_rep(lam, kind))
        assert rows and all(r["status"] == "pass" for r in rows), (str(lam), rows)


@pytest.mark.parametrize("u_one", [False, True])
def test_relations_at_u_one(u_one):
    for lam in enumerate_bipartitions(3):
        assert all(r["status"] == "pass" for r in verify_relations(build_rep(lam, "b", u_one)))


def test_b_matrices_agree_with_affine_image_of_a():
    for lam in enumerate_bipartitions(3):
        a, b = build_rep(lam, "a"), build_rep(lam, "b")
        derived = affine_b_from_a(a)
        for i in range(1, 4):
            assert linalg.mat_eq(derived[f"b{i}"], b.gen(i))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_irreducible(n):
    for lam in enumerate_bipartitions(n):
        rep = build_rep(lam, "b")
        mats = [linalg.specialize_matrix(rep.gen(i), Specialization(2, DEFAULT_POINT.q0))
                for i in range(1, n + 1)]
        assert br.commutant(mats).dim == 1


def test_pairwise_inequivalent():
    point = Specialization(2, DEFAULT_POINT.q0)
    shapes = enumerate_bipartitions(3)
    mats = {s: [linalg.specialize_matrix(build_rep(s, "b").gen(i), point) for i in range(1, 4)]
            for s in shapes}
    for s in shapes:
        for t in shapes:
            assert br.equivalent(mats[s], mats[t]) == (s == t)


@pytest.mark.parametrize("k", range(-3, 4))
@pytest.mark.parametrize("y", [ONE, -ONE, U, -U, U.inverse(), -U.inverse()])
def test_kernel_identities(k, y):
    try:
        M = kernel_matrix(k, y)
        Mp = kernel_matrix(k, y, "M'")
    except FieldDivisionByZero:
        assert k == 0 and y == ONE
        return
    assert linalg.det2(M) == -Q
    assert linalg.trace(M) == Q - 1
    assert linalg.mat_eq(linalg.mat_mul(Mp, Mp), linalg.identity(2))
    assert linalg.trace(Mp).is_zero()


def test_kernel_errors():
    with pytest.raises(FieldDivisionByZero):
        kernel_matrix(0, ONE)
    with pytest.raises(ValueError):
        kernel_matrix(1, ONE, "nope")


def test_rep_word_and_symbols():
    rep = build_rep(Bipartition((2,), (1,)), "b")
    assert linalg.mat_eq(rep_word(rep, [1, 1]), linalg.identity(rep.dim))
    assert linalg.mat_eq(rep_word(rep, ["b2"]), rep.gen(2))
    with pytest.raises(KeyError):
        rep_word(rep, ["a1"])


def test_json_dump_round_trips():
    from heckebranch.exactfield import RatFunc
    rep = build_rep(Bipartition((1,), (1,)), "a")
    j = rep.to_json()
    assert j["shape"] == "[1|1]"
    m = [[RatFunc.parse(x) for x in row] for row in j["matrices"]["a2"]]
    assert linalg.mat_eq(m, rep.gen(2))


def test_build_rep_validation():
    with pytest.raises(ValueError):
        build_rep(Bipartition((1,), ()), "c")
