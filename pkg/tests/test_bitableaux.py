from __future__ import annotations

from math import comb

import pytest
from sympy.functions.combinatorial.numbers import partition
from hypothesis import given, settings
from hypothesis import strategies as st

from heckebranch.bitableaux import (
    Bipartition,
    Marker,
    ShapeError,
    ShapeTransformKind,
    Side,
    axial_distance,
    classify,
    conjugate,
    enumerate_bipartitions,
    enumerate_standard,
    is_fixed,
    transform,
)
from heckebranch.suite import hook_count


@pytest.mark.parametrize("n", range(1, 9))
def test_bipartition_count_matches_partition_convolution(n):
    expected = sum(partition(k) * partition(n - k) for k in range(n + 1))
    shapes = enumerate_bipartitions(n)
    assert len(shapes) == expected
    assert len(set(shapes)) == len(shapes)


def test_count_at_four_is_twenty():
    assert len(enumerate_bipartitions(4)) == 20


def test_enumeration_order():
    shapes = enumerate_bipartitions(2)
    assert [str(s) for s in shapes] == ["[2|]", "[1,1|]", "[1|1]", "[|2]", "[|1,1]"]


@pytest.mark.parametrize("n", range(1, 6))
def test_tableau_counts_match_hook_formula(n):
    for s in enumerate_bipartitions(n):
        tabs = enumerate_standard(s)
        assert len(tabs) == comb(n, sum(s.first)) * hook_count(s.first) * hook_count(s.second)
        assert all(t.is_standard() for t in tabs)
        assert len(set(tabs)) == len(tabs)


@pytest.mark.parametrize("text", ["[2,1|1]", "[|2]", "[3|]", "[1,1|1,1]"])
def test_shape_string_round_trip(text):
    assert str(Bipartition.parse(text)) == text


def test_bad_shape_rejected():
    with pytest.raises(ValueError):
        Bipartition.parse("[1,2|1]")
    with pytest.raises(ValueError):
        Bipartition.parse("2,1")


partitions = st.lists(st.integers(1, 4), max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True)))


@settings(max_examples=80, deadline=None)
@given(partitions)
def test_conjugation_is_an_involution(p):
    assert conjugate(conjugate(p)) == p
    assert sum(conjugate(p)) == sum(p)


@pytest.mark.parametrize("kind", list(ShapeTransformKind))
def test_transforms_are_involutions_on_tableaux(kind):
    for s in enumerate_bipartitions(4):
        for t in enumerate_standard(s):
            x = transform(t, kind)
            assert x.is_standard()
            assert x.shape == transform(s, kind)
            assert transform(x, kind) == t


def test_transform_composition_is_klein():
    S, T, TS = ShapeTransformKind.SWAP, ShapeTransformKind.TRANSPOSE, ShapeTransformKind.TRANSPOSE_SWAP
    assert S.compose(T) is TS and T.compose(TS) is S and S.compose(S) is None


def test_axial_distance_antisymmetric():
    for t in enumerate_standard(Bipartition((2, 1), (1,))):
        for k in range(1, 5):
            for l in range(1, 5):
                if k != l:
                    assert axial_distance(t, k, l) == -axial_distance(t, l, k)


@pytest.mark.parametrize("marker", [Marker.SHARP, Marker.FLAT, Marker.NATURAL])
def test_halves_are_balanced_and_swapped(marker):
    kind = {Marker.SHARP: ShapeTransformKind.SWAP, Marker.FLAT: ShapeTransformKind.TRANSPOSE,
            Marker.NATURAL: ShapeTransformKind.TRANSPOSE_SWAP}[marker]
    for n in range(2, 6):
        for s in enumerate_bipartitions(n):
            if not is_fixed(s, marker) or s == Bipartition((1,), (1,)):
                continue
            sides = {t: classify(t, marker) for t in enumerate_standard(s)}
            plus = [t for t, v in sides.items() if v is Side.PLUS]
            assert 2 * len(plus) == len(sides)
            assert all(sides[transform(t, kind)] is Side.MINUS for t in plus)


def test_flat_halving_undefined_on_one_one():
    t = enumerate_standard(Bipartition((1,), (1,)))[0]
    with pytest.raises(ShapeError):
        classify(t, Marker.FLAT)


def test_classify_rejects_moved_shape():
    t = enumerate_standard(Bipartition((2,), (1,)))[0]
    with pytest.raises(ShapeError):
        classify(t, Marker.SHARP)


def test_dagger_quarter():
    s = Bipartition((2, 1), (2, 1))
    tabs = enumerate_standard(s)
    plus = [t for t in tabs if classify(t, Marker.DAGGER) is Side.PLUS]
    assert 4 * len(plus) == len(tabs) == 80


def test_marker_parse_symbols():
    assert Marker.parse("♯") is Marker.SHARP
    assert Marker.parse("†") is Marker.DAGGER
    assert Marker.parse("natural") is Marker.NATURAL
