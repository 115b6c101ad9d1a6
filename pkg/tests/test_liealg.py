"""Lie algebra validation, adapted frames, and complex structure constants."""

from fractions import Fraction

import pytest

from acdol import catalog, docio
from acdol.kernel import Scalar
from acdol.liealg import (LieAlgebraError, adapted_frame, averaged_metric,
                          complexify, make_spec, validate_spec)
from conftest import random_nilpotent_spec, seeded_rng

J_PAIRS_4 = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]


def filiform_spec():
    return make_spec(4, ["X1", "X2", "X3", "X4"],
                     {(0, 1): {2: 1}, (0, 2): {3: 1}}, J_PAIRS_4)


def test_filiform_valid():
    validate_spec(filiform_spec())


def test_abelian_valid():
    validate_spec(make_spec(4, None, {}, J_PAIRS_4))


def test_odd_dimension_rejected():
    with pytest.raises(LieAlgebraError, match="even"):
        validate_spec(make_spec(3, ["a", "b", "c"], {}, [[0]] * 3))


def test_jacobi_violation_names_triple():
    bad = make_spec(4, ["X1", "X2", "X3", "X4"],
                    {(0, 1): {2: 1}, (1, 2): {1: 1}}, J_PAIRS_4)
    with pytest.raises(LieAlgebraError, match=r"\(X1, X2, X3\)"):
        validate_spec(bad)


def test_bad_J_rejected():
    J = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    with pytest.raises(LieAlgebraError, match="J"):
        validate_spec(make_spec(4, None, {}, J))


def test_incompatible_metric_rejected_then_averaged():
    g = [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    spec = make_spec(4, None, {}, J_PAIRS_4, metric=g)
    with pytest.raises(LieAlgebraError, match="J-compatible"):
        validate_spec(spec)
    fixed = averaged_metric(spec)
    validate_spec(fixed)
    assert fixed.metric[0][0] == Fraction(3, 2)


def test_indefinite_metric_rejected():
    g = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(LieAlgebraError, match="positive definite"):
        validate_spec(make_spec(4, None, {}, J_PAIRS_4, metric=g))


def test_filiform_frame():
    spec = validate_spec(filiform_spec())
    fr = adapted_frame(spec)
    z1, z2 = fr.vectors
    assert z1 == (Scalar(1), Scalar(0, -1), Scalar(0), Scalar(0))
    assert z2 == (Scalar(0), Scalar(0), Scalar(1), Scalar(0, -1))
    assert fr.norm_sq == (Fraction(1), Fraction(1))


def test_frame_determinism():
    spec = validate_spec(filiform_spec())
    assert adapted_frame(spec) == adapted_frame(spec)


def test_frame_eigenvector_property():
    rng = seeded_rng(77)
    for _ in range(5):
        spec = validate_spec(random_nilpotent_spec(rng, 2))
        fr = adapted_frame(spec)
        n = spec.dim
        for z in fr.vectors:
            jz = tuple(
                sum(Scalar.from_rational(spec.J[i][k]) * z[k]
                    for k in range(n))
                for i in range(n))
            assert jz == tuple(Scalar(0, 1) * c for c in z)


def test_su2su2_seeded_frame_matches_convention():
    doc = catalog.builtin("su2su2-nk")
    spec = docio.to_spec(doc)
    fr = adapted_frame(spec)
    # X = X2 + i X1 and cyclic
    assert fr.vectors[0] == (Scalar(0, 1), Scalar(0), Scalar(0),
                             Scalar(1), Scalar(0), Scalar(0))
    assert fr.norm_sq == (Fraction(1),) * 3


def test_bad_seed_list_rejected():
    doc = catalog.builtin("su2su2-nk")
    doc["frame_seeds"] = [1, 4, 5]  # X1 is the J-image of the X2 seed
    spec = docio.to_spec(doc)
    with pytest.raises(LieAlgebraError, match="seed"):
        adapted_frame(spec)


def test_complexify_filiform():
    spec = validate_spec(filiform_spec())
    fr = adapted_frame(spec)
    csc = complexify(spec, fr)
    half_i = Scalar(0, 1, 2)
    # [A, B] = (-1/2i)(B - conj B) = (i/2) B - (i/2) conj B
    assert csc.table[0][1][1] == half_i
    assert csc.table[0][1][3] == -half_i
    # [A, conj A] = i (B + conj B)
    assert csc.table[0][2][1] == Scalar(0, 1)
    assert csc.table[0][2][3] == Scalar(0, 1)


def test_complexify_kt():
    doc = catalog.builtin("kt-J")
    spec = docio.to_spec(doc)
    fr = adapted_frame(spec)
    csc = complexify(spec, fr)
    half_i = Scalar(0, 1, 2)
    for u, v in ((0, 1), (0, 3), (2, 1), (2, 3)):
        assert csc.table[u][v][1] == half_i
        assert csc.table[u][v][3] == -half_i


def test_complexify_su2su2():
    spec = docio.to_spec(catalog.builtin("su2su2-nk"))
    fr = adapted_frame(spec)
    csc = complexify(spec, fr)
    k = Scalar(1, 1)
    kbar = Scalar(1, -1)
    # [X, Y] = k Z + conj(k) conj(Z)
    assert csc.table[0][1][2] == k
    assert csc.table[0][1][5] == kbar
    # [X, conj Y] = conj(k) Z + k conj(Z)
    assert csc.table[0][4][2] == kbar
    assert csc.table[0][4][5] == k


def test_complexify_abelian_zero():
    spec = validate_spec(make_spec(4, None, {}, J_PAIRS_4))
    csc = complexify(spec, adapted_frame(spec))
    assert all(c.is_zero() for plane in csc.table for row in plane for c in row)


def test_complexify_conjugation_symmetry_random():
    rng = seeded_rng(99)
    for _ in range(5):
        spec = validate_spec(random_nilpotent_spec(rng, 2))
        csc = complexify(spec, adapted_frame(spec))  # raises if broken
        two_m = 2 * spec.m
        for u in range(two_m):
            for v in range(two_m):
                for w in range(two_m):
                    cu, cv, cw = ((u + spec.m) % two_m, (v + spec.m) % two_m,
                                  (w + spec.m) % two_m)
                    assert csc.table[cu][cv][cw] == csc.table[u][v][w].conj()
