import random

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from liegeom.algebra import (
    InvalidAlgebra,
    LieAlgebra,
    ad,
    basis_vector,
    catalog,
    catalog_names,
    derivation_basis,
    derivation_residual,
    is_derivation,
    is_unimodular,
    validate_algebra,
)
from support import diag, random_rational

NAMES = ["heis3", "sol3", "simple3", "abelian(3)", "abelian(4)", "hyperbolic_base(4)"]
small = st.fractions(min_value=-5, max_value=5, max_denominator=6).map(mpq)


@pytest.mark.parametrize("name", NAMES)
def test_catalog_entries_validate(name):
    e = catalog(name)
    assert validate_algebra(e.algebra.c) == []
    if e.derivation is not None:
        assert is_derivation(e.algebra, e.derivation)


def test_catalog_shapes():
    assert catalog("heis3").algebra.dim == 3
    assert catalog("abelian(3)").algebra.is_abelian
    assert catalog("hyperbolic_base(5)").algebra.dim == 4
    s = catalog("simple3").algebra
    for i in range(3):
        expected = np.zeros(3, dtype=object)
        expected[(i + 2) % 3] = 1
        assert np.all(s.bracket(basis_vector(3, i), basis_vector(3, (i + 1) % 3)) == expected)


def test_catalog_unknown_lists_names():
    with pytest.raises(KeyError) as info:
        catalog("heis5")
    for n in catalog_names():
        assert n in str(info.value)


def test_heis3_has_single_relation():
    c = catalog("heis3").algebra.c
    assert c[0, 1, 2] == 1 and c[1, 0, 2] == -1
    assert sum(1 for v in c.reshape(-1) if v != 0) == 2


def test_ad_matrices_of_simple3():
    s = catalog("simple3").algebra
    ad1 = ad(s, basis_vector(3, 0))
    expected = np.array([[0, 0, 0], [0, 0, -1], [0, 1, 0]])
    assert np.all(ad1 == expected)


def test_antisymmetry_violation_reports_indices():
    c = np.zeros((3, 3, 3), dtype=object)
    c[0, 1, 2] = mpq(1)  # missing [X2, X1] = -X3
    bad = validate_algebra(c)
    assert bad and bad[0].identity == "antisymmetry" and bad[0].indices == (1, 2, 3)
    with pytest.raises(InvalidAlgebra):
        LieAlgebra(c)


def test_jacobi_violation_detected():
    # [X1,X2]=X3, [X2,X3]=X1, [X3,X1]=X1 is not a Lie algebra
    with pytest.raises(InvalidAlgebra) as info:
        LieAlgebra.from_brackets(3, [(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 1, 1)])
    assert any(v.identity == "jacobi" for v in info.value.violations)


def test_from_brackets_antisymmetric_completion_and_ranges():
    alg = LieAlgebra.from_brackets(2, [(1, 2, 2, "1/2")])
    assert alg.c[1, 0, 1] == mpq(-1, 2)
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets(2, [(1, 3, 2, 1)])


def test_unimodular_examples():
    assert is_unimodular(catalog("heis3").algebra)
    assert is_unimodular(catalog("simple3").algebra)
    assert is_unimodular(catalog("sol3").algebra)
    aff = LieAlgebra.from_brackets(2, [(1, 2, 2, 1)])
    assert not is_unimodular(aff)


@pytest.mark.parametrize("lam", [(1, 1, 2), (1, 2, 3), (-1, 4, 3), (1, 1, 1), (0, 0, 1)])
def test_heis3_diagonal_derivations(lam):
    alg = catalog("heis3").algebra
    assert is_derivation(alg, diag(*lam)) == (lam[2] == lam[0] + lam[1])


def test_derivation_residual_entries():
    alg = catalog("heis3").algebra
    R = derivation_residual(alg, diag(1, 1, 1))
    # D[X1,X2] - [DX1,X2] - [X1,DX2] = X3 - 2 X3
    assert R[0, 1, 2] == -1 and R[1, 0, 2] == 1
    assert sum(1 for v in R.reshape(-1) if v != 0) == 2


@pytest.mark.parametrize("name,dim", [("heis3", 6), ("sol3", 4), ("simple3", 3), ("abelian(3)", 9)])
def test_derivation_algebra_dimension(name, dim):
    alg = catalog(name).algebra
    basis = derivation_basis(alg)
    assert len(basis) == dim
    assert all(is_derivation(alg, B) for B in basis)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(NAMES[:4]), st.lists(small, min_size=8, max_size=8), small, small)
def test_ad_linear(name, vals, a, b):
    alg = catalog(name).algebra
    n = alg.dim
    u = np.array(vals[:n], dtype=object)
    v = np.array(vals[4:4 + n], dtype=object)
    assert np.all(ad(alg, a * u + b * v) == a * ad(alg, u) + b * ad(alg, v))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(NAMES), st.lists(small, min_size=4, max_size=4))
def test_inner_derivations_and_unimodular_trace(name, vals):
    alg = catalog(name).algebra
    v = np.array(vals[: alg.dim], dtype=object)
    A = ad(alg, v)
    assert is_derivation(alg, A)
    if is_unimodular(alg):
        assert np.trace(A) == 0


def test_unimodular_trace_on_100_vectors():
    rng = random.Random(3)
    for name in ("heis3", "simple3", "sol3"):
        alg = catalog(name).algebra
        for _ in range(100):
            v = np.array([random_rational(rng) for _ in range(3)], dtype=object)
            assert np.trace(ad(alg, v)) == 0
