import random

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from liegeom.algebra import NotADerivation, ad, basis_vector, catalog
from liegeom.exact import eye, is_zero, sqrt_exact
from liegeom.extension import (
    extend,
    extension_invariants,
    extension_ricci_formula,
    hess_r,
    hess_r_operator,
    laplacian_r,
    q_tensor,
    semidirect_brackets,
)
from liegeom.geometry import curvature, koszul_connection, lower
from support import diag, random_derivation, random_metric, ricci_oracle

BASES = ["heis3", "sol3", "simple3", "abelian(3)"]
seeds = st.integers(min_value=0, max_value=10**6)


def test_semidirect_brackets_layout():
    base = catalog("abelian(2)").algebra
    c = semidirect_brackets(base, diag(1, 2), mpq(3))
    # [xi, X1] = 3 X1, [xi, X2] = 6 X2
    assert c[0, 1, 1] == 3 and c[0, 2, 2] == 6 and c[1, 0, 1] == -3


def test_extend_rejects_non_derivation():
    base = catalog("heis3").algebra
    with pytest.raises(NotADerivation):
        extend(base, eye(3), diag(1, 1, 1))


def test_hyperbolic_extension_is_constant_curvature():
    # R^3 with ad_xi = Id: real hyperbolic 4-space, Ric = -(n-1) g
    ext = extend(catalog("abelian(3)").algebra, eye(3), eye(3), 1)
    data = curvature(ext.total, ext.g_total)
    assert np.all(data.ricci == -3 * eye(4))
    assert is_zero(data.weyl)
    assert laplacian_r(ext) == -3


def test_hess_r_matches_connection():
    # Hess r(X, Y) = -g(nabla_X xi, Y) with grad r = xi ... here xi = grad r gives
    # Hess r(X, Y) = g(nabla_X xi, Y); the frame components come from gamma[:, 0, :]
    rng = random.Random(1)
    for name in BASES:
        base = catalog(name).algebra
        ext = extend(base, random_metric(rng, 3), random_derivation(rng, base), mpq(2, 3))
        gamma = koszul_connection(ext.total, ext.g_total)
        from_gamma = gamma[:, 0, :].dot(ext.g_total.g)
        assert np.all(hess_r(ext) == from_gamma)
        assert np.all(hess_r(ext) == hess_r(ext).T)
        assert np.all(lower(ext.g_total, hess_r_operator(ext)) == hess_r(ext))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(BASES), seeds, st.sampled_from(["1", "1/2", "-3", "sqrt(2)", "2*sqrt(3)"]))
def test_ricci_formula_equals_direct(name, seed, alpha):
    rng = random.Random(seed)
    base = catalog(name).algebra
    ext = extend(base, random_metric(rng, 3), random_derivation(rng, base), alpha)
    assert np.all(extension_ricci_formula(ext) == curvature(ext.total, ext.g_total).ricci)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(BASES), seeds)
def test_extension_ricci_matches_connection_free_oracle(name, seed):
    rng = random.Random(seed)
    base = catalog(name).algebra
    ext = extend(base, random_metric(rng, 3), random_derivation(rng, base), mpq(rng.randint(1, 4), 3))
    assert np.all(extension_ricci_formula(ext) == ricci_oracle(ext.total.c, ext.g_total.g))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(BASES), seeds)
def test_bochner_identities(name, seed):
    rng = random.Random(seed)
    base = catalog(name).algebra
    ext = extend(base, random_metric(rng, 3), random_derivation(rng, base), mpq(rng.randint(-3, 3) or 1, 2))
    inv = extension_invariants(ext)
    assert inv.ok
    assert inv.ric_xi_xi <= 0
    assert inv.ric_xi_xi == -inv.hess_norm_sq


def test_skew_derivation_gives_ric_xi_xi_zero():
    base = catalog("simple3").algebra
    ext = extend(base, eye(3), ad(base, basis_vector(3, 0)), 1)
    inv = extension_invariants(ext)
    assert inv.ric_xi_xi == 0 and is_zero(ext.S) and inv.ok
    assert laplacian_r(ext) == 0


def test_surd_scale_stays_exact():
    base = catalog("sol3").algebra
    ext = extend(base, eye(3), diag(2, 2, 0), sqrt_exact(5))
    inv = extension_invariants(ext)
    assert inv.ok
    assert inv.ric_xi_xi == -40  # -alpha^2 tr(S^2) = -5 * 8


def test_q_tensor_components():
    ext = extend(catalog("abelian(2)").algebra, eye(2), eye(2), 1)
    q = q_tensor(ext, mpq(-1))
    # a^2 dr^2 + a Hess r with Hess r = -h
    assert np.all(q == eye(3))
