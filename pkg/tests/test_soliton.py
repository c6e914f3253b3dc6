import random

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from liegeom.algebra import ad, basis_vector, catalog, is_derivation
from liegeom.exact import Surd, eye, is_zero, sqrt_exact
from liegeom.extension import extend
from liegeom.geometry import InvariantMetric, curvature
from liegeom.soliton import (
    Degenerate,
    NoExtension,
    detect_algebraic_soliton,
    necessary_conditions,
    solve_abelian_extension,
    solve_div_free_exponent,
    solve_soliton_extension,
    trace_identities,
    verify_quasi_einstein,
)
from support import diag, random_metric


def test_heis3_nilsoliton():
    cert = detect_algebraic_soliton(catalog("heis3").algebra, eye(3))
    assert cert.lam == mpq(-3, 2)
    assert np.all(cert.D == diag(1, 1, 2))
    assert cert.scal == cert.lam / 3
    assert cert.trace_D2 == -cert.lam * cert.trace_D


def test_sol3_soliton():
    cert = detect_algebraic_soliton(catalog("sol3").algebra, eye(3))
    assert cert.lam == -2 and np.all(cert.D == diag(2, 2, 0))
    assert cert.scal == cert.lam


def test_simple3_einstein_has_zero_derivation():
    cert = detect_algebraic_soliton(catalog("simple3").algebra, eye(3))
    assert cert.lam == mpq(1, 2) and is_zero(cert.D)


def test_berger_metric_is_not_a_soliton():
    found = detect_algebraic_soliton(catalog("simple3").algebra, diag(2, 1, 1))
    assert not found and "derivation" in found.reason


def test_abelian_is_degenerate_flat():
    cert = detect_algebraic_soliton(catalog("abelian(3)").algebra, diag(1, 2, 3))
    assert cert.degenerate and cert.lam == 0 and is_zero(cert.D)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["heis3", "sol3", "simple3"]), st.fractions(min_value="1/4", max_value=6, max_denominator=5))
def test_soliton_scaling(name, factor):
    # Ric is scale invariant, so on c*g the operator and hence lam, D scale by 1/c
    c = mpq(factor)
    alg = catalog(name).algebra
    a = detect_algebraic_soliton(alg, eye(3))
    b = detect_algebraic_soliton(alg, InvariantMetric(eye(3)).scaled(c))
    assert b.lam == a.lam / c
    assert np.all(b.D == a.D / c)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_soliton_derivation_property(seed):
    # whenever a certificate is produced its D is a derivation with Q = lam Id + D
    rng = random.Random(seed)
    for name in ("heis3", "sol3", "simple3"):
        alg = catalog(name).algebra
        g = InvariantMetric(random_metric(rng, 3))
        cert = detect_algebraic_soliton(alg, g)
        if cert:
            assert is_derivation(alg, cert.D)
            Q = g.inv.dot(curvature(alg, g).ricci)
            assert np.all(Q == cert.lam * eye(3) + cert.D)


def test_heis3_any_metric_is_soliton():
    # every left-invariant metric on the Heisenberg group is a nilsoliton
    rng = random.Random(8)
    alg = catalog("heis3").algebra
    for _ in range(10):
        assert detect_algebraic_soliton(alg, random_metric(rng, 3))


@pytest.mark.parametrize("m,alpha_sq", [(mpq(-19, 10), 5), (-1, mpq(1, 2)), (2, mpq(1, 8))])
def test_sol3_extension_exists(m, alpha_sq):
    cert = detect_algebraic_soliton(catalog("sol3").algebra, eye(3))
    out = solve_soliton_extension(cert, m)
    assert out and out.alpha_sq == alpha_sq
    assert out.alpha * out.alpha == alpha_sq
    assert out.a == out.alpha * cert.lam
    qe = verify_quasi_einstein(out.extension(), m, out.a)
    assert qe.ok and qe.lam == cert.lam


def test_sol3_alpha_is_sqrt5_at_m_minus_19_10():
    out = solve_soliton_extension(detect_algebraic_soliton(catalog("sol3").algebra, eye(3)), "-19/10")
    assert isinstance(out.alpha, Surd) and out.alpha == sqrt_exact(5)


@pytest.mark.parametrize("m,boundary", [(-2, True), (-3, False)])
def test_sol3_extension_refused(m, boundary):
    out = solve_soliton_extension(detect_algebraic_soliton(catalog("sol3").algebra, eye(3)), m)
    assert isinstance(out, NoExtension) and not out and out.boundary is boundary


def test_m_zero_rejected():
    cert = detect_algebraic_soliton(catalog("heis3").algebra, eye(3))
    with pytest.raises(ValueError):
        solve_soliton_extension(cert, 0)


@pytest.mark.parametrize("m", [-1, 1, 3, "5/2"])
def test_heis3_extension_quasi_einstein(m):
    cert = detect_algebraic_soliton(catalog("heis3").algebra, eye(3))
    out = solve_soliton_extension(cert, m)
    ext = out.extension()
    qe = verify_quasi_einstein(ext, m, out.a)
    assert qe.ok and qe.lam == cert.lam
    assert necessary_conditions(ext, out.a).ok
    assert trace_identities(ext, out.a).ok


@pytest.mark.parametrize(
    "S,ok", [((1, 1, 0), True), ((1, 1, 4), True), ((1, 1, 1), False), ((0, 0, 0), True)]
)
def test_abelian_lambda_zero(S, ok):
    base = catalog("abelian(3)").algebra
    out = solve_abelian_extension(base, eye(3), diag(*S), -2)
    assert bool(out) is ok and out.normal
    if ok:
        qe = verify_quasi_einstein(extend(base, eye(3), diag(*S), 1), -2, out.a)
        assert qe.ok and qe.lam == 0


def test_abelian_construction_needs_abelian_base():
    with pytest.raises(ValueError):
        solve_abelian_extension(catalog("heis3").algebra, eye(3), diag(1, 1, 2), -2)


def test_wrong_exponent_fails_verification():
    base = catalog("abelian(3)").algebra
    qe = verify_quasi_einstein(extend(base, eye(3), eye(3), 1), -2, 1)
    assert not qe.ok


def test_necessary_conditions_flags_non_soliton_base():
    base = catalog("simple3").algebra
    ext = extend(base, diag(2, 1, 1), ad(base, basis_vector(3, 0)), 1)
    nc = necessary_conditions(ext, 1)
    assert nc.normal and nc.branch == "violation" and not nc.ok


@pytest.mark.parametrize("n", [3, 4, 5])
def test_hyperbolic_upper_endpoint(n):
    base = catalog(f"hyperbolic_base({n})").algebra
    ext = extend(base, eye(n - 1), eye(n - 1), 2)
    ti = trace_identities(ext, -2)
    assert ti.ok and ti.flipped and ti.endpoint == "hyperbolic"
    assert ti.laplacian == (n - 1) * ti.a


def test_skew_extension_product_endpoint():
    base = catalog("simple3").algebra
    ext = extend(base, eye(3), ad(base, basis_vector(3, 0)), 1)
    ti = trace_identities(ext, 1)
    assert ti.ok and ti.endpoint == "product" and ti.laplacian == 0


def test_solve_div_free_exponent():
    base = catalog("hyperbolic_base(4)").algebra
    ext = extend(base, eye(3), eye(3), 1)
    a = solve_div_free_exponent(ext)
    assert a == -1  # tr(H^2)/tr(H) with H = -Id on the level sets
    assert trace_identities(ext, a).div_free

    heis = catalog("heis3")
    ext = extend(heis.algebra, eye(3), heis.derivation, 1)
    assert solve_div_free_exponent(ext) == mpq(-3, 2)
    assert trace_identities(ext, mpq(-3, 2)).div_free

    s = catalog("simple3")
    out = solve_div_free_exponent(extend(s.algebra, eye(3), s.derivation, 1))
    assert isinstance(out, Degenerate) and not out
