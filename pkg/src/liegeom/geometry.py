"""Curvature of left-invariant metrics, computed exactly from brackets.

Index conventions (0-based arrays):

* ``gamma[i, j, k]`` is the ``X_k`` component of ``nabla_{X_i} X_j``;
* ``R[i, j, k, l]`` is the ``X_l`` component of ``R(X_i, X_j) X_k`` with
  ``R(X,Y) = [nabla_X, nabla_Y] - nabla_{[X,Y]}``;
* ``ric[j, k] = R[i, j, k, i]`` summed over ``i``;
* bilinear forms are lower-index matrices, covectors are lower-index vectors.

Every tensor here is left-invariant, so its frame components are constants and
covariant derivatives act through the connection coefficients alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import LieAlgebra, ad, basis_vector, is_derivation
from .exact import exact_array, eye, inverse, is_positive_definite, is_zero, mpq

__all__ = [
    "InvariantMetric",
    "NotPositiveDefinite",
    "Curvature",
    "DivergenceTerms",
    "koszul_connection",
    "torsion_residual",
    "metric_residual",
    "riemann",
    "ricci",
    "ricci_operator",
    "curvature",
    "lower",
    "raise_form",
    "metric_adjoint",
    "metric_adjoint_split",
    "endo_pairing",
    "covariant_divergence",
    "divergence_closed_form",
    "sectional_curvature",
    "schouten",
    "weyl",
    "cotton",
    "bianchi_residual",
    "is_conformally_flat",
]


class NotPositiveDefinite(ValueError):
    pass


class InvariantMetric:
    """Inner product on the Lie algebra, stored with its exact inverse."""

    __slots__ = ("g", "inv", "dim")

    def __init__(self, g):
        g = exact_array(g)
        n = g.shape[0]
        if g.shape != (n, n):
            raise ValueError(f"metric must be square, got shape {g.shape}")
        if not np.all(g == g.T):
            raise ValueError("metric is not symmetric")
        if not is_positive_definite(g):
            raise NotPositiveDefinite("metric is not positive definite (a leading minor is <= 0)")
        inv = inverse(g)
        g.setflags(write=False)
        inv.setflags(write=False)
        self.g, self.inv, self.dim = g, inv, n

    @classmethod
    def identity(cls, n: int) -> "InvariantMetric":
        return cls(eye(n))

    def scaled(self, factor) -> "InvariantMetric":
        return InvariantMetric(self.g * mpq(factor))

    def inner(self, u, v):
        return np.einsum("i,ij,j->", np.asarray(u, dtype=object), self.g, np.asarray(v, dtype=object))

    def __repr__(self):
        return f"InvariantMetric(dim={self.dim})"


def _as_metric(g) -> InvariantMetric:
    return g if isinstance(g, InvariantMetric) else InvariantMetric(g)


def koszul_connection(alg: LieAlgebra, g) -> np.ndarray:
    """Levi-Civita connection coefficients from the Koszul formula.

    ``2 g(nabla_i X_j, X_k) = g([X_i,X_j],X_k) - g([X_i,X_k],X_j) - g([X_j,X_k],X_i)``
    """
    g = _as_metric(g)
    if g.dim != alg.dim:
        raise ValueError(f"metric dim {g.dim} != algebra dim {alg.dim}")
    cl = np.einsum("ijl,lm->ijm", alg.c, g.g)  # g([X_i,X_j], X_m)
    K = cl - np.einsum("imj->ijm", cl) - np.einsum("jmi->ijm", cl)
    return np.einsum("ijm,mk->ijk", K, g.inv) * mpq(1, 2)


def torsion_residual(alg: LieAlgebra, gamma: np.ndarray) -> np.ndarray:
    return gamma - gamma.transpose(1, 0, 2) - alg.c


def metric_residual(g, gamma: np.ndarray) -> np.ndarray:
    """``g(nabla_i X_j, X_k) + g(X_j, nabla_i X_k)``; zero for a metric connection."""
    g = _as_metric(g)
    low = np.einsum("ijm,mk->ijk", gamma, g.g)
    return low + low.transpose(0, 2, 1)


def riemann(alg: LieAlgebra, gamma: np.ndarray) -> np.ndarray:
    return (
        np.einsum("jkm,iml->ijkl", gamma, gamma)
        - np.einsum("ikm,jml->ijkl", gamma, gamma)
        - np.einsum("ijm,mkl->ijkl", alg.c, gamma)
    )


def ricci(alg: LieAlgebra, g, R: np.ndarray):
    """Ricci form and scalar curvature."""
    g = _as_metric(g)
    ric = np.einsum("ijki->jk", R)
    scal = np.einsum("jk,jk->", g.inv, ric)
    return ric, scal


def ricci_operator(g, ric: np.ndarray) -> np.ndarray:
    """Endomorphism ``Q`` with ``g(QX, Y) = Ric(X, Y)``."""
    return _as_metric(g).inv.dot(ric)


def bianchi_residual(R: np.ndarray) -> np.ndarray:
    return R + R.transpose(1, 2, 0, 3) + R.transpose(2, 0, 1, 3)


def sectional_curvature(g, R: np.ndarray, u, v):
    g = _as_metric(g)
    u = np.asarray(u, dtype=object)
    v = np.asarray(v, dtype=object)
    Ruvv = np.einsum("i,j,k,ijkl->l", u, v, v, R)
    num = g.inner(Ruvv, u)
    den = g.inner(u, u) * g.inner(v, v) - g.inner(u, v) ** 2
    return num / den


def lower(g, E: np.ndarray) -> np.ndarray:
    """Bilinear form ``(X, Y) -> g(E X, Y)``."""
    return np.asarray(E, dtype=object).T.dot(_as_metric(g).g)


def raise_form(g, T: np.ndarray) -> np.ndarray:
    """Endomorphism ``E`` with ``g(E X, Y) = T(X, Y)`` (inverse of :func:`lower`)."""
    return _as_metric(g).inv.dot(np.asarray(T, dtype=object).T)


def metric_adjoint(g, D: np.ndarray) -> np.ndarray:
    g = _as_metric(g)
    return g.inv.dot(np.asarray(D, dtype=object).T).dot(g.g)


def metric_adjoint_split(g, D: np.ndarray):
    """Symmetric and skew parts ``S = (D + D*)/2``, ``A = (D - D*)/2``."""
    D = np.asarray(D, dtype=object)
    Dstar = metric_adjoint(g, D)
    half = mpq(1, 2)
    return (D + Dstar) * half, (D - Dstar) * half


def endo_pairing(g, D: np.ndarray, E: np.ndarray):
    """``g(D, E) = g^{ij} g_{ab} D^a_i E^b_j``, i.e. ``tr(D* E)``."""
    g = _as_metric(g)
    return np.einsum("ij,ab,ai,bj->", g.inv, g.g, np.asarray(D, dtype=object), np.asarray(E, dtype=object))


def covariant_divergence(alg: LieAlgebra, g, gamma: np.ndarray, T: np.ndarray) -> np.ndarray:
    """``(div T)_k = g^{ij} (nabla_i T)_{jk}`` for a left-invariant 2-tensor."""
    g = _as_metric(g)
    T = np.asarray(T, dtype=object)
    nabla_T = -np.einsum("ijm,mk->ijk", gamma, T) - np.einsum("ikm,jm->ijk", gamma, T)
    return np.einsum("ij,ijk->k", g.inv, nabla_T)


@dataclass(frozen=True, eq=False)
class DivergenceTerms:
    """Per-direction pieces of the closed-form divergence of ``S``.

    ``covector[k] = (trace[k] + pairing[k] - 2*ad_trace[k]) / 2``
    """

    trace: np.ndarray  # tr(D o ad_{X_k})
    pairing: np.ndarray  # g(D, ad_{X_k})
    ad_trace: np.ndarray  # tr(ad_{S(X_k)})
    covector: np.ndarray
    derivation: bool


def divergence_closed_form(alg: LieAlgebra, g, D: np.ndarray) -> DivergenceTerms:
    """Divergence of the symmetric part of ``D`` from traces of ad maps.

    Only linearity of ``D`` is used, so any endomorphism is accepted;
    ``derivation`` records whether it also satisfies the Leibniz rule.
    """
    g = _as_metric(g)
    D = np.asarray(D, dtype=object)
    S, _ = metric_adjoint_split(g, D)
    n = alg.dim
    tr_ad = np.einsum("ijj->i", alg.c)
    trace, pairing, ad_trace = (np.empty(n, dtype=object) for _ in range(3))
    for k in range(n):
        adk = ad(alg, basis_vector(n, k))
        trace[k] = np.trace(D.dot(adk))
        pairing[k] = endo_pairing(g, D, adk)
        ad_trace[k] = tr_ad.dot(S[:, k])
    covector = (trace + pairing - 2 * ad_trace) * mpq(1, 2)
    return DivergenceTerms(trace, pairing, ad_trace, covector, is_derivation(alg, D))


def schouten(g, ric: np.ndarray, scal) -> np.ndarray:
    g = _as_metric(g)
    n = g.dim
    if n < 3:
        raise ValueError("Schouten tensor needs dimension >= 3")
    return (ric - g.g * (scal / (2 * (n - 1)))) / (n - 2)


def lowered_riemann(g, R: np.ndarray) -> np.ndarray:
    """``Rm[i,j,k,l] = g(R(X_i,X_j)X_k, X_l)``."""
    return np.einsum("ijkm,ml->ijkl", R, _as_metric(g).g)


def weyl(g, R: np.ndarray, ric: np.ndarray, scal) -> np.ndarray:
    """Weyl tensor ``W_{ijkl}`` (lowered like :func:`lowered_riemann`).

    ``Rm = W + P o g`` with the Kulkarni-Nomizu product written out as
    ``P_jk g_il + P_il g_jk - P_ik g_jl - P_jl g_ik``.
    """
    g = _as_metric(g)
    P = schouten(g, ric, scal)
    G = g.g
    kn = (
        np.einsum("jk,il->ijkl", P, G)
        + np.einsum("il,jk->ijkl", P, G)
        - np.einsum("ik,jl->ijkl", P, G)
        - np.einsum("jl,ik->ijkl", P, G)
    )
    return lowered_riemann(g, R) - kn


def cotton(g, gamma: np.ndarray, ric: np.ndarray, scal) -> np.ndarray:
    """``C_{ijk} = (nabla_i P)_{jk} - (nabla_j P)_{ik}`` for the Schouten tensor ``P``."""
    P = schouten(g, ric, scal)
    nabla_P = -np.einsum("ijm,mk->ijk", gamma, P) - np.einsum("ikm,jm->ijk", gamma, P)
    return nabla_P - nabla_P.transpose(1, 0, 2)


@dataclass(frozen=True, eq=False)
class Curvature:
    gamma: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scal: object
    weyl: Optional[np.ndarray]
    cotton: Optional[np.ndarray]

    @property
    def dim(self) -> int:
        return self.ricci.shape[0]


def curvature(alg: LieAlgebra, g) -> Curvature:
    """All curvature data of ``(alg, g)``; Weyl for n >= 4, Cotton for n == 3."""
    g = _as_metric(g)
    gamma = koszul_connection(alg, g)
    R = riemann(alg, gamma)
    ric, scal = ricci(alg, g, R)
    n = alg.dim
    W = weyl(g, R, ric, scal) if n >= 4 else None
    C = cotton(g, gamma, ric, scal) if n == 3 else None
    return Curvature(gamma, R, ric, scal, W, C)


def is_conformally_flat(alg: LieAlgebra, g) -> bool:
    """Cotton = 0 in dimension 3, Weyl = 0 above; always true below 3."""
    if alg.dim <= 2:
        return True
    data = curvature(alg, g)
    return is_zero(data.cotton if alg.dim == 3 else data.weyl)
