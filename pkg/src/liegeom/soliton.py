"""Algebraic Ricci solitons and quasi-Einstein one-dimensional extensions.

A quasi-Einstein extension solves ``Ric - (m/w) Hess w = lam g`` with
``w = e^{ar}``.  Since ``Hess w / w = a^2 dr^2 + a Hess r`` is independent of
``w``, every check here is an identity between exact tensors; ``w`` never
appears numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .algebra import LieAlgebra, derivation_residual
from .exact import eye, is_zero, mpq, parse_exact, rational, sign, sqrt_exact
from .extension import (
    OneDimExtension,
    extend,
    hess_r,
    hess_r_operator,
    laplacian_r,
    q_tensor,
)
from .geometry import (
    InvariantMetric,
    covariant_divergence,
    curvature,
    divergence_closed_form,
    metric_adjoint,
    ricci_operator,
)

__all__ = [
    "SolitonCertificate",
    "NotSoliton",
    "SolitonExtension",
    "NoExtension",
    "AbelianExtension",
    "QECertificate",
    "NecessaryConditions",
    "TraceIdentities",
    "Degenerate",
    "detect_algebraic_soliton",
    "solve_soliton_extension",
    "solve_abelian_extension",
    "verify_quasi_einstein",
    "necessary_conditions",
    "trace_identities",
    "solve_div_free_exponent",
]


def _as_metric(g) -> InvariantMetric:
    return g if isinstance(g, InvariantMetric) else InvariantMetric(g)


@dataclass(frozen=True, eq=False)
class SolitonCertificate:
    """``Q = lam Id + D`` with ``Q`` the Ricci operator and ``D`` a derivation."""

    algebra: LieAlgebra
    metric: InvariantMetric
    lam: object
    D: np.ndarray
    scal: object
    residual: np.ndarray  # Leibniz residual of D, zero on success
    degenerate: bool = False
    note: str = ""

    @property
    def trace_D(self):
        return np.trace(self.D)

    @property
    def trace_D2(self):
        return np.trace(self.D.dot(self.D))


@dataclass(frozen=True)
class NotSoliton:
    reason: str

    def __bool__(self):
        return False


def detect_algebraic_soliton(alg: LieAlgebra, g) -> Union[SolitonCertificate, NotSoliton]:
    """Solve ``Q - lam Id`` is a derivation for ``lam``, exactly.

    The Leibniz residual of ``Q - lam Id`` is ``L(Q) + lam c`` because
    ``L(Id) = -c``, so ``lam`` is pinned down by any nonzero structure
    constant.  For abelian algebras every ``lam`` works; the Einstein value
    with ``D = 0`` is returned as the representative.
    """
    g = _as_metric(g)
    data = curvature(alg, g)
    Q = ricci_operator(g, data.ricci)
    LQ = derivation_residual(alg, Q)
    n = alg.dim

    if alg.is_abelian:
        # flat; all endomorphisms are derivations
        lam = Q[0, 0]
        if not np.all(Q == lam * eye(n)):
            return NotSoliton("abelian algebra with non-scalar Ricci operator")
        return SolitonCertificate(
            alg, g, lam, Q - lam * eye(n), data.scal, LQ * 0, degenerate=True,
            note="every lam is admissible (abelian); Einstein representative D = 0",
        )

    idx = next(zip(*np.nonzero(alg.c != 0)))
    lam = -LQ[idx] / alg.c[idx]
    residual = LQ + lam * alg.c
    if not is_zero(residual):
        return NotSoliton("no lam makes Ric - lam Id a derivation")
    D = Q - lam * eye(n)
    note = "Einstein: D = 0" if is_zero(D) else ""
    return SolitonCertificate(alg, g, lam, D, data.scal, residual, note=note)


@dataclass(frozen=True, eq=False)
class SolitonExtension:
    """Constants of the quasi-Einstein extension of a soliton.

    ``alpha`` is exact in ``Q(sqrt(alpha_sq))``; ``a = alpha * lam``.
    """

    m: object
    lam: object
    alpha_sq: object
    alpha: object
    a: object
    certificate: SolitonCertificate = field(repr=False)

    def extension(self) -> OneDimExtension:
        cert = self.certificate
        return extend(cert.algebra, cert.metric, cert.D, self.alpha)


@dataclass(frozen=True)
class NoExtension:
    m: object
    defect: object  # tr D - m lam, <= 0
    boundary: bool

    def __bool__(self):
        return False


def solve_soliton_extension(cert: SolitonCertificate, m) -> Union[SolitonExtension, NoExtension]:
    """Extension constants from ``1 = alpha^2 (tr D - m lam)`` and ``a = alpha lam``.

    Exists exactly when ``tr D > m lam`` (strict; equality is reported as a
    boundary case).
    """
    m = rational(m)
    if m == 0:
        raise ValueError("m must be nonzero")
    defect = cert.trace_D - m * cert.lam
    if sign(defect) <= 0:
        return NoExtension(m, defect, boundary=defect == 0)
    alpha_sq = 1 / defect
    alpha = sqrt_exact(alpha_sq)
    return SolitonExtension(m, cert.lam, alpha_sq, alpha, alpha * cert.lam, cert)


@dataclass(frozen=True, eq=False)
class AbelianExtension:
    """Outcome of the ``lam = 0`` construction over an abelian base."""

    m: object
    a: Optional[object]
    defect: object  # tr(S^2) + tr(S)^2 / m
    normal: bool

    @property
    def ok(self) -> bool:
        return self.defect == 0

    def __bool__(self):
        return self.ok


def solve_abelian_extension(base: LieAlgebra, h, D, m) -> AbelianExtension:
    """``a = tr(S)/m`` when ``tr(S^2) = -tr(S)^2/m``; the extension uses
    ``ad_xi = D`` (scale 1) and has ``lam = 0``.  ``normal`` reports whether
    ``[D, D*] = 0``, which the construction presumes."""
    if not base.is_abelian:
        raise ValueError("solve_abelian_extension needs an abelian base")
    m = rational(m)
    if m == 0:
        raise ValueError("m must be nonzero")
    h = _as_metric(h)
    D = np.asarray(D, dtype=object)
    Dstar = metric_adjoint(h, D)
    S = (D + Dstar) * mpq(1, 2)
    trS = np.trace(S)
    defect = np.trace(S.dot(S)) + trS * trS / m
    normal = is_zero(D.dot(Dstar) - Dstar.dot(D))
    return AbelianExtension(m, trS / m if defect == 0 else None, defect, normal)


@dataclass(frozen=True, eq=False)
class QECertificate:
    m: object
    lam: object
    a: object
    alpha: object
    residual: np.ndarray  # Ric - m q - lam g

    @property
    def ok(self) -> bool:
        return is_zero(self.residual)


def verify_quasi_einstein(ext: OneDimExtension, m, a, data=None) -> QECertificate:
    """Residual of ``Ric - m q = lam g`` with ``lam`` read off at ``(xi, xi)``."""
    m = rational(m)
    a = parse_exact(a)
    data = data or curvature(ext.total, ext.g_total)
    T = data.ricci - m * q_tensor(ext, a)
    lam = T[0, 0]
    return QECertificate(m, lam, a, ext.alpha, T - lam * ext.g_total.g)


@dataclass(frozen=True, eq=False)
class NecessaryConditions:
    div_s: np.ndarray
    div_free: bool
    trace_defect: object  # tr(S'^2) + a tr(S') for S' = alpha S
    trace_ok: bool
    normal: bool
    branch: Optional[str]  # "soliton", "flat", "violation" or None if not normal
    soliton: Optional[SolitonCertificate] = None

    @property
    def ok(self) -> bool:
        return self.div_free and self.trace_ok and self.branch != "violation"


def necessary_conditions(ext: OneDimExtension, a) -> NecessaryConditions:
    """Conditions every quasi-Einstein extension must satisfy.

    ``ad_xi = alpha D`` here, so the trace condition is checked for the
    symmetric part ``alpha S`` of ``ad_xi``.
    """
    a = parse_exact(a)
    div_s = divergence_closed_form(ext.base, ext.h, ext.D).covector
    S = ext.alpha * ext.S
    defect = np.trace(S.dot(S)) + a * np.trace(S)
    Dstar = metric_adjoint(ext.h, ext.D)
    normal = is_zero(ext.D.dot(Dstar) - Dstar.dot(ext.D))
    branch, cert = None, None
    if normal:
        base_curv = curvature(ext.base, ext.h)
        if is_zero(base_curv.ricci):
            branch = "flat"
        else:
            found = detect_algebraic_soliton(ext.base, ext.h)
            branch = "soliton" if found else "violation"
            cert = found or None
    return NecessaryConditions(div_s, is_zero(div_s), defect, defect == 0, normal, branch, cert)


@dataclass(frozen=True, eq=False)
class TraceIdentities:
    a: object  # after orientation normalization (a >= 0)
    flipped: bool
    div_q: np.ndarray
    div_free: bool
    tr_q: object
    tr_q2: object
    hess_norm_sq: object
    laplacian: object
    trace_identity: bool  # tr(q^2) == a^2 tr(q)
    hessian_identity: bool  # |Hess r|^2 == a * Lap r
    window: bool  # 0 <= Lap r <= (n-1) a
    endpoint: Optional[str]  # "product", "hyperbolic" or None

    @property
    def ok(self) -> bool:
        return self.div_free and self.trace_identity and self.hessian_identity and self.window


def trace_identities(ext: OneDimExtension, a, data=None) -> TraceIdentities:
    """Identities forced by ``div q = 0`` for ``q = Hess(e^{ar})/e^{ar}``.

    When ``a < 0`` the distance function is reversed (``r -> -r``), which flips
    the signs of ``a``, ``Hess r`` and ``Lap r`` and leaves ``q`` unchanged.
    """
    a = parse_exact(a)
    data = data or curvature(ext.total, ext.g_total)
    g = ext.g_total
    q = q_tensor(ext, a)
    div_q = covariant_divergence(ext.total, g, data.gamma, q)
    Qop = g.inv.dot(q)
    tr_q = np.trace(Qop)
    tr_q2 = np.trace(Qop.dot(Qop))
    H = hess_r_operator(ext)
    lap = laplacian_r(ext)
    flipped = sign(a) < 0
    if flipped:
        a, H, lap = -a, -H, -lap
    norm_sq = np.trace(H.dot(H))
    n = ext.dim
    window = sign(lap) >= 0 and sign((n - 1) * a - lap) >= 0
    endpoint = None
    if lap == 0:
        endpoint = "product"
    elif lap == (n - 1) * a:
        endpoint = "hyperbolic"
    return TraceIdentities(
        a, flipped, div_q, is_zero(div_q), tr_q, tr_q2, norm_sq, lap,
        tr_q2 == a * a * tr_q, norm_sq == a * lap, window, endpoint,
    )


@dataclass(frozen=True)
class Degenerate:
    reason: str

    def __bool__(self):
        return False


def solve_div_free_exponent(ext: OneDimExtension, data=None):
    """Exponent ``a`` making ``q`` divergence free, ``a = tr(H^2)/tr(H)``
    for the shape operator ``H`` of the level sets of ``r``.

    Needs the tangential part of ``div Hess r`` to vanish; ``Lap r = 0`` is
    the product case and has no distinguished exponent.
    """
    data = data or curvature(ext.total, ext.g_total)
    div_hess = covariant_divergence(ext.total, ext.g_total, data.gamma, hess_r(ext))
    if not is_zero(div_hess[1:]):
        return Degenerate("level sets do not have divergence-free second fundamental form")
    H = hess_r_operator(ext)
    trH = np.trace(H)
    if trH == 0:
        return Degenerate("Lap r = 0 (product direction)")
    return np.trace(H.dot(H)) / trH
