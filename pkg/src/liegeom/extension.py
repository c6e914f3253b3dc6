"""One-dimensional extensions ``R xi |x h`` with ``[xi, X] = alpha * D(X)``.

The total algebra uses the basis ``(xi, X_1, ..., X_{n-1})``: index 0 is
``xi``.  The metric is ``dr^2 + h`` with ``grad r = xi``, so ``g(xi, xi) = 1``
and ``xi`` is orthogonal to ``h``.  With this orientation
``Hess r = -alpha * h(S., .)`` on ``h`` and vanishes on ``xi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from .algebra import LieAlgebra, NotADerivation, derivation_residual
from .exact import exact_array, is_zero, mpq, parse_exact, sign, zeros
from .geometry import (
    InvariantMetric,
    covariant_divergence,
    curvature,
    divergence_closed_form,
    koszul_connection,
    lower,
    metric_adjoint_split,
    ricci,
    riemann,
)

__all__ = [
    "OneDimExtension",
    "ExtensionInvariants",
    "extend",
    "semidirect_brackets",
    "extension_ricci_formula",
    "hess_r",
    "hess_r_operator",
    "laplacian_r",
    "q_tensor",
    "dr_squared",
    "extension_invariants",
]


def semidirect_brackets(base: LieAlgebra, D, alpha) -> np.ndarray:
    """Structure constants of ``R xi |x base`` without any validation."""
    D = np.asarray(D, dtype=object)
    m = base.dim
    c = zeros((m + 1, m + 1, m + 1))
    c[1:, 1:, 1:] = base.c
    # [xi, X_j] = alpha * sum_k D[k, j] X_k
    c[0, 1:, 1:] = (alpha * D).T
    c[1:, 0, 1:] = -(alpha * D).T
    return c


@dataclass(frozen=True, eq=False)
class OneDimExtension:
    base: LieAlgebra
    h: InvariantMetric
    D: np.ndarray
    alpha: object
    total: LieAlgebra = field(repr=False)
    g_total: InvariantMetric = field(repr=False)
    S: np.ndarray = field(repr=False)
    A: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.total.dim


def extend(base: LieAlgebra, h, D, alpha=1) -> OneDimExtension:
    """Build the extension; ``D`` must be a derivation of ``base``."""
    h = h if isinstance(h, InvariantMetric) else InvariantMetric(h)
    D = exact_array(D)
    alpha = parse_exact(alpha)
    if h.dim != base.dim or D.shape != (base.dim, base.dim):
        raise ValueError("base, metric and derivation dimensions disagree")
    residual = derivation_residual(base, D)
    if not is_zero(residual):
        raise NotADerivation(residual)
    total = LieAlgebra(semidirect_brackets(base, D, alpha), name=f"R x| {base.name or 'h'}")
    m = base.dim
    g = zeros((m + 1, m + 1))
    g[0, 0] = mpq(1)
    g[1:, 1:] = h.g
    S, A = metric_adjoint_split(h, D)
    return OneDimExtension(base, h, D, alpha, total, InvariantMetric(g), S, A)


def _embed(block: np.ndarray, corner=mpq(0)) -> np.ndarray:
    m = block.shape[0]
    out = zeros((m + 1, m + 1))
    out[0, 0] = corner
    out[1:, 1:] = block
    return out


def extension_ricci_formula(ext: OneDimExtension) -> np.ndarray:
    """Ricci form of the extension assembled from base data only.

    ``Ric(xi,xi) = -alpha^2 tr(S^2)``, ``Ric(X,xi) = -alpha (div S)(X)`` and
    ``Ric|h = Ric^H - alpha^2 tr(S) h(S.,.) - alpha^2 h([S,A].,.)``.
    """
    base, h, S, A, alpha = ext.base, ext.h, ext.S, ext.A, ext.alpha
    ric_h, _ = ricci(base, h, riemann(base, koszul_connection(base, h)))
    a2 = alpha * alpha
    block = ric_h - a2 * np.trace(S) * lower(h, S) - a2 * lower(h, S.dot(A) - A.dot(S))
    out = _embed(block, -a2 * np.trace(S.dot(S)))
    div_s = divergence_closed_form(base, h, ext.D).covector
    out[0, 1:] = -alpha * div_s
    out[1:, 0] = -alpha * div_s
    return out


def hess_r(ext: OneDimExtension) -> np.ndarray:
    return _embed(-ext.alpha * lower(ext.h, ext.S))


def hess_r_operator(ext: OneDimExtension) -> np.ndarray:
    """Shape operator ``X -> nabla_X grad r`` of the level sets, on the total algebra."""
    return _embed(-ext.alpha * ext.S)


def laplacian_r(ext: OneDimExtension):
    return -ext.alpha * np.trace(ext.S)


def dr_squared(ext: OneDimExtension) -> np.ndarray:
    return _embed(zeros((ext.base.dim, ext.base.dim)), mpq(1))


def q_tensor(ext: OneDimExtension, a) -> np.ndarray:
    """``q = a^2 dr^2 + a Hess r``, which equals ``Hess(e^{ar}) / e^{ar}``."""
    a = parse_exact(a)
    return a * a * dr_squared(ext) + a * hess_r(ext)


@dataclass(frozen=True, eq=False)
class ExtensionInvariants:
    ric_xi_xi: object
    hess_norm_sq: object
    bochner_norm: bool  # Ric(xi,xi) == -|Hess r|^2
    nonpositive: bool  # Ric(xi,xi) <= 0
    zero_iff_symmetric_part_vanishes: bool
    div_hess: np.ndarray
    ric_xi: np.ndarray
    bochner_divergence: bool  # div Hess r == Ric(xi, .)
    ric_direct: np.ndarray = field(repr=False)
    ric_formula: np.ndarray = field(repr=False)

    @property
    def formula_matches(self) -> bool:
        return bool(np.all(self.ric_direct == self.ric_formula))

    @property
    def ok(self) -> bool:
        return (
            self.bochner_norm
            and self.nonpositive
            and self.zero_iff_symmetric_part_vanishes
            and self.bochner_divergence
            and self.formula_matches
        )


def extension_invariants(ext: OneDimExtension, data=None) -> ExtensionInvariants:
    """Check the distance-function identities of a one-dimensional extension."""
    data = data or curvature(ext.total, ext.g_total)
    ric = data.ricci
    H = hess_r_operator(ext)
    norm_sq = np.trace(H.dot(H))
    rxx = ric[0, 0]
    div_hess = covariant_divergence(ext.total, ext.g_total, data.gamma, hess_r(ext))
    return ExtensionInvariants(
        ric_xi_xi=rxx,
        hess_norm_sq=norm_sq,
        bochner_norm=rxx == -norm_sq,
        nonpositive=sign(rxx) <= 0,
        zero_iff_symmetric_part_vanishes=(rxx == 0) == is_zero(H),
        div_hess=div_hess,
        ric_xi=ric[0].copy(),
        bochner_divergence=bool(np.all(div_hess == ric[0])),
        ric_direct=ric,
        ric_formula=extension_ricci_formula(ext),
    )
