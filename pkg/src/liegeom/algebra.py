"""Lie algebras given by structure constants.

Storage convention: ``c[i, j, k]`` is the coefficient of ``X_k`` in
``[X_i, X_j]`` (0-based internally).  Endomorphisms are square matrices with
``E[i, j]`` the ``X_i`` coefficient of ``E(X_j)``, so columns are images of
basis vectors.  Reports and diagnostics use 1-based indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .exact import exact_array, eye, is_zero, mpq, nullspace, zeros

__all__ = [
    "LieAlgebra",
    "InvalidAlgebra",
    "NotADerivation",
    "Violation",
    "CatalogEntry",
    "validate_algebra",
    "bracket_array",
    "ad",
    "is_unimodular",
    "derivation_residual",
    "is_derivation",
    "derivation_basis",
    "catalog",
    "catalog_names",
]


class InvalidAlgebra(ValueError):
    """Structure constants that violate antisymmetry or Jacobi."""

    def __init__(self, violations):
        self.violations = list(violations)
        shown = ", ".join(str(v) for v in self.violations[:6])
        more = "" if len(self.violations) <= 6 else f" (+{len(self.violations) - 6} more)"
        super().__init__(f"invalid structure constants: {shown}{more}")


class NotADerivation(ValueError):
    def __init__(self, residual):
        self.residual = residual
        bad = [
            tuple(int(x) + 1 for x in idx)
            for idx in zip(*np.nonzero(residual != 0))
        ]
        super().__init__(f"Leibniz rule fails at (i,j,k) = {bad[:6]}")


class Violation(NamedTuple):
    identity: str  # "antisymmetry" or "jacobi"
    indices: tuple  # 1-based
    value: object

    def __str__(self):
        idx = ",".join(str(i) for i in self.indices)
        return f"{self.identity}({idx}) = {self.value}"


def jacobiator(c: np.ndarray) -> np.ndarray:
    """``J[i,j,k,l]``: the ``X_l`` coefficient of the cyclic Jacobi sum."""
    return (
        np.einsum("ijm,mkl->ijkl", c, c)
        + np.einsum("jkm,mil->ijkl", c, c)
        + np.einsum("kim,mjl->ijkl", c, c)
    )


def validate_algebra(c) -> list[Violation]:
    """Check antisymmetry and Jacobi; an empty list means a Lie algebra."""
    c = np.asarray(c, dtype=object)
    if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
        raise ValueError(f"structure constants must be n x n x n, got shape {c.shape}")
    n = c.shape[0]
    out = []
    sym = c + c.transpose(1, 0, 2)
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if sym[i, j, k] != 0:
                    out.append(Violation("antisymmetry", (i + 1, j + 1, k + 1), sym[i, j, k]))
    J = jacobiator(c)
    for idx in zip(*np.nonzero(J != 0)):
        idx = tuple(int(x) for x in idx)
        out.append(Violation("jacobi", tuple(x + 1 for x in idx), J[idx]))
    return out


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    c: np.ndarray
    name: str = ""
    dim: int = field(init=False)

    def __post_init__(self):
        c = exact_array(self.c)
        violations = validate_algebra(c)
        if violations:
            raise InvalidAlgebra(violations)
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "dim", c.shape[0])

    @classmethod
    def from_brackets(cls, dim: int, brackets, name: str = "") -> "LieAlgebra":
        """Build from ``(i, j, k, value)`` tuples meaning ``[X_i, X_j]`` has
        ``X_k``-coefficient ``value`` (1-based).  Pairs not listed explicitly
        get the antisymmetric completion."""
        return cls(bracket_array(dim, brackets), name=name)

    def bracket(self, u, v) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(u, dtype=object), np.asarray(v, dtype=object), self.c)

    @property
    def is_abelian(self) -> bool:
        return is_zero(self.c)

    def __repr__(self):
        return f"LieAlgebra({self.name or 'dim=%d' % self.dim})"


def bracket_array(dim: int, brackets) -> np.ndarray:
    c = zeros((dim, dim, dim))
    explicit = set()
    for i, j, k, _ in brackets:
        for x in (i, j, k):
            if not 1 <= x <= dim:
                raise ValueError(f"bracket index {x} outside 1..{dim}")
        explicit.add((i, j, k))
    for i, j, k, value in brackets:
        value = exact_array([value])[0]
        c[i - 1, j - 1, k - 1] = value
        if (j, i, k) not in explicit:
            c[j - 1, i - 1, k - 1] = -value
    return c


def ad(alg: LieAlgebra, v) -> np.ndarray:
    """Matrix of ``ad_v = [v, .]``."""
    v = np.asarray(v, dtype=object)
    if v.shape != (alg.dim,):
        raise ValueError(f"vector of length {alg.dim} expected, got shape {v.shape}")
    return np.einsum("i,ijk->kj", v, alg.c)


def basis_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = mpq(1)
    return v


def is_unimodular(alg: LieAlgebra) -> bool:
    return is_zero(np.einsum("ijj->i", alg.c))


def derivation_residual(alg: LieAlgebra, D) -> np.ndarray:
    """``R[i,j,k]`` = ``X_k``-coefficient of ``D[X_i,X_j] - [DX_i,X_j] - [X_i,DX_j]``."""
    D = np.asarray(D, dtype=object)
    if D.shape != (alg.dim, alg.dim):
        raise ValueError(f"endomorphism must be {alg.dim}x{alg.dim}, got {D.shape}")
    c = alg.c
    return (
        np.einsum("km,ijm->ijk", D, c)
        - np.einsum("mjk,mi->ijk", c, D)
        - np.einsum("imk,mj->ijk", c, D)
    )


def is_derivation(alg: LieAlgebra, D) -> bool:
    return is_zero(derivation_residual(alg, D))


def derivation_basis(alg: LieAlgebra) -> list[np.ndarray]:
    """Basis of the derivation algebra, from the nullspace of the Leibniz map."""
    n = alg.dim
    columns = []
    for a in range(n):
        for b in range(n):
            E = zeros((n, n))
            E[a, b] = mpq(1)
            columns.append(derivation_residual(alg, E).reshape(-1))
    L = np.array(columns, dtype=object).T
    return [v.reshape(n, n) for v in nullspace(L)]


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    algebra: LieAlgebra
    metric: np.ndarray
    derivation: Optional[np.ndarray]
    description: str


def _diag(*values) -> np.ndarray:
    D = zeros((len(values), len(values)))
    for i, v in enumerate(values):
        D[i, i] = mpq(v)
    return D


def _abelian(n: int) -> LieAlgebra:
    return LieAlgebra(zeros((n, n, n)), name=f"abelian({n})")


def _heis3():
    alg = LieAlgebra.from_brackets(3, [(1, 2, 3, 1)], name="heis3")
    return CatalogEntry(alg, eye(3), _diag(1, 1, 2), "Heisenberg algebra [X1,X2]=X3")


def _sol3():
    alg = LieAlgebra.from_brackets(3, [(3, 1, 1, 1), (3, 2, 2, -1)], name="sol3")
    return CatalogEntry(alg, eye(3), _diag(2, 2, 0), "Sol: [X3,X1]=X1, [X3,X2]=-X2")


def _simple3():
    alg = LieAlgebra.from_brackets(
        3, [(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1)], name="simple3"
    )
    return CatalogEntry(
        alg, eye(3), ad(alg, basis_vector(3, 0)), "su(2): [X_i,X_{i+1}]=X_{i+2} cyclically"
    )


_ENTRY_RE = re.compile(r"^\s*(abelian|hyperbolic_base)\s*\(\s*(\d+)\s*\)\s*$")
_FIXED = {"heis3": _heis3, "sol3": _sol3, "simple3": _simple3}


def catalog_names() -> list[str]:
    return ["abelian(n)", "heis3", "sol3", "simple3", "hyperbolic_base(n)"]


def catalog(name: str) -> CatalogEntry:
    """Look up a built-in algebra with its default metric and derivation."""
    key = name.strip()
    if key in _FIXED:
        return _FIXED[key]()
    m = _ENTRY_RE.match(key)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind == "abelian":
            if n < 1:
                raise KeyError(f"abelian(n) needs n >= 1, got {n}")
            return CatalogEntry(_abelian(n), eye(n), eye(n), f"abelian R^{n}")
        if n < 2:
            raise KeyError(f"hyperbolic_base(n) needs n >= 2, got {n}")
        alg = LieAlgebra(zeros((n - 1, n - 1, n - 1)), name=f"hyperbolic_base({n})")
        return CatalogEntry(
            alg, eye(n - 1), eye(n - 1), f"abelian R^{n - 1} with D = Id (extends to H^{n})"
        )
    raise KeyError(f"unknown catalog entry {name!r}; available: {', '.join(catalog_names())}")
