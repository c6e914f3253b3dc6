"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random

import numpy as np
from gmpy2 import mpq

from liegeom.algebra import catalog, derivation_basis
from liegeom.exact import inverse, zeros

CATALOG_3_TO_5 = ["heis3", "sol3", "simple3", "abelian(4)", "abelian(5)"]


def random_rational(rng: random.Random, lo=-3, hi=3, den=4) -> mpq:
    return mpq(rng.randint(lo * den, hi * den), rng.randint(1, den))


def random_metric(rng: random.Random, n: int) -> np.ndarray:
    """``L L^T`` with ``L`` lower triangular and positive diagonal."""
    L = zeros((n, n))
    for i in range(n):
        L[i, i] = mpq(rng.randint(1, 6), rng.randint(1, 3))
        for j in range(i):
            L[i, j] = random_rational(rng, -2, 2, 3)
    return L.dot(L.T)


def random_endomorphism(rng: random.Random, n: int) -> np.ndarray:
    E = zeros((n, n))
    for i in range(n):
        for j in range(n):
            E[i, j] = random_rational(rng)
    return E


def random_derivation(rng: random.Random, alg, basis=None) -> np.ndarray:
    basis = basis if basis is not None else derivation_basis(alg)
    D = zeros((alg.dim, alg.dim))
    for B in basis:
        D = D + random_rational(rng, -2, 2, 3) * B
    return D


def diag(*values) -> np.ndarray:
    D = zeros((len(values), len(values)))
    for i, v in enumerate(values):
        D[i, i] = mpq(v)
    return D


def entry(name: str):
    return catalog(name)


def ricci_oracle(c: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Ricci form of a left-invariant metric without any connection.

    For an orthonormal frame ``E_i`` and mean curvature vector ``Z`` with
    ``<Z, X> = tr ad_X``:

        Ric(X,X) = -1/2 sum |[X,E_i]|^2 - 1/2 B(X,X)
                   + 1/4 sum <[E_i,E_j],X>^2 - <[Z,X],X>

    Sums over an orthonormal frame become contractions with ``g^{ij}``;
    the bilinear form is recovered by polarization.
    """
    n = g.shape[0]
    ginv = inverse(g)
    tr_ad = np.einsum("ijj->i", c)
    z = ginv.dot(tr_ad)  # components of Z

    def br(u, v):
        return np.einsum("i,j,ijk->k", u, v, c)

    def adm(u):
        return np.einsum("i,ijk->kj", u, c)

    basis = [np.array([mpq(int(i == k)) for i in range(n)], dtype=object) for k in range(n)]

    def quad(x):
        cols = [br(x, b) for b in basis]
        t1 = sum(ginv[i, j] * cols[i].dot(g).dot(cols[j]) for i in range(n) for j in range(n))
        A = adm(x)
        killing = np.trace(A.dot(A))
        low = [[br(basis[i], basis[j]).dot(g).dot(x) for j in range(n)] for i in range(n)]
        t3 = sum(
            ginv[i, a] * ginv[j, b] * low[i][j] * low[a][b]
            for i in range(n) for j in range(n) for a in range(n) for b in range(n)
        )
        t4 = br(z, x).dot(g).dot(x)
        return -t1 / 2 - killing / 2 + t3 / 4 - t4

    ric = zeros((n, n))
    for i in range(n):
        for j in range(n):
            u, v = basis[i], basis[j]
            ric[i, j] = (quad(u + v) - quad(u - v)) / 4
    return ric


def diagonal_ricci_simple3(a1, a2, a3) -> list:
    """Diagonal Ricci of ``diag(a1, a2, a3)`` on the cyclic simple algebra:
    ``Ric(X1, X1) = (a1 + a3 - a2)(a1 + a2 - a3) / (2 a2 a3)`` and cyclically."""
    a = [mpq(a1), mpq(a2), mpq(a3)]
    out = []
    for i in range(3):
        x, y, z = a[i], a[(i + 1) % 3], a[(i + 2) % 3]
        out.append((x + z - y) * (x + y - z) / (2 * y * z))
    return out
