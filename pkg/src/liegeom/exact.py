"""Exact scalars and small dense linear algebra over them.

Rationals are ``gmpy2.mpq``.  Some constructions need a square root of a
rational (the extension scale of a soliton extension is ``1/sqrt(tr D - m*lam)``),
so :class:`Surd` implements the quadratic field ``Q(sqrt(d))``.  Every routine
here only uses field operations, so arrays may hold either kind of scalar.
"""

from __future__ import annotations

import math
import re
from numbers import Integral, Rational

import gmpy2
import numpy as np
from gmpy2 import mpq

_EXACT_TYPES = (Integral, Rational, type(mpq(0)), type(gmpy2.mpz(0)))

__all__ = [
    "Surd",
    "mpq",
    "rational",
    "parse_exact",
    "sqrt_exact",
    "sign",
    "exact_array",
    "zeros",
    "eye",
    "is_zero",
    "inverse",
    "leading_minors",
    "is_positive_definite",
    "nullspace",
    "format_exact",
    "to_float",
]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_SURD_RE = re.compile(
    r"^\s*(?:(?P<a>[+-]?\d+(?:/\d+)?)\s*(?P<op>[+-])\s*)?"
    r"(?:(?P<b>[+-]?\d+(?:/\d+)?)\s*\*\s*)?"
    r"(?P<neg>-)?sqrt\(\s*(?P<d>\d+(?:/\d+)?)\s*\)\s*$"
)


def rational(x) -> mpq:
    """Coerce ``x`` to an exact rational.

    Accepts ints, ``Fraction``/``mpq`` and strings ``"p"`` or ``"p/q"``.
    Floats are refused so that no precision is lost silently.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, _EXACT_TYPES):
        return mpq(x)
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if not m:
            raise ValueError(f"not a rational literal: {x!r}")
        num, den = m.group(1), m.group(2) or "1"
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {x!r}")
        return mpq(int(num), int(den))
    if isinstance(x, float):
        raise TypeError(f"float {x!r} rejected on an exact path; write it as 'p/q'")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def parse_exact(x):
    """Parse a rational or a simple surd literal such as ``"sqrt(5)"``,
    ``"-1/2*sqrt(3)"`` or ``"1 + 2*sqrt(2)"``."""
    if isinstance(x, Surd):
        return x
    if isinstance(x, str) and "sqrt" in x:
        m = _SURD_RE.match(x)
        if not m:
            raise ValueError(f"not a surd literal: {x!r}")
        a = rational(m.group("a")) if m.group("a") else mpq(0)
        b = rational(m.group("b")) if m.group("b") else mpq(1)
        if m.group("op") == "-":
            b = -b
        if m.group("neg"):
            b = -b
        return a + b * sqrt_exact(rational(m.group("d")))
    return rational(x)


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n = k*k*d``; ``d`` is square-free for all
    factors below 10**4 (enough for the sizes that occur here)."""
    k, d = 1, n
    p = 2
    while p * p <= d and p < 10_000:
        while d % (p * p) == 0:
            d //= p * p
            k *= p
        p += 1 if p == 2 else 2
    if d > 1 and gmpy2.is_square(d):
        r = int(gmpy2.isqrt(d))
        k, d = k * r, 1
    return k, d


def sqrt_exact(x):
    """Exact square root of a non-negative rational, as ``mpq`` when it is a
    perfect square and as a :class:`Surd` otherwise."""
    x = rational(x)
    if x < 0:
        raise ValueError(f"square root of negative rational {x}")
    # sqrt(p/q) = sqrt(p*q)/q
    k, d = _squarefree_split(int(x.numerator * x.denominator))
    coeff = mpq(k, int(x.denominator))
    if d == 1:
        return coeff
    return Surd(mpq(0), coeff, d)


class Surd:
    """Element ``a + b*sqrt(d)`` of a real quadratic field.

    ``d`` is a square-free integer > 1.  Instances with ``b == 0`` are never
    produced by arithmetic: results collapse back to ``mpq``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = mpq(a)
        self.b = mpq(b)
        self.d = int(d)

    @staticmethod
    def _make(a, b, d):
        if b == 0:
            return mpq(a)
        return Surd(a, b, d)

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                raise ValueError(
                    f"mixing sqrt({self.d}) and sqrt({other.d}) is not supported"
                )
            return other.a, other.b
        if isinstance(other, _EXACT_TYPES):
            return mpq(other), mpq(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Surd._make(self.a + o[0], self.b + o[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Surd._make(self.a - o[0], self.b - o[1], self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Surd._make(o[0] - self.a, o[1] - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = o
        return Surd._make(
            self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d
        )

    __rmul__ = __mul__

    def conjugate(self):
        return Surd(self.a, -self.b, self.d)

    def norm(self) -> mpq:
        return self.a * self.a - self.b * self.b * self.d

    def _inverse(self):
        n = self.norm()
        return Surd._make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o[1] == 0:
            return Surd._make(self.a / o[0], self.b / o[0], self.d)
        return self * Surd(o[0], o[1], self.d)._inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._inverse() * o[0]

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (self._inverse()) ** (-k)
        out = mpq(1)
        for _ in range(k):
            out = out * self
        return out

    def sign(self) -> int:
        # sign of a + b*sqrt(d) without floating point
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0 or sa == sb:
            return sb if sb else sa
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else sb

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, _EXACT_TYPES):
            return False  # b != 0 by construction
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        diff = self - other
        return sign(diff)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Surd({format_exact(self)})"

    def __str__(self):
        return format_exact(self)


def sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def format_exact(x) -> str:
    """Render ``p/q`` (or ``a + b*sqrt(d)``) the way reports print numbers."""
    if isinstance(x, Surd):
        coeff = "" if x.b == 1 else "-" if x.b == -1 else f"{format_exact(x.b)}*"
        root = f"{coeff}sqrt({x.d})"
        if x.a == 0:
            return root
        if root.startswith("-"):
            return f"{format_exact(x.a)} - {root[1:]}"
        return f"{format_exact(x.a)} + {root}"
    q = mpq(x)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_float(x) -> float:
    return float(x)


def exact_array(values) -> np.ndarray:
    """Object array of exact scalars; strings like ``"1/2"`` are parsed."""
    arr = np.array(values, dtype=object)
    flat = arr.reshape(-1)
    for idx, v in enumerate(flat):
        flat[idx] = v if isinstance(v, Surd) else parse_exact(v)
    return arr


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(mpq(0))
    return out


def eye(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = mpq(1)
    return out


def is_zero(arr) -> bool:
    return bool(np.all(np.asarray(arr, dtype=object) == 0))


def inverse(M: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse over any exact field."""
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError(f"square matrix expected, got shape {M.shape}")
    A = np.concatenate([M.astype(object), eye(n)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if A[r, col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        if pivot != col:
            A[[col, pivot]] = A[[pivot, col]]
        A[col] = A[col] / A[col, col]
        for r in range(n):
            if r != col and A[r, col] != 0:
                A[r] = A[r] - A[r, col] * A[col]
    return A[:, n:]


def leading_minors(M: np.ndarray) -> list:
    """Leading principal minors, each as an exact determinant."""
    return [_det(M[:k, :k]) for k in range(1, M.shape[0] + 1)]


def is_positive_definite(M: np.ndarray) -> bool:
    """Sylvester's criterion via pivots of elimination without row swaps.

    With all earlier minors positive, pivot k equals minor_k / minor_{k-1},
    so every pivot is positive exactly when every leading minor is.
    """
    n = M.shape[0]
    A = M.astype(object).copy()
    for k in range(n):
        if sign(A[k, k]) <= 0:
            return False
        for r in range(k + 1, n):
            if A[r, k] != 0:
                A[r, k:] = A[r, k:] - (A[r, k] / A[k, k]) * A[k, k:]
    return True


def _det(M: np.ndarray):
    n = M.shape[0]
    A = M.astype(object).copy()
    det = mpq(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if A[r, col] != 0), None)
        if pivot is None:
            return mpq(0)
        if pivot != col:
            A[[col, pivot]] = A[[pivot, col]]
            det = -det
        det = det * A[col, col]
        for r in range(col + 1, n):
            if A[r, col] != 0:
                A[r] = A[r] - (A[r, col] / A[col, col]) * A[col]
    return det


def nullspace(M: np.ndarray) -> list[np.ndarray]:
    """Basis of the right nullspace of ``M`` (reduced row echelon form)."""
    A = M.astype(object).copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if A[i, c] != 0), None)
        if pivot is None:
            continue
        A[[r, pivot]] = A[[pivot, r]]
        A[r] = A[r] / A[r, c]
        for i in range(rows):
            if i != r and A[i, c] != 0:
                A[i] = A[i] - A[i, c] * A[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        v = zeros(cols)
        v[free] = mpq(1)
        for i, p in enumerate(pivots):
            v[p] = -A[i, free]
        basis.append(v)
    return basis
