"""Exact curvature computations for left-invariant metrics on Lie groups.

Modules: :mod:`~liegeom.algebra` (structure constants, derivations),
:mod:`~liegeom.geometry` (connection, curvature, divergence),
:mod:`~liegeom.extension` (one-dimensional extensions),
:mod:`~liegeom.soliton` (algebraic solitons, quasi-Einstein checks),
:mod:`~liegeom.search` (floating-point family search) and
:mod:`~liegeom.cli`.
"""

__version__ = "0.1.0"

from .algebra import LieAlgebra, catalog, derivation_residual, is_derivation
from .exact import Surd, mpq, parse_exact, rational
from .geometry import InvariantMetric, curvature, divergence_closed_form

__all__ = [
    "LieAlgebra",
    "InvariantMetric",
    "Surd",
    "catalog",
    "curvature",
    "derivation_residual",
    "divergence_closed_form",
    "is_derivation",
    "mpq",
    "parse_exact",
    "rational",
]
