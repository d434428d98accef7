"""Rational models of configuration spaces of points on even-dimensional manifolds."""

import json

from ._core import (
    Algebra,
    CatalogError,
    ParseError,
    StructureMapError,
    ValidationError,
    algebra,
    betti,
    betti_json,
    catalog,
    column_acyclicity,
    model_size,
    poincare,
    predicted_dimension,
    psi_is_quasi_isomorphism,
    reduce_over_h,
)
from ._core import verify as _verify


def verify(suite, algebra, n_max=3, second=None):
    """Run a structure-map suite and return its checks as a list of dicts."""
    return json.loads(_verify(suite, algebra, n_max, second))


__all__ = [
    "Algebra",
    "CatalogError",
    "ParseError",
    "StructureMapError",
    "ValidationError",
    "algebra",
    "betti",
    "betti_json",
    "catalog",
    "column_acyclicity",
    "model_size",
    "poincare",
    "predicted_dimension",
    "psi_is_quasi_isomorphism",
    "reduce_over_h",
    "verify",
]
