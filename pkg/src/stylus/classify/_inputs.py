"""Input validation shared by the two classifiers."""

import numpy as np

from ..errors import DimensionMismatch, InvalidParam, NonFiniteFeature, SingleClass


def as_feature_matrix(features, n_features=None):
    """Coerce to a C-contiguous float64 (n, p) matrix and validate it."""
    X = np.ascontiguousarray(features, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionMismatch(f"feature matrix must be 2-d, got ndim={X.ndim}")
    if X.shape[0] == 0 or X.shape[1] == 0:
        raise DimensionMismatch(f"feature matrix must be non-empty, got shape {X.shape}")
    if n_features is not None and X.shape[1] != n_features:
        raise DimensionMismatch(
            f"feature matrix has {X.shape[1]} columns, model expects {n_features}"
        )
    if not np.all(np.isfinite(X)):
        bad = np.argwhere(~np.isfinite(X))[0]
        raise NonFiniteFeature(f"non-finite feature value at row {bad[0]}, column {bad[1]}")
    return X


def as_binary_labels(labels, n_rows):
    """Coerce to a float64 0/1 vector with both classes present."""
    y = np.asarray(labels, dtype=np.float64).ravel()
    if y.shape[0] != n_rows:
        raise DimensionMismatch(f"{n_rows} feature rows but {y.shape[0]} labels")
    if not np.all((y == 0.0) | (y == 1.0)):
        raise InvalidParam("labels must be 0 or 1")
    if y.min() == y.max():
        raise SingleClass("labels contain a single class; need both 0 and 1")
    return y
