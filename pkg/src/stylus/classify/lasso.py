"""L1-penalized logistic regression with information-criterion model choice.

The coordinate-descent path solver lives in the kernel layer; this module
standardizes the design matrix, lays out the regularization path, scores
every path entry with the small-sample-corrected AIC, and packages the
winning coefficients against their feature names.
"""

import json
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import DimensionMismatch
from ._inputs import as_binary_labels, as_feature_matrix
from .predictions import Prediction

PATH_SIZE = 100
PATH_DECADES = 4.0


@dataclass(frozen=True)
class LassoModel:
    intercept: float
    coefficients: dict  # feature name -> coefficient on the standardized scale
    lam: float
    path: tuple  # (lambda, nonzero count, aicc) per path entry, descending lambda
    feature_names: tuple
    mean: np.ndarray
    scale: np.ndarray

    @property
    def selected(self):
        """Names of features with nonzero coefficients, in column order."""
        return tuple(name for name in self.feature_names if name in self.coefficients)


def _nll(Xs, y, beta, b0):
    lp = b0 + Xs @ beta
    return float(np.sum(np.logaddexp(0.0, lp) - y * lp))


def lasso_fit(
    features,
    labels,
    feature_names=None,
    path_size=PATH_SIZE,
    seed=0,
    tol=1e-9,
    max_outer=100,
):
    """Fit the penalized logistic model and pick lambda by corrected AIC.

    ``seed`` is accepted for interface parity with the sampler-based
    classifier; the optimizer itself is deterministic.
    """
    del seed
    X = as_feature_matrix(features)
    n, p = X.shape
    y = as_binary_labels(labels, n)
    if feature_names is None:
        feature_names = tuple(f"f{j}" for j in range(p))
    else:
        feature_names = tuple(str(name) for name in feature_names)
        if len(feature_names) != p:
            raise DimensionMismatch(
                f"{p} feature columns but {len(feature_names)} feature names"
            )

    mean = X.mean(axis=0)
    sd = X.std(axis=0)
    scale = np.where(sd > 0.0, sd, 1.0)
    Xs = np.ascontiguousarray((X - mean) / scale)

    ybar = min(max(y.mean(), 1e-10), 1.0 - 1e-10)
    lam_max = float(np.max(np.abs(Xs.T @ (y - ybar))))
    lam_max = max(lam_max, 1e-10)
    lambdas = np.geomspace(lam_max, lam_max * 10.0 ** (-PATH_DECADES), path_size)

    ker = kernels.get()
    B, b0s = ker.lasso_path(Xs, y, lambdas, tol, max_outer)

    path = []
    best = None
    for idx in range(path_size):
        beta = B[idx]
        nnz = int(np.count_nonzero(beta))
        k = nnz + 1
        if n - k - 1 <= 0:
            aicc = float("inf")
        else:
            nll = _nll(Xs, y, beta, b0s[idx])
            aicc = 2.0 * nll + 2.0 * k + 2.0 * k * (k + 1.0) / (n - k - 1.0)
        path.append((float(lambdas[idx]), nnz, aicc))
        # Strict comparison keeps the earlier (larger-lambda) entry on ties.
        if best is None or aicc < path[best][2]:
            best = idx

    beta = B[best]
    coefficients = {
        feature_names[j]: float(beta[j]) for j in range(p) if beta[j] != 0.0
    }
    return LassoModel(
        intercept=float(b0s[best]),
        coefficients=coefficients,
        lam=float(lambdas[best]),
        path=tuple(path),
        feature_names=feature_names,
        mean=mean,
        scale=scale,
    )


def lasso_predict(model, features, doc_ids=None):
    """Class-1 probabilities for new rows under the fitted model."""
    X = as_feature_matrix(features, n_features=len(model.feature_names))
    Xs = (X - model.mean) / model.scale
    beta = np.array(
        [model.coefficients.get(name, 0.0) for name in model.feature_names]
    )
    lp = model.intercept + Xs @ beta
    probs = np.empty_like(lp)
    pos = lp >= 0.0
    probs[pos] = 1.0 / (1.0 + np.exp(-lp[pos]))
    ez = np.exp(lp[~pos])
    probs[~pos] = ez / (1.0 + ez)
    probs = np.clip(probs, 5e-324, np.nextafter(1.0, 0.0))
    if doc_ids is None:
        doc_ids = range(len(probs))
    return [
        Prediction(doc_id=int(doc_id), prob_madison=float(prob))
        for doc_id, prob in zip(doc_ids, probs)
    ]


def write_lasso_json(model, path):
    payload = {
        "intercept": model.intercept,
        "lambda": model.lam,
        "coefficients": {name: model.coefficients[name] for name in model.selected},
        "path": [
            {"lambda": lam, "nonzero": nnz, "aicc": None if aicc == float("inf") else aicc}
            for lam, nnz, aicc in model.path
        ],
        "standardization": {
            "mean": [float(v) for v in model.mean],
            "scale": [float(v) for v in model.scale],
        },
        "feature_names": list(model.feature_names),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
