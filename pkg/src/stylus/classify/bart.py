"""Probit sum-of-trees classifier fit by backfitting MCMC.

The per-iteration sampler (tree moves, conjugate leaf draws, latent-utility
refresh) lives in the kernel layer. This module owns chain orchestration:
initial state, burn-in, compaction of each retained draw's forest into the
flat serialized layout the prediction kernel consumes, and the Gaussian-CDF
averaging that turns latent sums into probabilities.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .. import kernels
from ._inputs import as_binary_labels, as_feature_matrix
from .predictions import Prediction

MAX_NODES = 64


@dataclass(frozen=True)
class BartModel:
    m: int
    burn_in: int
    draws: int
    seed: int
    alpha_split: float
    beta_split: float
    min_leaf: int
    sigma_mu: float
    offset: float
    n_features: int
    # serialized forests: one tree after another, draw-major
    feat: np.ndarray
    thresh: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray
    tree_ptr: np.ndarray  # node offsets, one entry per tree plus a terminator
    draw_ptr: np.ndarray  # tree offsets, one entry per draw plus a terminator


def _compact_draw(feat, thresh, left, right, value, used):
    """Gather one draw's live nodes into flat arrays with tree-local ids.

    Slot 0 of every tree is its root and `used` is 1 there, so row-major
    gathering keeps the root first (local id 0) as the prediction kernel
    requires, even when pruning has left gaps between live slots.
    """
    ranks = np.cumsum(used, axis=1) - 1
    counts = used.sum(axis=1)
    rows, slots = np.nonzero(used)
    l_raw = left[rows, slots]
    r_raw = right[rows, slots]
    return (
        feat[rows, slots].copy(),
        thresh[rows, slots].copy(),
        np.where(l_raw >= 0, ranks[rows, np.maximum(l_raw, 0)], -1),
        np.where(r_raw >= 0, ranks[rows, np.maximum(r_raw, 0)], -1),
        value[rows, slots].copy(),
        counts,
    )


def bart_fit(
    features,
    labels,
    m=200,
    burn_in=1000,
    draws=1000,
    seed=0,
    alpha_split=0.95,
    beta_split=2.0,
    min_leaf=5,
):
    """Run the probit backfitting sampler and keep `draws` posterior forests."""
    X = as_feature_matrix(features)
    n, p = X.shape
    y01 = as_binary_labels(labels, n)
    y = y01.astype(np.int64)

    ybar = min(max(y01.mean(), 1e-10), 1.0 - 1e-10)
    offset = float(ndtri(ybar))
    sigma_mu = 3.0 / (2.0 * np.sqrt(m))

    ker = kernels.get()
    state = kernels.seed_state(seed)

    feat = np.full((m, MAX_NODES), -1, dtype=np.int64)
    thresh = np.zeros((m, MAX_NODES), dtype=np.float64)
    left = np.full((m, MAX_NODES), -1, dtype=np.int64)
    right = np.full((m, MAX_NODES), -1, dtype=np.int64)
    value = np.zeros((m, MAX_NODES), dtype=np.float64)
    used = np.zeros((m, MAX_NODES), dtype=np.int64)
    used[:, 0] = 1
    depth = np.zeros((m, MAX_NODES), dtype=np.int64)
    tree_fit = np.zeros((m, n), dtype=np.float64)
    total_fit = np.zeros(n, dtype=np.float64)

    # Latent utilities start as truncated-normal draws around the offset,
    # matching the refresh the sampler applies at the end of every sweep.
    u = np.zeros(n, dtype=np.float64)
    for i in range(n):
        u[i] = ker.rng_truncnorm(state, offset, y[i] == 1)

    feat_parts = []
    thresh_parts = []
    left_parts = []
    right_parts = []
    value_parts = []
    count_parts = []
    for it in range(burn_in + draws):
        ker.bart_iteration(
            X, y, u, feat, thresh, left, right, value, used, depth,
            tree_fit, total_fit, offset, sigma_mu * sigma_mu,
            alpha_split, beta_split, min_leaf, state,
        )
        if it >= burn_in:
            f, t, l, r, v, counts = _compact_draw(
                feat, thresh, left, right, value, used
            )
            feat_parts.append(f)
            thresh_parts.append(t)
            left_parts.append(l)
            right_parts.append(r)
            value_parts.append(v)
            count_parts.append(counts)

    counts_flat = np.concatenate(count_parts)
    tree_ptr = np.zeros(counts_flat.shape[0] + 1, dtype=np.int64)
    np.cumsum(counts_flat, out=tree_ptr[1:])
    draw_ptr = np.arange(draws + 1, dtype=np.int64) * m

    return BartModel(
        m=m,
        burn_in=burn_in,
        draws=draws,
        seed=seed,
        alpha_split=alpha_split,
        beta_split=beta_split,
        min_leaf=min_leaf,
        sigma_mu=float(sigma_mu),
        offset=offset,
        n_features=p,
        feat=np.ascontiguousarray(np.concatenate(feat_parts)),
        thresh=np.ascontiguousarray(np.concatenate(thresh_parts)),
        left=np.ascontiguousarray(np.concatenate(left_parts)),
        right=np.ascontiguousarray(np.concatenate(right_parts)),
        value=np.ascontiguousarray(np.concatenate(value_parts)),
        tree_ptr=tree_ptr,
        draw_ptr=draw_ptr,
    )


def bart_draw_matrix(model, features):
    """Per-draw class-1 probabilities, shape (draws, rows)."""
    X = as_feature_matrix(features, n_features=model.n_features)
    ker = kernels.get()
    sums = np.zeros((model.draws, X.shape[0]), dtype=np.float64)
    ker.forest_predict(
        X, model.feat, model.thresh, model.left, model.right, model.value,
        model.tree_ptr, model.draw_ptr, sums,
    )
    probs = ndtr(model.offset + sums)
    return np.clip(probs, 1e-12, 1.0 - 1e-12)


def bart_predict(model, features, doc_ids=None):
    """Posterior-mean probabilities with 2.5/97.5-percentile bounds."""
    probs = bart_draw_matrix(model, features)
    mean = probs.mean(axis=0)
    lo = np.percentile(probs, 2.5, axis=0)
    hi = np.percentile(probs, 97.5, axis=0)
    if doc_ids is None:
        doc_ids = range(probs.shape[1])
    return [
        Prediction(
            doc_id=int(doc_id),
            prob_madison=float(mean[col]),
            lo95=float(lo[col]),
            hi95=float(hi[col]),
            draws=probs[:, col].copy(),
        )
        for col, doc_id in enumerate(doc_ids)
    ]
