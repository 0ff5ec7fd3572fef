"""Latent Dirichlet Allocation via collapsed Gibbs sampling.

Point estimates are smoothed posterior means from the final sweep:
phi[i][k] = (n_ik + alpha) / (n_i + K*alpha) and
eta[k][j] = (m_kj + beta) / (m_k + N*beta).
Model choice uses BIC with q = K(N-1) + n(K-1) free simplex parameters.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidK, InvalidParam
from ..kernels import get as get_kernels
from ..kernels import seed_state


@dataclass(frozen=True)
class LdaModel:
    K: int
    alpha: float
    beta: float
    doc_topic: np.ndarray
    topic_word: np.ndarray
    assignments: np.ndarray
    log_likelihood: float
    doc_ids: tuple
    # flat token stream the assignments refer to
    doc_index: np.ndarray
    word_index: np.ndarray


def _flatten(counts):
    rows, cols = np.nonzero(counts)
    reps = counts[rows, cols]
    doc_ix = np.repeat(rows, reps).astype(np.int64)
    word_ix = np.repeat(cols, reps).astype(np.int64)
    return doc_ix, word_ix


def lda_fit(tdm, K, alpha=None, beta=0.1, iters=2000, seed=0):
    if K < 1:
        raise InvalidK(f"K must be >= 1, got {K}")
    if iters < 1:
        raise InvalidParam(f"iters must be >= 1, got {iters}")
    if alpha is None:
        alpha = 50.0 / K

    counts = tdm.counts
    n_docs, n_words = counts.shape
    doc_ix, word_ix = _flatten(counts)
    ker = get_kernels()
    state = seed_state(seed)

    z, n_dk, m_kw, m_k = ker.lda_init(doc_ix, word_ix, n_docs, n_words, K, state)
    for _ in range(iters):
        ker.lda_sweep(doc_ix, word_ix, z, n_dk, m_kw, m_k, alpha, beta, state)

    n_d = n_dk.sum(axis=1, keepdims=True)
    phi = (n_dk + alpha) / (n_d + K * alpha)
    eta = (m_kw + beta) / (m_k[:, None] + n_words * beta)
    loglik = float(ker.lda_loglik(doc_ix, word_ix, phi, eta))

    return LdaModel(
        K=K,
        alpha=float(alpha),
        beta=float(beta),
        doc_topic=phi,
        topic_word=eta,
        assignments=z,
        log_likelihood=loglik,
        doc_ids=tuple(tdm.doc_ids),
        doc_index=doc_ix,
        word_index=word_ix,
    )


def bic(model, tdm):
    n_docs, n_words = tdm.counts.shape
    total = int(tdm.counts.sum())
    q = model.K * (n_words - 1) + n_docs * (model.K - 1)
    return -2.0 * model.log_likelihood + q * math.log(total)


def lda_select_k(tdm, candidates=(5, 10, 15, 20, 25), alpha=None, beta=0.1,
                 iters=2000, seed=0):
    """Fit each candidate topic count and keep the BIC argmin (ties: smallest K)."""
    if not candidates:
        raise InvalidK("candidates must be nonempty")
    best = None
    best_bic = math.inf
    best_k = None
    for i, K in enumerate(sorted(candidates)):
        model = lda_fit(tdm, K, alpha=alpha, beta=beta, iters=iters, seed=seed + i)
        score = bic(model, tdm)
        if score < best_bic:
            best, best_bic, best_k = model, score, K
    return best_k, best


def write_lda_json(model, path):
    payload = {
        "K": model.K,
        "alpha": model.alpha,
        "beta": model.beta,
        "doc_topic": model.doc_topic.tolist(),
        "topic_word": model.topic_word.tolist(),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, separators=(",", ":"))
