"""Low-rank factorizations X ~= S H: truncated SVD (LSA) and NMF."""

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg

from ..errors import RankTooLarge


@dataclass(frozen=True)
class FactorModel:
    method: str
    S: np.ndarray
    H: np.ndarray
    rank: int
    objective: float
    objective_trace: tuple = ()


def _svd_flip(U, Vt):
    # deterministic sign: largest-|entry| coordinate of each left vector positive
    pivot = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[pivot, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    return U * signs, Vt * signs[:, None]


def lsa_fit(tdm, p=10):
    """Rank-p truncated SVD; document embedding is U*Sigma."""
    X = np.asarray(tdm.counts, dtype=np.float64)
    n, N = X.shape
    if p < 1 or p > min(n, N):
        raise RankTooLarge(f"rank {p} not in [1, {min(n, N)}] for shape {X.shape}")

    if p < min(n, N):
        v0 = np.ones(min(n, N))
        U, s, Vt = scipy.sparse.linalg.svds(X, k=p, v0=v0)
        order = np.argsort(s)[::-1]
        U, s, Vt = U[:, order], s[order], Vt[order]
    else:
        U, s, Vt = np.linalg.svd(X, full_matrices=False)
        U, s, Vt = U[:, :p], s[:p], Vt[:p]

    U, Vt = _svd_flip(U, Vt)
    S = U * s
    objective = float(np.linalg.norm(X - S @ Vt, "fro"))
    return FactorModel(method="LSA", S=S, H=Vt, rank=p, objective=objective)


def nmf_fit(tdm, p=10, iters=200, seed=0):
    """Multiplicative-update NMF for the squared Frobenius objective."""
    X = np.asarray(tdm.counts, dtype=np.float64)
    if (X < 0).any():
        raise ValueError("NMF requires a nonnegative matrix")
    n, N = X.shape
    if p < 1:
        raise RankTooLarge(f"rank must be >= 1, got {p}")

    rng = np.random.default_rng(seed)
    scale = np.sqrt(max(X.mean(), 1e-12) / p)
    S = rng.random((n, p)) * scale
    H = rng.random((p, N)) * scale

    eps = 1e-12
    trace = []
    for _ in range(iters):
        H *= (S.T @ X) / (S.T @ S @ H + eps)
        S *= (X @ H.T) / (S @ H @ H.T + eps)
        diff = X - S @ H
        trace.append(float(np.einsum("ij,ij->", diff, diff)))

    return FactorModel(
        method="NMF",
        S=S,
        H=H,
        rank=p,
        objective=trace[-1],
        objective_trace=tuple(trace),
    )
