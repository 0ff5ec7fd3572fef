"""Independent reference implementations used only to check the package.

Everything here is written from the underlying definitions with no imports
from the package, so a test comparing the two is a genuine cross-check.
"""

import math
from fractions import Fraction

import numpy as np


def jacobi_svd(X, tol=1e-14, max_sweeps=100):
    """Singular values (descending) by one-sided Jacobi rotations."""
    A = np.array(X, dtype=np.float64)
    if A.shape[0] < A.shape[1]:
        A = A.T.copy()
    n, m = A.shape
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(m - 1):
            for q in range(p + 1, m):
                app = float(A[:, p] @ A[:, p])
                aqq = float(A[:, q] @ A[:, q])
                apq = float(A[:, p] @ A[:, q])
                if app * aqq > 0:
                    off = max(off, abs(apq) / math.sqrt(app * aqq))
                if apq == 0.0:
                    continue
                tau = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = c * t
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
        if off < tol:
            break
    sv = np.sqrt((A * A).sum(axis=0))
    return np.sort(sv)[::-1]


def best_rank_p_error(X, p):
    """Frobenius error of the optimal rank-p approximation."""
    sv = jacobi_svd(X)
    tail = sv[p:]
    return float(np.sqrt((tail * tail).sum()))


def binom_pmf_exact(m, k, q_num, q_den):
    """Exact Bin(m, q_num/q_den) pmf at k as a Fraction."""
    q = Fraction(q_num, q_den)
    return (
        Fraction(math.comb(m, k))
        * q**k
        * (1 - q) ** (m - k)
    )


def binom_two_sided_exact(m, q_num, q_den, x):
    """Two-sided exact binomial allocation p-value as a Fraction.

    P(|Bin(m,q) - mq| >= |x - mq|) by direct enumeration.
    """
    q = Fraction(q_num, q_den)
    center = m * q
    dev = abs(x - center)
    total = Fraction(0)
    for k in range(m + 1):
        if abs(k - center) >= dev:
            total += binom_pmf_exact(m, k, q_num, q_den)
    return total


def hc_bruteforce(pvals, gamma0=0.2):
    """HC-dagger by exhaustive scan; returns (stat, i_star, t_hc).

    i ranges over 1..floor(gamma0*N) with the constraint p_(i) >= 1/N;
    the statistic is sqrt(N) * (i/N - p_(i)) / sqrt((i/N) * (1 - i/N)).
    i_star is the smallest argmax. Returns (-inf, 0, nan) when no index
    is admissible.
    """
    p = np.sort(np.asarray(pvals, dtype=np.float64))
    N = len(p)
    imax = int(math.floor(gamma0 * N))
    best = -math.inf
    i_star = 0
    t_hc = math.nan
    for i in range(1, imax + 1):
        pi = p[i - 1]
        if pi < 1.0 / N:
            continue
        frac = i / N
        denom = math.sqrt(frac * (1.0 - frac))
        if denom == 0.0:
            continue
        stat = math.sqrt(N) * (frac - pi) / denom
        if stat > best:
            best = stat
            i_star = i
            t_hc = pi
    return best, i_star, t_hc


def nb_draw(rng, mu, delta, size):
    """Monte Carlo draws with mean mu and variance mu*(1+delta).

    Uses the Gamma-Poisson mixture: kappa = mu/delta, lam ~ Gamma(kappa,
    scale=delta), X ~ Poisson(lam).
    """
    if delta == 0.0:
        return rng.poisson(mu, size=size)
    kappa = mu / delta
    lam = rng.gamma(kappa, delta, size=size)
    return rng.poisson(lam)
