"""Single-source numerical kernels.

Every function here is written in nopython-compatible style: plain loops over
numpy arrays, scalar math, no Python objects. ``stylus.kernels`` executes a
second copy of this module wrapped with ``numba.njit`` when acceleration is
enabled; this copy stays un-jitted and serves as the pure-numpy fallback, so
both backends share one implementation.

Randomness comes from an explicit splitmix64 state (a 1-element uint64 array)
threaded through every sampling routine. That keeps chains reproducible from a
single integer seed and independent of global RNG state.
"""

import math

import numpy as np

# Names wrapped by the numba backend. Order does not matter; compilation is
# lazy, but every function reachable from a kernel must be listed.
KERNEL_NAMES = (
    "rng_next",
    "rng_uniform",
    "rng_index",
    "norm_cdf",
    "norm_ppf",
    "rng_normal",
    "rng_truncnorm",
    "lda_init",
    "lda_sweep",
    "lda_loglik",
    "binom_two_sided",
    "binom_two_sided_batch",
    "lasso_path",
    "logistic_grad",
    "tree_route",
    "partition_stats",
    "partition_loglik_from_stats",
    "split_prob",
    "distinct_below_max",
    "bart_iteration",
    "forest_predict",
)


# ----------------------------------------------------------------------
# pseudo-random numbers (splitmix64)
# ----------------------------------------------------------------------

def rng_next(state):
    # uint64 arithmetic wraps mod 2**64 on both backends
    state[0] = state[0] + np.uint64(0x9E3779B97F4A7C15)
    z = state[0]
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def rng_uniform(state):
    # 53-bit mantissa, value in [0, 1)
    return float(rng_next(state) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


def rng_index(state, n):
    # uniform integer in [0, n)
    k = int(rng_uniform(state) * n)
    if k >= n:
        k = n - 1
    return k


def norm_cdf(x):
    # Hart / West double-precision cumulative normal
    z = abs(x)
    if z > 37.0:
        c = 0.0
    elif z < 7.07106781186547:
        e = math.exp(-z * z / 2.0)
        num = 3.52624965998911e-02
        num = num * z + 0.700383064443688
        num = num * z + 6.37396220353165
        num = num * z + 33.912866078383
        num = num * z + 112.079291497871
        num = num * z + 221.213596169931
        num = num * z + 220.206867912376
        den = 8.83883476483184e-02
        den = den * z + 1.75566716318264
        den = den * z + 16.064177579207
        den = den * z + 86.7807322029461
        den = den * z + 296.564248779674
        den = den * z + 637.333633378831
        den = den * z + 793.826512519948
        den = den * z + 440.413735824752
        c = e * num / den
    else:
        e = math.exp(-z * z / 2.0)
        cf = z + 0.65
        cf = z + 4.0 / cf
        cf = z + 3.0 / cf
        cf = z + 2.0 / cf
        cf = z + 1.0 / cf
        c = e / (2.506628274631 * cf)
    if x > 0.0:
        return 1.0 - c
    return c


def norm_ppf(p):
    # Acklam's rational approximation to the inverse normal CDF
    if p <= 0.0:
        return -38.0
    if p >= 1.0:
        return 38.0
    plow = 0.02425
    if p < plow:
        q = math.sqrt(-2.0 * math.log(p))
        return (((((-7.784894002430293e-03 * q - 3.223964580411365e-01) * q
                   - 2.400758277161838e+00) * q - 2.549732539343734e+00) * q
                 + 4.374664141464968e+00) * q + 2.938163982698783e+00) / \
            ((((7.784695709041462e-03 * q + 3.224671290700398e-01) * q
               + 2.445134137142996e+00) * q + 3.754408661907416e+00) * q + 1.0)
    if p > 1.0 - plow:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        return -(((((-7.784894002430293e-03 * q - 3.223964580411365e-01) * q
                    - 2.400758277161838e+00) * q - 2.549732539343734e+00) * q
                  + 4.374664141464968e+00) * q + 2.938163982698783e+00) / \
            ((((7.784695709041462e-03 * q + 3.224671290700398e-01) * q
               + 2.445134137142996e+00) * q + 3.754408661907416e+00) * q + 1.0)
    q = p - 0.5
    r = q * q
    return (((((-3.969683028665376e+01 * r + 2.209460984245205e+02) * r
               - 2.759285104469687e+02) * r + 1.383577518672690e+02) * r
             - 3.066479806614716e+01) * r + 2.506628277459239e+00) * q / \
        (((((-5.447609879822406e+01 * r + 1.615858368580409e+02) * r
            - 1.556989798598866e+02) * r + 6.680131188771972e+01) * r
          - 1.328068155288572e+01) * r + 1.0)


def rng_normal(state):
    return norm_ppf(rng_uniform(state))


def rng_truncnorm(state, mean, positive):
    """Draw from N(mean, 1) truncated to (0, inf) or (-inf, 0)."""
    if positive:
        t = -mean
    else:
        t = mean
    u = rng_uniform(state)
    if t <= 7.0:
        pl = norm_cdf(t)
        v = pl + u * (1.0 - pl)
        if v > 1.0 - 1e-16:
            v = 1.0 - 1e-16
        z = norm_ppf(v)
    else:
        # deep tail: inverse of the Rayleigh tail envelope
        z = math.sqrt(t * t - 2.0 * math.log(1.0 - u))
    if positive:
        return mean + z
    return mean - z


# ----------------------------------------------------------------------
# collapsed Gibbs sampling for the topic model
# ----------------------------------------------------------------------

def lda_init(doc_ix, word_ix, n_docs, n_words, n_topics, state):
    """Random topic assignments and the three count tables."""
    T = doc_ix.shape[0]
    z = np.zeros(T, np.int64)
    n_dk = np.zeros((n_docs, n_topics), np.int64)
    m_kw = np.zeros((n_topics, n_words), np.int64)
    m_k = np.zeros(n_topics, np.int64)
    for t in range(T):
        k = rng_index(state, n_topics)
        z[t] = k
        n_dk[doc_ix[t], k] += 1
        m_kw[k, word_ix[t]] += 1
        m_k[k] += 1
    return z, n_dk, m_kw, m_k


def lda_sweep(doc_ix, word_ix, z, n_dk, m_kw, m_k, alpha, beta, state):
    """One full collapsed Gibbs sweep, updating assignments in place."""
    T = doc_ix.shape[0]
    K = m_k.shape[0]
    nb = m_kw.shape[1] * beta
    cum = np.zeros(K, np.float64)
    for t in range(T):
        d = doc_ix[t]
        w = word_ix[t]
        k = z[t]
        n_dk[d, k] -= 1
        m_kw[k, w] -= 1
        m_k[k] -= 1
        tot = 0.0
        for j in range(K):
            tot += (n_dk[d, j] + alpha) * (m_kw[j, w] + beta) / (m_k[j] + nb)
            cum[j] = tot
        u = rng_uniform(state) * tot
        k = 0
        while k < K - 1 and cum[k] < u:
            k += 1
        z[t] = k
        n_dk[d, k] += 1
        m_kw[k, w] += 1
        m_k[k] += 1


def lda_loglik(doc_ix, word_ix, phi, eta):
    """Token log likelihood under smoothed doc-topic and topic-word estimates."""
    T = doc_ix.shape[0]
    K = phi.shape[1]
    total = 0.0
    for t in range(T):
        d = doc_ix[t]
        w = word_ix[t]
        s = 0.0
        for k in range(K):
            s += phi[d, k] * eta[k, w]
        total += math.log(s)
    return total


# ----------------------------------------------------------------------
# exact two-sided binomial deviation probability
# ----------------------------------------------------------------------

def binom_two_sided(m, q, x):
    """P(|Bin(m, q) - mq| >= |x - mq|) by exact summation in log space."""
    if q < 1e-12:
        q = 1e-12
    if q > 1.0 - 1e-12:
        q = 1.0 - 1e-12
    lq = math.log(q)
    l1q = math.log(1.0 - q)
    mu = m * q
    dev = abs(x - mu) - 1e-9
    lgm = math.lgamma(m + 1.0)
    mx = -1e308
    for k in range(m + 1):
        if abs(k - mu) >= dev:
            lp = lgm - math.lgamma(k + 1.0) - math.lgamma(m - k + 1.0) \
                + k * lq + (m - k) * l1q
            if lp > mx:
                mx = lp
    s = 0.0
    for k in range(m + 1):
        if abs(k - mu) >= dev:
            lp = lgm - math.lgamma(k + 1.0) - math.lgamma(m - k + 1.0) \
                + k * lq + (m - k) * l1q
            s += math.exp(lp - mx)
    p = math.exp(mx) * s
    if p > 1.0:
        p = 1.0
    if p <= 0.0:
        p = 5e-324
    return p


def binom_two_sided_batch(ms, qs, xs):
    n = ms.shape[0]
    out = np.zeros(n, np.float64)
    for i in range(n):
        out[i] = binom_two_sided(ms[i], qs[i], xs[i])
    return out


# ----------------------------------------------------------------------
# sparse logistic regression by penalized coordinate descent
# ----------------------------------------------------------------------

def logistic_grad(X, y, beta, b0):
    """Unpenalized negative log likelihood gradient in beta."""
    n, p = X.shape
    g = np.zeros(p, np.float64)
    for i in range(n):
        lp = b0
        for j in range(p):
            if beta[j] != 0.0:
                lp += X[i, j] * beta[j]
        pr = 1.0 / (1.0 + math.exp(-lp))
        d = pr - y[i]
        for j in range(p):
            g[j] += X[i, j] * d
    return g


def lasso_path(X, y, lambdas, tol, max_outer):
    """L1-penalized logistic fits along a decreasing lambda path.

    X must already be standardized. Returns (B, b0s) where row l of B holds
    the coefficients at lambdas[l]. Objective: sum over rows of the negative
    log likelihood plus lam * sum_j |beta_j|, intercept unpenalized. Outer
    loop is iteratively reweighted least squares; inner loop cyclic
    coordinate descent on a working set screened by the sequential strong
    rule, then a full KKT sweep pulls in violators until none remain.
    """
    n, p = X.shape
    L = lambdas.shape[0]
    B = np.zeros((L, p), np.float64)
    b0s = np.zeros(L, np.float64)

    ybar = 0.0
    for i in range(n):
        ybar += y[i]
    ybar /= n
    if ybar < 1e-10:
        ybar = 1e-10
    if ybar > 1.0 - 1e-10:
        ybar = 1.0 - 1e-10

    beta = np.zeros(p, np.float64)
    b0 = math.log(ybar / (1.0 - ybar))
    lp = np.full(n, b0)

    prob = np.zeros(n, np.float64)
    w = np.zeros(n, np.float64)
    e = np.zeros(n, np.float64)
    in_set = np.zeros(p, np.uint8)
    wx2 = np.zeros(p, np.float64)

    lam_prev = lambdas[0]
    for li in range(L):
        lam = lambdas[li]
        for i in range(n):
            prob[i] = 1.0 / (1.0 + math.exp(-lp[i]))
        thresh = 2.0 * lam - lam_prev
        for j in range(p):
            if beta[j] != 0.0:
                in_set[j] = 1
            else:
                g = 0.0
                for i in range(n):
                    g += X[i, j] * (prob[i] - y[i])
                in_set[j] = 1 if abs(g) >= thresh else 0

        for _screen in range(100):
            for _outer in range(max_outer):
                for i in range(n):
                    pr = 1.0 / (1.0 + math.exp(-lp[i]))
                    wi = pr * (1.0 - pr)
                    if wi < 1e-5:
                        wi = 1e-5
                    w[i] = wi
                    e[i] = (y[i] - pr) / wi
                sw = 0.0
                for i in range(n):
                    sw += w[i]
                for j in range(p):
                    if in_set[j] == 1:
                        s = 0.0
                        for i in range(n):
                            s += w[i] * X[i, j] * X[i, j]
                        wx2[j] = s
                dmax_outer = 0.0
                for _inner in range(1000):
                    dmax = 0.0
                    num = 0.0
                    for i in range(n):
                        num += w[i] * e[i]
                    db0 = num / sw
                    if abs(db0) > dmax:
                        dmax = abs(db0)
                    if db0 != 0.0:
                        b0 += db0
                        for i in range(n):
                            e[i] -= db0
                    for j in range(p):
                        if in_set[j] == 0 or wx2[j] <= 0.0:
                            continue
                        num = 0.0
                        for i in range(n):
                            num += w[i] * X[i, j] * e[i]
                        num += beta[j] * wx2[j]
                        if num > lam:
                            bn = (num - lam) / wx2[j]
                        elif num < -lam:
                            bn = (num + lam) / wx2[j]
                        else:
                            bn = 0.0
                        d = bn - beta[j]
                        if d != 0.0:
                            beta[j] = bn
                            for i in range(n):
                                e[i] -= X[i, j] * d
                            if abs(d) > dmax:
                                dmax = abs(d)
                    if dmax > dmax_outer:
                        dmax_outer = dmax
                    if dmax < tol:
                        break
                for i in range(n):
                    s = b0
                    for j in range(p):
                        if beta[j] != 0.0:
                            s += X[i, j] * beta[j]
                    lp[i] = s
                if dmax_outer < tol:
                    break
            # KKT sweep over every coordinate
            for i in range(n):
                prob[i] = 1.0 / (1.0 + math.exp(-lp[i]))
            violations = 0
            for j in range(p):
                if in_set[j] == 1:
                    continue
                g = 0.0
                for i in range(n):
                    g += X[i, j] * (prob[i] - y[i])
                if abs(g) > lam:
                    in_set[j] = 1
                    violations += 1
            if violations == 0:
                break
        for j in range(p):
            B[li, j] = beta[j]
        b0s[li] = b0
        lam_prev = lam
    return B, b0s


# ----------------------------------------------------------------------
# sum-of-trees probit sampler
# ----------------------------------------------------------------------
# A tree lives in fixed-capacity parallel arrays: feat/thresh describe split
# nodes, left/right hold child slot ids (-1 marks a leaf), value holds leaf
# means, used flags allocated slots, depth is maintained incrementally.
# Slot 0 is always the root.

def tree_route(X, feat, thresh, left, right, leaf_of):
    n = X.shape[0]
    for i in range(n):
        node = 0
        while left[node] >= 0:
            if X[i, feat[node]] <= thresh[node]:
                node = left[node]
            else:
                node = right[node]
        leaf_of[i] = node
    return 0


def partition_stats(leaf_of, r, cnt, s1):
    maxn = cnt.shape[0]
    for a in range(maxn):
        cnt[a] = 0
        s1[a] = 0.0
    for i in range(leaf_of.shape[0]):
        l = leaf_of[i]
        cnt[l] += 1
        s1[l] += r[i]
    return 0


def partition_loglik_from_stats(cnt, s1, sigma_mu2):
    # leaf-partition terms of the integrated likelihood, unit noise variance
    ll = 0.0
    for a in range(cnt.shape[0]):
        if cnt[a] > 0:
            d = 1.0 + cnt[a] * sigma_mu2
            ll += -0.5 * math.log(d) + 0.5 * sigma_mu2 * s1[a] * s1[a] / d
    return ll


def split_prob(depth, alpha_split, beta_split):
    return alpha_split / (1.0 + depth) ** beta_split


def distinct_below_max(X, fsel, leaf_of, node, out):
    """Distinct values of feature fsel among a node's rows, excluding the
    node maximum (so a split always sends something right). Writes the
    candidates into out in increasing order and returns their count."""
    n = X.shape[0]
    cnt = 0
    for i in range(n):
        if leaf_of[i] == node:
            out[cnt] = X[i, fsel]
            cnt += 1
    if cnt == 0:
        return 0
    vals = np.sort(out[:cnt])
    nd = 0
    vmax = vals[cnt - 1]
    for a in range(cnt):
        v = vals[a]
        if v < vmax and (nd == 0 or out[nd - 1] != v):
            out[nd] = v
            nd += 1
    return nd


def bart_iteration(X, y, u, feat, thresh, left, right, value, used, depth,
                   tree_fit, total_fit, offset, sigma_mu2,
                   alpha_split, beta_split, min_leaf, state):
    """One sampler iteration: per-tree structure moves, conjugate leaf mean
    draws, then a truncated-normal refresh of the latent utilities.

    Mutates every array argument in place. X is (n, p); tree arrays are
    (m, maxn); tree_fit is (m, n); total_fit and u are (n,).
    """
    n, p = X.shape
    m, maxn = feat.shape

    leaf_of = np.zeros(n, np.int64)
    leaf_new = np.zeros(n, np.int64)
    cnt = np.zeros(maxn, np.int64)
    s1 = np.zeros(maxn, np.float64)
    cntp = np.zeros(maxn, np.int64)
    s1p = np.zeros(maxn, np.float64)
    r = np.zeros(n, np.float64)
    cand = np.zeros(n, np.float64)
    rev = np.zeros(n, np.float64)
    leaves = np.zeros(maxn, np.int64)
    internals = np.zeros(maxn, np.int64)
    nogs = np.zeros(maxn, np.int64)

    for j in range(m):
        fj = feat[j]
        tj = thresh[j]
        lj = left[j]
        rj = right[j]
        vj = value[j]
        uj = used[j]
        dj = depth[j]

        for i in range(n):
            r[i] = u[i] - offset - (total_fit[i] - tree_fit[j, i])

        tree_route(X, fj, tj, lj, rj, leaf_of)
        partition_stats(leaf_of, r, cnt, s1)
        ll_cur = partition_loglik_from_stats(cnt, s1, sigma_mu2)

        n_leaf = 0
        n_int = 0
        n_nog = 0
        for a in range(maxn):
            if uj[a] == 1:
                if lj[a] < 0:
                    leaves[n_leaf] = a
                    n_leaf += 1
                else:
                    internals[n_int] = a
                    n_int += 1
                    if lj[lj[a]] < 0 and lj[rj[a]] < 0:
                        nogs[n_nog] = a
                        n_nog += 1
        is_stump = n_int == 0

        if is_stump:
            move = 0
        else:
            um = rng_uniform(state)
            if um < 0.25:
                move = 0
            elif um < 0.5:
                move = 1
            else:
                move = 2

        if move == 0:
            # grow: split a leaf on a drawn feature and cutpoint
            pick = leaves[rng_index(state, n_leaf)]
            fsel = rng_index(state, p)
            if cnt[pick] >= 2 * min_leaf:
                ndist = distinct_below_max(X, fsel, leaf_of, pick, cand)
                c1 = -1
                c2 = -1
                for a in range(maxn):
                    if uj[a] == 0:
                        if c1 < 0:
                            c1 = a
                        else:
                            c2 = a
                            break
                if ndist > 0 and c2 >= 0:
                    cut = cand[rng_index(state, ndist)]
                    nl = 0
                    nr = 0
                    for i in range(n):
                        if leaf_of[i] == pick:
                            if X[i, fsel] <= cut:
                                leaf_new[i] = c1
                                nl += 1
                            else:
                                leaf_new[i] = c2
                                nr += 1
                        else:
                            leaf_new[i] = leaf_of[i]
                    if nl >= min_leaf and nr >= min_leaf:
                        partition_stats(leaf_new, r, cntp, s1p)
                        ll_prop = partition_loglik_from_stats(
                            cntp, s1p, sigma_mu2)
                        d = float(dj[pick])
                        ps = split_prob(d, alpha_split, beta_split)
                        pc = split_prob(d + 1.0, alpha_split, beta_split)
                        log_prior = math.log(ps) + 2.0 * math.log(1.0 - pc) \
                            - math.log(1.0 - ps)
                        # nog count after the grow: the picked leaf becomes
                        # one; a parent loses nog status if its other child
                        # was not a leaf anyway, handled by recount below
                        n_nog_new = 1
                        for a in range(n_int):
                            node = internals[a]
                            lc = lj[node]
                            rc = rj[node]
                            lleaf = lj[lc] < 0 and lc != pick
                            rleaf = lj[rc] < 0 and rc != pick
                            if lleaf and rleaf:
                                n_nog_new += 1
                        pg = 1.0 if is_stump else 0.25
                        log_prop = math.log(0.25) - math.log(n_nog_new) \
                            - math.log(pg) + math.log(n_leaf) \
                            + math.log(p) + math.log(ndist)
                        lr = ll_prop - ll_cur + log_prior + log_prop
                        if math.log(rng_uniform(state) + 1e-300) < lr:
                            uj[c1] = 1
                            uj[c2] = 1
                            fj[pick] = fsel
                            tj[pick] = cut
                            lj[pick] = c1
                            rj[pick] = c2
                            lj[c1] = -1
                            rj[c1] = -1
                            lj[c2] = -1
                            rj[c2] = -1
                            vj[c1] = 0.0
                            vj[c2] = 0.0
                            dj[c1] = dj[pick] + 1
                            dj[c2] = dj[pick] + 1
                            for i in range(n):
                                leaf_of[i] = leaf_new[i]
        elif move == 1:
            # prune: collapse an internal node whose children are both leaves
            pick = nogs[rng_index(state, n_nog)]
            c1 = lj[pick]
            c2 = rj[pick]
            fold = fj[pick]
            for i in range(n):
                if leaf_of[i] == c1 or leaf_of[i] == c2:
                    leaf_new[i] = pick
                else:
                    leaf_new[i] = leaf_of[i]
            partition_stats(leaf_new, r, cntp, s1p)
            ll_prop = partition_loglik_from_stats(cntp, s1p, sigma_mu2)
            ndist = distinct_below_max(X, fold, leaf_new, pick, rev)
            d = float(dj[pick])
            ps = split_prob(d, alpha_split, beta_split)
            pc = split_prob(d + 1.0, alpha_split, beta_split)
            log_prior = -(math.log(ps) + 2.0 * math.log(1.0 - pc)
                          - math.log(1.0 - ps))
            stump_after = n_int == 1
            pg_after = 1.0 if stump_after else 0.25
            log_prop = math.log(pg_after) - math.log(n_leaf - 1) \
                - math.log(p) - math.log(ndist) \
                - math.log(0.25) + math.log(n_nog)
            lr = ll_prop - ll_cur + log_prior + log_prop
            if math.log(rng_uniform(state) + 1e-300) < lr:
                uj[c1] = 0
                uj[c2] = 0
                lj[pick] = -1
                rj[pick] = -1
                vj[pick] = 0.0
                for i in range(n):
                    leaf_of[i] = leaf_new[i]
        else:
            # change: redraw the split rule of an internal node
            pick = internals[rng_index(state, n_int)]
            fold = fj[pick]
            told = tj[pick]
            fsel = rng_index(state, p)
            # rows reaching this node: route with the node turned into a leaf
            lsave = lj[pick]
            lj[pick] = -1
            tree_route(X, fj, tj, lj, rj, leaf_new)
            lj[pick] = lsave
            ndist = distinct_below_max(X, fsel, leaf_new, pick, cand)
            nold = distinct_below_max(X, fold, leaf_new, pick, rev)
            if ndist > 0 and nold > 0:
                cut = cand[rng_index(state, ndist)]
                fj[pick] = fsel
                tj[pick] = cut
                tree_route(X, fj, tj, lj, rj, leaf_new)
                partition_stats(leaf_new, r, cntp, s1p)
                ok = True
                for a in range(maxn):
                    if uj[a] == 1 and lj[a] < 0 and cntp[a] < min_leaf:
                        ok = False
                        break
                accepted = False
                if ok:
                    ll_prop = partition_loglik_from_stats(cntp, s1p, sigma_mu2)
                    lr = ll_prop - ll_cur + math.log(ndist) - math.log(nold)
                    if math.log(rng_uniform(state) + 1e-300) < lr:
                        for i in range(n):
                            leaf_of[i] = leaf_new[i]
                        accepted = True
                if not accepted:
                    fj[pick] = fold
                    tj[pick] = told

        # conjugate leaf mean draws and fit refresh
        partition_stats(leaf_of, r, cnt, s1)
        for a in range(maxn):
            if uj[a] == 1 and lj[a] < 0:
                var = 1.0 / (cnt[a] + 1.0 / sigma_mu2)
                mu = var * s1[a]
                vj[a] = mu + math.sqrt(var) * rng_normal(state)
        for i in range(n):
            newfit = vj[leaf_of[i]]
            total_fit[i] += newfit - tree_fit[j, i]
            tree_fit[j, i] = newfit

    # latent utilities given the refreshed ensemble
    for i in range(n):
        mean = offset + total_fit[i]
        if y[i] == 1:
            u[i] = rng_truncnorm(state, mean, True)
        else:
            u[i] = rng_truncnorm(state, mean, False)
    return 0


def forest_predict(X, feat, thresh, left, right, value, tree_ptr,
                   draw_ptr, out):
    """Sum-of-trees evaluation over serialized forests.

    tree_ptr[t]:tree_ptr[t+1] delimits tree t's nodes in the flat arrays;
    draw_ptr[d]:draw_ptr[d+1] delimits draw d's trees. Child ids are local
    to each tree. out is (draws, rows), pre-zeroed by the caller.
    """
    ndraw = draw_ptr.shape[0] - 1
    n = X.shape[0]
    for d in range(ndraw):
        for t in range(draw_ptr[d], draw_ptr[d + 1]):
            base = tree_ptr[t]
            for i in range(n):
                node = 0
                while left[base + node] >= 0:
                    if X[i, feat[base + node]] <= thresh[base + node]:
                        node = left[base + node]
                    else:
                        node = right[base + node]
                out[d, i] += value[base + node]
    return 0
