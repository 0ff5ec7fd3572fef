"""Per-word negative-binomial authorship odds.

Each marker word gets author-specific occurrence rates (per 1000 words) and
non-Poissonness parameters, estimated as a joint posterior mode under
symmetric Beta priors on the rate/spread shares and a Gamma prior on the
total spread. Document-level evidence is the exact sum of per-word
log-likelihood ratios, negative totals favoring Madison.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import betaln, gammaln

from .errors import InvalidParam, NoOccurrences, UncoveredWord

POISSON_DELTA = 1e-8
XI_MAX = 10.0
GOLDEN_TOL = 1e-6
MAX_CYCLES = 200
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class NbPriorConstants:
    beta1: float = 10.0
    beta2: float = 0.0
    beta3: float = 12.0
    beta4: float = 0.83
    beta5: float = 1.2


DEFAULT_PRIORS = NbPriorConstants()


@dataclass(frozen=True)
class NbWordModel:
    word: str
    mu_h: float
    mu_m: float
    delta_h: float
    delta_m: float

    def __post_init__(self):
        if not (self.mu_h > 0.0 and self.mu_m > 0.0):
            raise InvalidParam(f"rates must be positive for word {self.word!r}")
        if self.delta_h < 0.0 or self.delta_m < 0.0:
            raise InvalidParam(f"non-Poissonness must be >= 0 for word {self.word!r}")

    @property
    def kappa_h(self):
        return self.mu_h / self.delta_h if self.delta_h > 0.0 else math.inf

    @property
    def kappa_m(self):
        return self.mu_m / self.delta_m if self.delta_m > 0.0 else math.inf


@dataclass(frozen=True)
class OddsReport:
    doc_id: int
    contributions: tuple  # (word, log-likelihood-ratio) sorted by word
    prior_log_odds: float
    total: float


def nb_log_pmf(x, mu, delta):
    """Log probability of count x under mean `mu`, non-Poissonness `delta`.

    The distribution has mean mu and variance mu * (1 + delta); delta -> 0
    recovers the Poisson law (switched exactly below POISSON_DELTA).
    """
    if isinstance(x, float):
        if not x.is_integer():
            raise InvalidParam(f"count must be an integer, got {x}")
        x = int(x)
    x = int(x)
    if x < 0:
        raise InvalidParam(f"count must be >= 0, got {x}")
    if not mu > 0.0:
        raise InvalidParam(f"mean must be > 0, got {mu}")
    if delta < 0.0:
        raise InvalidParam(f"non-Poissonness must be >= 0, got {delta}")
    if delta < POISSON_DELTA:
        return x * math.log(mu) - mu - math.lgamma(x + 1.0)
    kappa = mu / delta
    return (
        math.lgamma(x + kappa)
        - math.lgamma(kappa)
        - math.lgamma(x + 1.0)
        + x * math.log(delta / (1.0 + delta))
        - kappa * math.log1p(delta)
    )


def nb_pmf(x, mu, delta):
    return math.exp(nb_log_pmf(x, mu, delta))


def _author_loglik(xs, lens_k, lgx1, mu, delta):
    """Sum of per-paper count log likelihoods for one author.

    xs: counts; lens_k: lengths in thousands; lgx1: precomputed
    log-Gamma(x+1). Summed with fsum so paper order never changes the value.
    """
    means = mu * lens_k
    if delta < POISSON_DELTA:
        terms = xs * np.log(means) - means - lgx1
    else:
        kappa = means / delta
        terms = (
            gammaln(xs + kappa)
            - gammaln(kappa)
            - lgx1
            + xs * math.log(delta / (1.0 + delta))
            - kappa * math.log1p(delta)
        )
    return math.fsum(terms.tolist())


def _golden_max(f, lo, hi):
    """Golden-section maximization of a unimodal-enough f on [lo, hi]."""
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > GOLDEN_TOL * max(1e-6, 0.5 * (abs(a) + abs(b))):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
    return x1 if f1 >= f2 else x2


def _tau_log_prior(tau, sigma, priors):
    a = priors.beta1 + priors.beta2 * sigma
    if a <= 0.0:
        raise InvalidParam("share prior pseudo-count must be positive")
    return (a - 1.0) * (math.log(tau) + math.log1p(-tau)) - betaln(a, a)


def _eta_log_prior(eta, priors):
    b = priors.beta3
    return (b - 1.0) * (math.log(eta) + math.log1p(-eta)) - betaln(b, b)


def _xi_log_prior(xi, priors):
    shape = priors.beta5
    rate = priors.beta5 / priors.beta4
    return (
        shape * math.log(rate)
        - gammaln(shape)
        + (shape - 1.0) * math.log(xi)
        - rate * xi
    )


def fit_word_params(
    word,
    counts_h,
    lengths_h,
    counts_m,
    lengths_m,
    priors=DEFAULT_PRIORS,
):
    """Posterior-mode rates and spreads for one word.

    counts_* are per-paper occurrence counts; lengths_* the paper lengths in
    words. The mode over (total rate, Hamilton share, total spread, spread
    share) is found by coordinate-wise golden-section search.
    """
    xs_h = np.asarray(counts_h, dtype=np.float64)
    xs_m = np.asarray(counts_m, dtype=np.float64)
    lk_h = np.asarray(lengths_h, dtype=np.float64) / 1000.0
    lk_m = np.asarray(lengths_m, dtype=np.float64) / 1000.0
    if xs_h.shape != lk_h.shape or xs_m.shape != lk_m.shape:
        raise InvalidParam("counts and lengths must align per paper")
    if np.any(xs_h < 0) or np.any(xs_m < 0):
        raise InvalidParam("counts must be >= 0")
    if np.any(lk_h <= 0) or np.any(lk_m <= 0):
        raise InvalidParam("paper lengths must be positive")
    total = float(xs_h.sum() + xs_m.sum())
    if total == 0.0:
        raise NoOccurrences(f"word {word!r} never occurs in either author's papers")

    # fsum keeps the pooled rate independent of paper order, so the whole
    # deterministic search is permutation-invariant
    pooled_rate = total / math.fsum(lk_h.tolist() + lk_m.tolist())
    sigma_max = 10.0 * pooled_rate
    sigma_min = 1e-9 * sigma_max
    share_lo, share_hi = 1e-9, 1.0 - 1e-9
    xi_min = 1e-12

    lgx1_h = gammaln(xs_h + 1.0)
    lgx1_m = gammaln(xs_m + 1.0)

    def log_post(sigma, tau, xi, eta):
        mu_h = sigma * tau
        mu_m = sigma * (1.0 - tau)
        delta_h = math.expm1(xi * eta)
        delta_m = math.expm1(xi * (1.0 - eta))
        return math.fsum(
            [
                _author_loglik(xs_h, lk_h, lgx1_h, mu_h, delta_h),
                _author_loglik(xs_m, lk_m, lgx1_m, mu_m, delta_m),
                _tau_log_prior(tau, sigma, priors),
                _eta_log_prior(eta, priors),
                _xi_log_prior(xi, priors),
            ]
        )

    sigma, tau, xi, eta = pooled_rate, 0.5, priors.beta4, 0.5
    sigma = min(max(sigma, sigma_min), sigma_max)
    for _ in range(MAX_CYCLES):
        prev = (sigma, tau, xi, eta)
        sigma = _golden_max(lambda v: log_post(v, tau, xi, eta), sigma_min, sigma_max)
        tau = _golden_max(lambda v: log_post(sigma, v, xi, eta), share_lo, share_hi)
        xi = _golden_max(lambda v: log_post(sigma, tau, v, eta), xi_min, XI_MAX)
        eta = _golden_max(lambda v: log_post(sigma, tau, xi, v), share_lo, share_hi)
        moved = max(
            abs(sigma - prev[0]) / max(1e-12, abs(prev[0])),
            abs(tau - prev[1]),
            abs(xi - prev[2]) / max(1e-12, abs(prev[2])),
            abs(eta - prev[3]),
        )
        if moved < GOLDEN_TOL:
            break

    return NbWordModel(
        word=word,
        mu_h=sigma * tau,
        mu_m=sigma * (1.0 - tau),
        delta_h=math.expm1(xi * eta),
        delta_m=math.expm1(xi * (1.0 - eta)),
    )


def select_scoring_words(counts, vocab, min_count=10):
    """Words with at least `min_count` pooled occurrences, sorted."""
    counts = np.asarray(counts)
    if counts.ndim != 2 or counts.shape[1] != len(vocab):
        raise InvalidParam("counts matrix must have one column per word")
    pooled = counts.sum(axis=0)
    return tuple(sorted(w for j, w in enumerate(vocab) if pooled[j] >= min_count))


def fit_word_table(
    counts,
    vocab,
    is_madison,
    lengths,
    words=None,
    min_count=10,
    priors=DEFAULT_PRIORS,
    jobs=1,
):
    """Fit every scoring word over a training count matrix.

    counts: (papers, words) occurrence matrix; is_madison: boolean row mask
    (False rows are Hamilton's); lengths: per-paper word totals. Word fits
    are independent, so they can run on several threads; output order is
    always alphabetical regardless of completion order.
    """
    counts = np.asarray(counts)
    mask = np.asarray(is_madison, dtype=bool)
    lengths = np.asarray(lengths)
    if counts.shape[0] != mask.shape[0] or counts.shape[0] != lengths.shape[0]:
        raise InvalidParam("counts, author mask, and lengths must align per paper")
    col = {w: j for j, w in enumerate(vocab)}
    if words is None:
        words = select_scoring_words(counts, vocab, min_count=min_count)
    else:
        missing = [w for w in words if w not in col]
        if missing:
            raise UncoveredWord(f"words absent from vocabulary: {missing}")
        words = tuple(sorted(words))

    def fit_one(word):
        j = col[word]
        return fit_word_params(
            word,
            counts[~mask, j],
            lengths[~mask],
            counts[mask, j],
            lengths[mask],
            priors=priors,
        )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            models = list(pool.map(fit_one, words))
    else:
        models = [fit_one(word) for word in words]
    return models


def document_log_odds(
    doc_counts,
    doc_length_words,
    models,
    prior_odds=1.0,
    strict=False,
    doc_id=0,
):
    """Hamilton-to-Madison posterior log odds for one document.

    doc_counts maps word -> count. Every modeled word contributes, zero
    counts included; document words without a model are skipped unless
    strict is set. Negative totals favor Madison.
    """
    if doc_length_words < 1:
        raise InvalidParam(f"document length must be >= 1, got {doc_length_words}")
    if not prior_odds > 0.0:
        raise InvalidParam(f"prior odds must be positive, got {prior_odds}")
    by_word = {model.word: model for model in models}
    if strict:
        uncovered = sorted(w for w in doc_counts if w not in by_word)
        if uncovered:
            raise UncoveredWord(f"no model for words: {uncovered}")
    lk = doc_length_words / 1000.0
    contributions = []
    for word in sorted(by_word):
        model = by_word[word]
        x = int(doc_counts.get(word, 0))
        contrib = nb_log_pmf(x, model.mu_h * lk, model.delta_h) - nb_log_pmf(
            x, model.mu_m * lk, model.delta_m
        )
        contributions.append((word, contrib))
    prior_log_odds = math.log(prior_odds)
    total = prior_log_odds + math.fsum(c for _, c in contributions)
    return OddsReport(
        doc_id=doc_id,
        contributions=tuple(contributions),
        prior_log_odds=prior_log_odds,
        total=total,
    )


def write_mw_models_csv(models, path):
    with open(path, "w", newline="") as fh:
        fh.write("word,mu_H,mu_M,delta_H,delta_M\n")
        for model in sorted(models, key=lambda m: m.word):
            fh.write(
                f"{model.word},{model.mu_h!r},{model.mu_m!r},"
                f"{model.delta_h!r},{model.delta_m!r}\n"
            )


def write_odds_json(reports, path):
    docs = []
    for report in sorted(reports, key=lambda r: r.doc_id):
        top = sorted(
            report.contributions, key=lambda wc: (-abs(wc[1]), wc[0])
        )[:10]
        docs.append(
            {
                "doc_id": report.doc_id,
                "total": report.total,
                "prior_log_odds": report.prior_log_odds,
                "top_words": [
                    {"word": word, "contribution": contrib} for word, contrib in top
                ],
            }
        )
    with open(path, "w") as fh:
        json.dump({"documents": docs}, fh, indent=2, sort_keys=True)
        fh.write("\n")
