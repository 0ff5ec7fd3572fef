"""Discriminative-word screening between two author pools.

Per-word significance comes from an exact two-sided binomial allocation
test. On top of the p-values sit the Higher Criticism statistic (the
truncated, thresholded variant), an HC-based document distance with an
attribution rule, and BH / Bonferroni selection.
"""

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTotals, EmptyInput, InvalidParam
from .kernels import get as get_kernels

# smallest positive double: p-values stay inside (0, 1]
_P_FLOOR = 5e-324

_Q_CLAMP = 1e-12


@dataclass(frozen=True)
class PValueTable:
    words: tuple
    p: np.ndarray
    m_w: np.ndarray
    q_w: np.ndarray


@dataclass(frozen=True)
class HcResult:
    statistic: float
    i_star: int
    t_hc: float
    selected: tuple
    gamma0: float


@dataclass(frozen=True)
class HcAttribution:
    author: str
    diff: float
    d_hamilton: float
    d_madison: float


def _leave_word_out_q(x1, x2, t1, t2):
    m = x1 + x2
    denom = t1 + t2 - m
    if denom <= 0:
        raise DegenerateTotals(
            f"pooled totals {t1}+{t2} leave no other tokens for word counts "
            f"{x1}+{x2}"
        )
    q = (t1 - x1) / denom
    return min(max(q, _Q_CLAMP), 1.0 - _Q_CLAMP)


def binomial_pvalue(count_in_d1, count_in_d2, total_d1, total_d2):
    """Exact two-sided allocation p-value for one word.

    Under the null the word's m = x1 + x2 occurrences fall into pool 1
    with probability q estimated from all OTHER words' tokens.
    """
    x1, x2, t1, t2 = (
        int(count_in_d1), int(count_in_d2), int(total_d1), int(total_d2),
    )
    if x1 < 0 or x2 < 0 or x1 > t1 or x2 > t2:
        raise InvalidParam(f"counts ({x1},{x2}) exceed totals ({t1},{t2})")
    m = x1 + x2
    if m < 1:
        raise InvalidParam("word does not occur in either pool")
    q = _leave_word_out_q(x1, x2, t1, t2)
    p = float(get_kernels().binom_two_sided(m, q, x1))
    return min(max(p, _P_FLOOR), 1.0)


def pvalue_table(tdm, group1, group2):
    """Allocation p-values per word between two pooled document groups."""
    g1, g2 = list(group1), list(group2)
    if not g1 or not g2:
        raise EmptyInput("both groups must be nonempty")
    if set(g1) & set(g2):
        raise InvalidParam("groups must be disjoint")
    pos = {doc_id: i for i, doc_id in enumerate(tdm.doc_ids)}
    rows1 = [pos[d] for d in g1]
    rows2 = [pos[d] for d in g2]
    x1 = tdm.counts[rows1].sum(axis=0).astype(np.int64)
    x2 = tdm.counts[rows2].sum(axis=0).astype(np.int64)
    t1 = int(x1.sum())
    t2 = int(x2.sum())

    keep = np.flatnonzero(x1 + x2 >= 1)
    words = tuple(tdm.vocab[j] for j in keep)
    ms = (x1[keep] + x2[keep]).astype(np.int64)
    qs = np.empty(len(keep), dtype=np.float64)
    for i, j in enumerate(keep):
        qs[i] = _leave_word_out_q(int(x1[j]), int(x2[j]), t1, t2)
    ps = np.asarray(
        get_kernels().binom_two_sided_batch(ms, qs, x1[keep].astype(np.int64)),
        dtype=np.float64,
    )
    ps = np.clip(ps, _P_FLOOR, 1.0)
    return PValueTable(words=words, p=ps, m_w=ms, q_w=qs)


def hc_statistic(p_values, words=None, gamma0=0.2):
    """Truncated HC maximization; ties sort by word for a stable i*."""
    p = np.asarray(p_values, dtype=np.float64)
    if p.size == 0:
        raise EmptyInput("no p-values")
    if words is None:
        words = tuple(range(p.size))
    words = tuple(words)
    if len(words) != p.size:
        raise InvalidParam("words and p_values lengths differ")

    N = p.size
    order = sorted(range(N), key=lambda j: (p[j], words[j]))
    imax = int(math.floor(gamma0 * N))
    best = -math.inf
    i_star = 0
    t_hc = math.nan
    sqrt_n = math.sqrt(N)
    for i in range(1, imax + 1):
        pi = float(p[order[i - 1]])
        if pi < 1.0 / N:
            continue
        frac = i / N
        stat = sqrt_n * (frac - pi) / math.sqrt(frac * (1.0 - frac))
        if stat > best:
            best = stat
            i_star = i
            t_hc = pi
    if i_star == 0:
        return HcResult(
            statistic=-math.inf, i_star=0, t_hc=math.nan, selected=(),
            gamma0=gamma0,
        )
    selected = tuple(words[j] for j in order if p[j] <= t_hc)
    return HcResult(
        statistic=best, i_star=i_star, t_hc=t_hc, selected=selected,
        gamma0=gamma0,
    )


def hc_distance(doc_counts, pool_counts, vocab, gamma0=0.2):
    """HC statistic of the word-allocation p-values: document vs pool."""
    x1 = np.asarray(doc_counts, dtype=np.int64)
    x2 = np.asarray(pool_counts, dtype=np.int64)
    if not (len(x1) == len(x2) == len(vocab)):
        raise InvalidParam("count vectors must align with vocab")
    t1 = int(x1.sum())
    t2 = int(x2.sum())
    keep = np.flatnonzero(x1 + x2 >= 1)
    qs = np.empty(len(keep), dtype=np.float64)
    for i, j in enumerate(keep):
        qs[i] = _leave_word_out_q(int(x1[j]), int(x2[j]), t1, t2)
    ps = np.asarray(
        get_kernels().binom_two_sided_batch(
            (x1[keep] + x2[keep]).astype(np.int64), qs, x1[keep].astype(np.int64)
        ),
        dtype=np.float64,
    )
    ps = np.clip(ps, _P_FLOOR, 1.0)
    words = tuple(vocab[j] for j in keep)
    return hc_statistic(ps, words=words, gamma0=gamma0).statistic


def attribute_by_hc(doc_counts, hamilton_pool, madison_pool, vocab, gamma0=0.2):
    """Assign the closer author profile; diff = d(.,H) - d(.,M)."""
    d_h = hc_distance(doc_counts, hamilton_pool, vocab, gamma0=gamma0)
    d_m = hc_distance(doc_counts, madison_pool, vocab, gamma0=gamma0)
    author = "Madison" if d_m < d_h else "Hamilton"
    return HcAttribution(
        author=author, diff=d_h - d_m, d_hamilton=d_h, d_madison=d_m
    )


def bh_select(p_values, fdr, words=None):
    """Benjamini-Hochberg step-up selection at the given FDR."""
    p = np.asarray(p_values, dtype=np.float64)
    if words is None:
        words = tuple(range(p.size))
    if not 0 < fdr < 1:
        raise InvalidParam(f"fdr must be in (0,1), got {fdr}")
    N = p.size
    if N == 0:
        return ()
    order = np.argsort(p, kind="stable")
    cutoff = None
    for rank, j in enumerate(order, start=1):
        if p[j] <= rank * fdr / N:
            cutoff = p[j]
    if cutoff is None:
        return ()
    return tuple(words[j] for j in range(N) if p[j] <= cutoff)


def bonferroni_select(p_values, alpha, words=None):
    p = np.asarray(p_values, dtype=np.float64)
    if words is None:
        words = tuple(range(p.size))
    if not 0 < alpha < 1:
        raise InvalidParam(f"alpha must be in (0,1), got {alpha}")
    N = p.size
    if N == 0:
        return ()
    return tuple(words[j] for j in range(N) if p[j] <= alpha / N)


def write_screen_report(path, table, hc, bh_words, bonferroni_words, params):
    payload = {
        "params": dict(params),
        "words": list(table.words),
        "p_values": [float(v) for v in table.p],
        "hc_statistic": hc.statistic if math.isfinite(hc.statistic) else None,
        "t_hc": None if math.isnan(hc.t_hc) else hc.t_hc,
        "hc_selected": list(hc.selected),
        "bh_selected": list(bh_words),
        "bonferroni_selected": list(bonferroni_words),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, separators=(",", ":"))


def write_wordcloud_csv(path, table):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["word", "weight"])
        for word, p in zip(table.words, table.p):
            w.writerow([word, repr(-math.log10(float(p)))])
