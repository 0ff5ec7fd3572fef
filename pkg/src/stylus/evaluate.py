"""Cross-validation, threshold selection, and density summaries.

Leave-one-out evaluation refits the classifier once per held-out row with a
fold-derived seed, so results never depend on scheduling order. Threshold
selectors scan the midpoints between consecutive sorted probabilities plus
the {0, 1} endpoints. Densities are Gaussian-kernel estimates with the
Silverman bandwidth.
"""

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSample, InvalidParam, SingleClass

FIXED_THRESHOLD = 0.3
KDE_GRID_SIZE = 512
KDE_TAIL_BANDWIDTHS = 3.0


@dataclass(frozen=True)
class LoocvResult:
    method: str
    doc_ids: tuple
    probs: np.ndarray
    labels: np.ndarray

    @property
    def l2_loss(self):
        return float(np.mean((self.probs - self.labels) ** 2))


@dataclass(frozen=True)
class ThresholdReport:
    roc_threshold: float
    f1_threshold: float
    fixed_threshold: float
    errors: dict  # threshold name -> classification error
    confusion: dict  # threshold name -> {tp, fp, tn, fn}


@dataclass(frozen=True)
class KdeCurve:
    grid: np.ndarray
    density: np.ndarray
    bandwidth: float


@dataclass(frozen=True)
class DensityCurve:
    grid: np.ndarray
    hamilton_density: np.ndarray
    madison_density: np.ndarray
    disputed_marks: tuple


def _fold_error(exc, fold, doc_id):
    try:
        return type(exc)(f"fold {fold} (doc_id {doc_id}): {exc}")
    except Exception:  # exception type with a non-message constructor
        return exc


def loocv(
    features,
    labels,
    fit,
    predict,
    seed=0,
    jobs=1,
    doc_ids=None,
    method="model",
    fit_kwargs=None,
):
    """Hold out each row in turn; fit on the rest with seed + fold index.

    `fit(X, y, seed=...) -> model` and `predict(model, X) -> [Prediction]`
    may be either classifier's pair or any conforming substitute.
    """
    X = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64).ravel()
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise InvalidParam("features and labels must align per row")
    n = X.shape[0]
    if n < 3:
        raise InvalidParam(f"leave-one-out needs at least 3 rows, got {n}")
    if doc_ids is None:
        doc_ids = tuple(range(n))
    else:
        doc_ids = tuple(int(d) for d in doc_ids)
        if len(doc_ids) != n or len(set(doc_ids)) != n:
            raise InvalidParam("doc_ids must be unique, one per row")
    fit_kwargs = dict(fit_kwargs or {})

    keep = np.arange(n)

    def run_fold(i):
        rows = np.delete(keep, i)
        model = fit(X[rows], y[rows], seed=seed + i, **fit_kwargs)
        return predict(model, X[i : i + 1])[0].prob_madison

    probs = np.empty(n, dtype=np.float64)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_fold, i) for i in range(n)]
            for i, future in enumerate(futures):
                try:
                    probs[i] = future.result()
                except Exception as exc:
                    raise _fold_error(exc, i, doc_ids[i]) from exc
    else:
        for i in range(n):
            try:
                probs[i] = run_fold(i)
            except Exception as exc:
                raise _fold_error(exc, i, doc_ids[i]) from exc

    return LoocvResult(method=method, doc_ids=doc_ids, probs=probs, labels=y)


def _candidates(probs):
    distinct = np.unique(np.asarray(probs, dtype=np.float64))
    mids = (distinct[:-1] + distinct[1:]) / 2.0
    return np.unique(np.concatenate([[0.0], mids, [1.0]]))


def _tallies(probs, labels, threshold):
    pred = np.asarray(probs) > threshold
    y = np.asarray(labels).astype(bool)
    tp = int(np.sum(pred & y))
    fp = int(np.sum(pred & ~y))
    tn = int(np.sum(~pred & ~y))
    fn = int(np.sum(~pred & y))
    return tp, fp, tn, fn


def youden_threshold(probs, labels):
    """Threshold maximizing recall + specificity - 1; ties break low."""
    y = np.asarray(labels, dtype=np.float64)
    if y.min() == y.max():
        raise SingleClass("both classes are needed to score specificity")
    best_t = None
    best_j = -math.inf
    for t in _candidates(probs):
        tp, fp, tn, fn = _tallies(probs, y, t)
        j = tp / (tp + fn) + tn / (tn + fp) - 1.0
        if j > best_j:
            best_j = j
            best_t = float(t)
    return best_t


def f1_threshold(probs, labels):
    """Threshold maximizing the precision/recall harmonic mean.

    Unlike the recall+specificity rule this stays defined when every label
    is positive (precision alone drives it), so no class check is made.
    """
    y = np.asarray(labels, dtype=np.float64)
    best_t = None
    best_f1 = -math.inf
    for t in _candidates(probs):
        tp, fp, _, fn = _tallies(probs, y, t)
        denom = 2 * tp + fp + fn
        f1 = 2.0 * tp / denom if denom > 0 else 0.0
        if f1 > best_f1:
            best_f1 = f1
            best_t = float(t)
    return best_t


def classification_error(probs, labels, threshold):
    pred = np.asarray(probs, dtype=np.float64) > threshold
    y = np.asarray(labels, dtype=np.float64).astype(bool)
    return float(np.mean(pred != y))


def threshold_report(probs, labels, fixed=FIXED_THRESHOLD):
    thresholds = {
        "roc": youden_threshold(probs, labels),
        "f1": f1_threshold(probs, labels),
        "fixed": float(fixed),
    }
    errors = {}
    confusion = {}
    for name, t in thresholds.items():
        tp, fp, tn, fn = _tallies(probs, labels, t)
        errors[name] = classification_error(probs, labels, t)
        confusion[name] = {"tp": tp, "fp": fp, "tn": tn, "fn": fn}
    return ThresholdReport(
        roc_threshold=thresholds["roc"],
        f1_threshold=thresholds["f1"],
        fixed_threshold=thresholds["fixed"],
        errors=errors,
        confusion=confusion,
    )


def silverman_bandwidth(points):
    x = np.asarray(points, dtype=np.float64)
    n = x.shape[0]
    if n < 2:
        raise InvalidParam(f"bandwidth needs at least 2 points, got {n}")
    sd = float(np.std(x, ddof=1))
    q1, q3 = np.percentile(x, [25.0, 75.0])
    iqr = float(q3 - q1)
    spread = min(sd, iqr / 1.34) if iqr > 0.0 else sd
    if spread == 0.0:
        raise DegenerateSample("all points identical; no finite-bandwidth density")
    return 0.9 * spread * n ** (-0.2)


def _gaussian_density(points, grid, h):
    z = (grid[:, None] - points[None, :]) / h
    return np.exp(-0.5 * z * z).sum(axis=1) / (len(points) * h * math.sqrt(2.0 * math.pi))


def kde(probs, bandwidth=None):
    """Gaussian-kernel density on a 512-point grid spanning the sample
    plus three bandwidths on either side."""
    x = np.asarray(probs, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] < 2:
        raise InvalidParam("density estimation needs a flat sample of >= 2 points")
    h = float(bandwidth) if bandwidth is not None else silverman_bandwidth(x)
    if not h > 0.0:
        raise InvalidParam(f"bandwidth must be positive, got {h}")
    lo = float(x.min()) - KDE_TAIL_BANDWIDTHS * h
    hi = float(x.max()) + KDE_TAIL_BANDWIDTHS * h
    grid = np.linspace(lo, hi, KDE_GRID_SIZE)
    return KdeCurve(grid=grid, density=_gaussian_density(x, grid, h), bandwidth=h)


def density_curve(hamilton_probs, madison_probs, disputed_probs=()):
    """Both authors' probability densities on one shared grid."""
    xh = np.asarray(hamilton_probs, dtype=np.float64)
    xm = np.asarray(madison_probs, dtype=np.float64)
    hh = silverman_bandwidth(xh)
    hm = silverman_bandwidth(xm)
    lo = min(xh.min() - KDE_TAIL_BANDWIDTHS * hh, xm.min() - KDE_TAIL_BANDWIDTHS * hm)
    hi = max(xh.max() + KDE_TAIL_BANDWIDTHS * hh, xm.max() + KDE_TAIL_BANDWIDTHS * hm)
    grid = np.linspace(lo, hi, KDE_GRID_SIZE)
    return DensityCurve(
        grid=grid,
        hamilton_density=_gaussian_density(xh, grid, hh),
        madison_density=_gaussian_density(xm, grid, hm),
        disputed_marks=tuple(float(p) for p in disputed_probs),
    )


def write_eval_report(results, reports, path):
    """results: LoocvResult list; reports: method -> ThresholdReport."""
    methods = []
    for result in results:
        entry = {
            "method": result.method,
            "l2_loss": result.l2_loss,
            "per_doc": [
                {"doc_id": d, "prob_madison": float(p), "label": int(l)}
                for d, p, l in zip(result.doc_ids, result.probs, result.labels)
            ],
        }
        report = reports.get(result.method)
        if report is not None:
            entry["thresholds"] = {
                "roc": report.roc_threshold,
                "f1": report.f1_threshold,
                "fixed": report.fixed_threshold,
            }
            entry["errors"] = report.errors
            entry["confusion"] = report.confusion
        methods.append(entry)
    with open(path, "w") as fh:
        json.dump({"methods": methods}, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_density_csv(curve, path):
    marks = list(curve.disputed_marks)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["grid", "hamilton_density", "madison_density", "disputed_mark"])
        for i in range(len(curve.grid)):
            w.writerow(
                [
                    repr(float(curve.grid[i])),
                    repr(float(curve.hamilton_density[i])),
                    repr(float(curve.madison_density[i])),
                    repr(marks[i]) if i < len(marks) else "",
                ]
            )
