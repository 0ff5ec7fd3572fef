"""Shared prediction record and report writer for both classifiers."""

import csv
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Prediction:
    doc_id: int
    prob_madison: float
    lo95: float = None
    hi95: float = None
    draws: np.ndarray = None


def write_predictions_csv(predictions, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["doc_id", "prob_madison", "lo95", "hi95"])
        for pred in predictions:
            w.writerow(
                [
                    pred.doc_id,
                    repr(float(pred.prob_madison)),
                    "" if pred.lo95 is None else repr(float(pred.lo95)),
                    "" if pred.hi95 is None else repr(float(pred.hi95)),
                ]
            )
