"""Continuous document embeddings: aggregation of word vectors and file I/O."""

import csv
import math
from dataclasses import dataclass

import numpy as np

from ..errors import (
    DimensionMismatch,
    MalformedRow,
    MissingDoc,
    NonFiniteValue,
)


@dataclass(frozen=True)
class DocEmbedding:
    values: np.ndarray
    method: str
    doc_ids: tuple


def aggregate_word_vectors(x_norm, word_vectors):
    """Z_D = X_tilde . Z_W over a row-normalized count matrix."""
    Zw = np.asarray(word_vectors, dtype=np.float64)
    if Zw.ndim != 2 or Zw.shape[0] != x_norm.values.shape[1]:
        raise DimensionMismatch(
            f"word_vectors shape {Zw.shape} does not align with "
            f"{x_norm.values.shape[1]} vocabulary words"
        )
    values = x_norm.values @ Zw
    return DocEmbedding(
        values=values, method="aggregate", doc_ids=tuple(x_norm.parent.doc_ids)
    )


def load_word_vectors(path, vocab):
    """Word vectors from `word v1 ... vd` lines; OOV rows are zero.

    Returns (N x d matrix aligned to vocab, tuple of vocab words missing
    from the file).
    """
    table = {}
    d = None
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.split()
            if not parts:
                continue
            word, values = parts[0], parts[1:]
            if d is None:
                d = len(values)
            if len(values) != d or d == 0:
                raise MalformedRow(f"{path}:{lineno}: expected {d} values")
            try:
                vec = [float(v) for v in values]
            except ValueError:
                raise MalformedRow(f"{path}:{lineno}: non-numeric value") from None
            if not all(math.isfinite(v) for v in vec):
                raise NonFiniteValue(f"{path}:{lineno}: non-finite value")
            table[word] = vec
    if d is None:
        raise MalformedRow(f"{path}: no vectors found")
    matrix = np.zeros((len(vocab), d), dtype=np.float64)
    missing = []
    for i, w in enumerate(vocab):
        vec = table.get(w)
        if vec is None:
            missing.append(w)
        else:
            matrix[i] = vec
    return matrix, tuple(missing)


def load_embedding(path, expected_docs):
    """Embedding rows keyed by paper id, returned in expected_docs order."""
    expected = [int(x) for x in expected_docs]
    rows = {}
    width = None
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row:
                continue
            head = row[0].strip()
            if lineno == 1 and not _is_int(head):
                continue  # header row
            if not _is_int(head):
                raise MalformedRow(f"{path}:{lineno}: bad doc id {head!r}")
            doc_id = int(head)
            if doc_id in rows:
                raise MalformedRow(f"{path}:{lineno}: duplicate doc id {doc_id}")
            if width is None:
                width = len(row) - 1
                if width < 1:
                    raise MalformedRow(f"{path}:{lineno}: no value columns")
            elif len(row) - 1 != width:
                raise MalformedRow(f"{path}:{lineno}: expected {width} values")
            try:
                vec = [float(v) for v in row[1:]]
            except ValueError:
                raise MalformedRow(f"{path}:{lineno}: non-numeric value") from None
            if not all(math.isfinite(v) for v in vec):
                raise NonFiniteValue(f"{path}:{lineno}: non-finite value")
            rows[doc_id] = vec

    for doc_id in expected:
        if doc_id not in rows:
            raise MissingDoc(doc_id)
    extra = set(rows) - set(expected)
    if extra:
        raise MalformedRow(f"{path}: unexpected doc ids {sorted(extra)}")

    values = np.array([rows[i] for i in expected], dtype=np.float64)
    return DocEmbedding(values=values, method="file", doc_ids=tuple(expected))


def _is_int(text):
    try:
        int(text)
        return True
    except ValueError:
        return False


def write_embedding_csv(embedding, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        p = embedding.values.shape[1]
        w.writerow(["doc_id", *(f"e{j + 1}" for j in range(p))])
        for doc_id, row in zip(embedding.doc_ids, embedding.values):
            w.writerow([doc_id, *(repr(float(v)) for v in row)])
