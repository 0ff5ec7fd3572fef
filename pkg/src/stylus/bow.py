"""Term-document matrices: the three word-set variants and row normalization.

Type1 drops stopwords, Type2 keeps every lemma, Type3 restricts columns to
the 145 marker words. Columns are sorted lexicographically and all-zero
columns are dropped, so a matrix serializes byte-identically across runs.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .corpus import load_labels, load_word_list, word_counts
from .errors import EmptyVocabulary, LabelMismatch

INPUT_TYPES = ("Type1", "Type2", "Type3")

TRAIN_LABELS = ("Hamilton", "Madison")


@dataclass(frozen=True)
class TermDocMatrix:
    counts: np.ndarray
    doc_ids: tuple
    vocab: tuple
    input_type: str

    @property
    def shape(self):
        return self.counts.shape


@dataclass(frozen=True)
class RowNormalizedMatrix:
    values: np.ndarray
    parent: TermDocMatrix
    zero_rows: tuple


def build_tdm(corpus, input_type):
    """Count matrix over the corpus vocabulary selected by ``input_type``."""
    if input_type not in INPUT_TYPES:
        raise ValueError(f"input_type must be one of {INPUT_TYPES}")

    seen = set()
    for doc in corpus:
        seen.update(doc.tokens)

    if input_type == "Type1":
        stop = load_word_list("stopwords").words
        vocab = sorted(seen - stop)
    elif input_type == "Type2":
        vocab = sorted(seen)
    else:
        markers = load_word_list("marker145").words
        vocab = sorted(seen & markers)

    if not vocab:
        raise EmptyVocabulary(f"no {input_type} word survives filtering")

    docs = list(corpus)
    counts = np.zeros((len(docs), len(vocab)), dtype=np.int64)
    for i, doc in enumerate(docs):
        counts[i] = word_counts(doc, vocab)

    keep = counts.sum(axis=0) > 0
    counts = counts[:, keep]
    vocab = tuple(w for w, k in zip(vocab, keep) if k)
    if not vocab:
        raise EmptyVocabulary(f"no {input_type} word occurs in the corpus")

    return TermDocMatrix(
        counts=counts,
        doc_ids=tuple(d.id for d in docs),
        vocab=vocab,
        input_type=input_type,
    )


def row_normalize(tdm):
    counts = tdm.counts.astype(np.float64)
    sums = counts.sum(axis=1)
    zero = sums == 0
    safe = np.where(zero, 1.0, sums)
    values = counts / safe[:, None]
    return RowNormalizedMatrix(
        values=values,
        parent=tdm,
        zero_rows=tuple(int(i) for i in np.flatnonzero(zero)),
    )


def _subset(tdm, rows):
    return TermDocMatrix(
        counts=tdm.counts[rows],
        doc_ids=tuple(tdm.doc_ids[i] for i in rows),
        vocab=tdm.vocab,
        input_type=tdm.input_type,
    )


def split_train_test(tdm, label_table=None):
    """(train, test, joint) row subsets: known single authors, Disputed, Joint."""
    if label_table is None:
        label_table = load_labels()
    train, test, joint = [], [], []
    for i, doc_id in enumerate(tdm.doc_ids):
        try:
            label = label_table[doc_id]
        except KeyError:
            raise LabelMismatch(f"no label for paper {doc_id}") from None
        if label in TRAIN_LABELS:
            train.append(i)
        elif label == "Disputed":
            test.append(i)
        elif label == "Joint":
            joint.append(i)
    return _subset(tdm, train), _subset(tdm, test), _subset(tdm, joint)


def madison_indicator(doc_ids, label_table=None):
    """0/1 vector over doc_ids: 1 for Madison, 0 for Hamilton."""
    if label_table is None:
        label_table = load_labels()
    out = np.zeros(len(doc_ids), dtype=np.int64)
    for i, doc_id in enumerate(doc_ids):
        label = label_table.get(doc_id)
        if label not in TRAIN_LABELS:
            raise LabelMismatch(
                f"paper {doc_id} has label {label!r}, expected one of {TRAIN_LABELS}"
            )
        out[i] = 1 if label == "Madison" else 0
    return out


def write_tdm_csv(tdm, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["doc_id", *tdm.vocab])
        for doc_id, row in zip(tdm.doc_ids, tdm.counts):
            w.writerow([doc_id, *(int(c) for c in row)])


def read_tdm_csv(path, input_type="Type2"):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    vocab = tuple(rows[0][1:])
    doc_ids = tuple(int(r[0]) for r in rows[1:])
    counts = np.array(
        [[int(c) for c in r[1:]] for r in rows[1:]], dtype=np.int64
    ).reshape(len(doc_ids), len(vocab))
    return TermDocMatrix(
        counts=counts, doc_ids=doc_ids, vocab=vocab, input_type=input_type
    )
