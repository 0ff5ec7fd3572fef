"""Stylometric authorship attribution toolkit.

Pipeline stages: corpus ingestion, term-document matrices, document
embeddings (topic model, truncated SVD, nonnegative factorization, word
vector aggregation), discriminative word screening, sparse logistic and
sum-of-trees probit classifiers, per-word rate models with posterior log
odds, and leave-one-out evaluation with threshold selection.
"""

__version__ = "0.1.0"
