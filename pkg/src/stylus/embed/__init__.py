"""Document embeddings: LDA, LSA, NMF, and external-vector aggregation."""

from .factor import FactorModel, lsa_fit, nmf_fit
from .lda import LdaModel, lda_fit, lda_select_k, write_lda_json
from .vectors import (
    DocEmbedding,
    aggregate_word_vectors,
    load_embedding,
    load_word_vectors,
    write_embedding_csv,
)

__all__ = [
    "DocEmbedding",
    "FactorModel",
    "LdaModel",
    "aggregate_word_vectors",
    "lda_fit",
    "lda_select_k",
    "load_embedding",
    "load_word_vectors",
    "lsa_fit",
    "nmf_fit",
    "write_embedding_csv",
    "write_lda_json",
]
