"""Bundled data files stay in sync with their raw sources."""

import csv

from raw_word_tables import (
    AUTHORSHIP,
    MOSTELLER_CORE,
    MOSTELLER_EXTRA,
    TM_STOPWORDS,
    marker_lemmas,
)

from stylus.corpus import data_dir, load_labels, load_word_list
from stylus.lemmas import lemma


def test_stopwords_verbatim():
    wl = load_word_list("stopwords")
    assert wl.words == frozenset(TM_STOPWORDS)
    assert len(wl.words) == 174


def test_function70_verbatim():
    wl = load_word_list("function70")
    assert wl.words == frozenset(MOSTELLER_CORE)
    assert len(wl.words) == 70


def test_marker145_is_lemma_closure():
    wl = load_word_list("marker145")
    assert wl.words == frozenset(marker_lemmas(lemma))
    assert len(wl.words) == 145
    # the two archaic prepositions stay distinct from their modern forms
    for w in ("upon", "on", "whilst", "while"):
        assert w in wl.words


def test_marker145_file_sorted():
    lines = (data_dir() / "marker145.txt").read_text().split()
    assert lines == sorted(lines)


def test_labels_match_source_table():
    table = load_labels()
    assert table == AUTHORSHIP
    assert len(table) == 85


def test_labels_csv_schema():
    with open(data_dir() / "labels.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["paper_id", "label"]
    assert len(rows) == 86


def test_marker_words_all_self_lemmas():
    for w in load_word_list("marker145").words:
        assert lemma(w) == w, w
