"""Corpus ingestion: ebook parsing, labels, tokenization, word counts.

A plain-text ebook is split into papers at ``FEDERALIST No. <N>`` header
lines. Each paper's body is lowercased, tokenized, and lemmatized; the
authorship label comes from a bundled table. Word lists and labels live in
the package ``data`` directory and can be overridden with the
``STYLUS_DATA_DIR`` environment variable.
"""

import csv
import json
import os
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import LabelMismatch, MissingPaper, ParseError
from .lemmas import lemma

LABELS = ("Hamilton", "Madison", "Jay", "Disputed", "Joint")

# paper count by label for the real corpus
CENSUS = {"Hamilton": 51, "Madison": 14, "Jay": 5, "Disputed": 12, "Joint": 3}

_WORD_LIST_FILES = {
    "stopwords": "stopwords.txt",
    "function70": "function70.txt",
    "marker145": "marker145.txt",
}

_WORD_LIST_SIZES = {"function70": 70, "marker145": 145}


@dataclass(frozen=True)
class Document:
    id: int
    title: str
    raw_text: str
    tokens: tuple
    label: str


@dataclass(frozen=True)
class Corpus:
    documents: tuple
    provenance: str

    def __len__(self):
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def by_id(self, paper_id):
        for doc in self.documents:
            if doc.id == paper_id:
                return doc
        raise MissingPaper(paper_id)


@dataclass(frozen=True)
class WordList:
    kind: str
    words: frozenset


def data_dir():
    """Directory holding the bundled word lists and label table."""
    override = os.environ.get("STYLUS_DATA_DIR")
    if override:
        return Path(override)
    return Path(resources.files("stylus") / "data")


def load_word_list(kind):
    try:
        fname = _WORD_LIST_FILES[kind]
    except KeyError:
        raise ValueError(f"unknown word list kind: {kind!r}") from None
    path = data_dir() / fname
    words = frozenset(
        line.strip() for line in path.read_text().splitlines() if line.strip()
    )
    want = _WORD_LIST_SIZES.get(kind)
    if want is not None and len(words) != want:
        raise ParseError(f"{fname} has {len(words)} entries, expected {want}")
    return WordList(kind=kind, words=words)


def load_labels():
    """Paper-number to label mapping from the bundled table."""
    path = data_dir() / "labels.csv"
    table = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            label = row["label"]
            if label not in LABELS:
                raise LabelMismatch(f"unknown label {label!r}")
            table[int(row["paper_id"])] = label
    return table


_TOKEN_SPLIT = re.compile(r"[^a-z']+")


def tokenize(raw_text):
    """Lowercase word tokens; contractions survive as single tokens."""
    out = []
    for piece in _TOKEN_SPLIT.split(raw_text.lower()):
        if piece.strip("'"):
            out.append(piece)
    return out


def lemmatize(tokens):
    return [lemma(t) for t in tokens]


def word_counts(doc, vocab):
    """Occurrence count of each vocab word in the document's token stream."""
    tokens = doc.tokens if hasattr(doc, "tokens") else doc
    index = {w: j for j, w in enumerate(vocab)}
    counts = np.zeros(len(index), dtype=np.int64)
    for t in tokens:
        j = index.get(t)
        if j is not None:
            counts[j] += 1
    return counts


_HEADER = re.compile(r"^\s*FEDERALIST\.?\s+No\.?\s+(\d+)\.?\s*$", re.IGNORECASE)
_GREETING = "to the people of the state of new york"
_END_MARKERS = ("*** end", "end of the project gutenberg")


def _is_signature(line):
    return line.strip().rstrip(".:,;").casefold() == "publius"


def _split_sections(text):
    """(paper number, section lines) pairs in file order."""
    lines = text.splitlines()
    sections = []
    current = None
    for line in lines:
        low = line.strip().casefold()
        if low.startswith(_END_MARKERS):
            break
        m = _HEADER.match(line)
        if m:
            current = (int(m.group(1)), [])
            sections.append(current)
        elif current is not None:
            current[1].append(line)
    return sections


def _section_body(section_lines):
    """Title and body text; front matter before the greeting is dropped."""
    title = ""
    title_at = -1
    for i, line in enumerate(section_lines):
        if line.strip():
            title = line.strip()
            title_at = i
            break
    start = title_at + 1
    for i, line in enumerate(section_lines):
        if line.strip().rstrip(":.").casefold() == _GREETING:
            start = i + 1
            break
    body = [ln for ln in section_lines[start:] if not _is_signature(ln)]
    return title, "\n".join(body).strip()


def parse_corpus(source, label_table=None):
    """Parse the ebook at ``source`` into a labeled 85-paper corpus."""
    check_census = label_table is None
    if label_table is None:
        label_table = load_labels()
    text = Path(source).read_text(encoding="utf-8", errors="replace")
    sections = _split_sections(text)
    if not sections:
        raise ParseError(f"no paper headers found in {source}")

    by_id = {}
    for number, body_lines in sections:
        if number in by_id:
            if number == 70:
                continue  # two versions exist; the first one wins
            raise ParseError(f"paper {number} appears more than once")
        by_id[number] = body_lines

    for n in range(1, 86):
        if n not in by_id:
            raise MissingPaper(n)
    if len(by_id) != 85:
        extras = sorted(set(by_id) - set(range(1, 86)))
        raise ParseError(f"unexpected paper numbers: {extras}")

    documents = []
    for n in range(1, 86):
        title, raw = _section_body(by_id[n])
        tokens = tuple(lemmatize(tokenize(raw)))
        if not tokens:
            raise ParseError(f"paper {n} has no tokens after preprocessing")
        try:
            label = label_table[n]
        except KeyError:
            raise LabelMismatch(f"no label for paper {n}") from None
        documents.append(
            Document(id=n, title=title, raw_text=raw, tokens=tokens, label=label)
        )

    if check_census:
        seen = {name: 0 for name in LABELS}
        for doc in documents:
            seen[doc.label] += 1
        if seen != CENSUS:
            raise LabelMismatch(f"label census {seen} != expected {CENSUS}")

    return Corpus(documents=tuple(documents), provenance=str(source))


def write_corpus_json(corpus, path):
    payload = [
        {"id": d.id, "title": d.title, "label": d.label, "tokens": list(d.tokens)}
        for d in corpus.documents
    ]
    with open(path, "w") as fh:
        json.dump(payload, fh, separators=(",", ":"))


def read_corpus_json(path):
    with open(path) as fh:
        payload = json.load(fh)
    documents = tuple(
        Document(
            id=entry["id"],
            title=entry["title"],
            raw_text="",
            tokens=tuple(entry["tokens"]),
            label=entry["label"],
        )
        for entry in payload
    )
    return Corpus(documents=documents, provenance=str(path))
