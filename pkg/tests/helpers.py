"""Shared fixtures builders for the test suite."""

import random

from raw_word_tables import AUTHORSHIP

_ATTRIBUTION = {
    "Hamilton": "HAMILTON",
    "Madison": "MADISON",
    "Jay": "JAY",
    "Disputed": "HAMILTON OR MADISON",
    "Joint": "HAMILTON AND MADISON",
}

_COMMON = (
    "the government of union must derive power from consent and the states "
    "shall remain secure under a constitution framed with wisdom"
).split()

_BY_LABEL = {
    "Hamilton": "upon there kind national vigor energy executive".split(),
    "Madison": "whilst on consequently although department republic".split(),
    "Jay": "treaty foreign nations prudence counsel".split(),
    "Disputed": "whilst on consequently federal house".split(),
    "Joint": "whilst upon confederacy ancient greece".split(),
}


def paper_body(n, label, rng, extra=()):
    words = list(_COMMON) + _BY_LABEL[label] * 3 + list(extra)
    body = [words[rng.randrange(len(words))] for _ in range(140)]
    out = []
    for i in range(0, len(body), 14):
        out.append(" ".join(body[i : i + 14]) + ".")
    return "\n".join(out)


def make_ebook(
    path,
    *,
    duplicate_70=True,
    missing=(),
    duplicate_other=None,
    seed=7,
):
    """Write a synthetic 85-paper ebook in the Gutenberg layout."""
    rng = random.Random(seed)
    lines = [
        "The Project Gutenberg eBook of The Federalist Papers",
        "",
        "This preamble must never reach the token stream: preambleword.",
        "",
    ]

    def emit(n, extra=()):
        label = AUTHORSHIP[n]
        lines.extend(
            [
                f"FEDERALIST No. {n}",
                "",
                f"Concerning Subject Number {n}",
                "",
                "From the New York Packet.",
                "Tuesday, November 20, 1787.",
                "",
                _ATTRIBUTION[label],
                "",
                "To the People of the State of New York:",
                "",
                paper_body(n, label, rng, extra),
                "",
                "PUBLIUS",
                "",
            ]
        )

    for n in range(1, 86):
        if n in missing:
            continue
        emit(n)
        if n == 70 and duplicate_70:
            emit(70, extra=["secondversion"] * 5)
        if duplicate_other is not None and n == duplicate_other:
            emit(n)

    lines.extend(
        [
            "*** END OF THE PROJECT GUTENBERG EBOOK THE FEDERALIST PAPERS ***",
            "",
            "License text with gutenbergtailword that must not be tokenized.",
        ]
    )
    path.write_text("\n".join(lines))
    return path
