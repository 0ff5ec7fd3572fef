"""Dictionary-first lemmatization with conservative suffix rules.

The exception table handles irregular forms, function-word merges, and words
the suffix rules would mangle; the rules cover regular plural, past, and
gerund inflection. The composition is idempotent: rule outputs are re-looked
up in the table, and every table value is itself a fixed point.
"""

# Irregulars, function-word merges, protections, and frequent forms whose
# regular-rule image would split a lemma. Keys and values are lowercase.
EXCEPTIONS = {
    # articles, determiners, pronouns
    "an": "a",
    "those": "that",
    "these": "this",
    "their": "they",
    "theirs": "they",
    "them": "they",
    "its": "it",
    "my": "i",
    "mine": "i",
    "our": "we",
    "ours": "we",
    "us": "we",
    # comparatives and modals
    "more": "much",
    "most": "much",
    "better": "good",
    "best": "good",
    "worse": "bad",
    "worst": "bad",
    "would": "will",
    "should": "shall",
    # be / have / do
    "am": "be",
    "is": "be",
    "are": "be",
    "was": "be",
    "were": "be",
    "been": "be",
    "being": "be",
    "has": "have",
    "had": "have",
    "having": "have",
    "does": "do",
    "did": "do",
    "done": "do",
    "doing": "do",
    # irregular verbs
    "went": "go",
    "gone": "go",
    "going": "go",
    "came": "come",
    "coming": "come",
    "said": "say",
    "made": "make",
    "making": "make",
    "given": "give",
    "gave": "give",
    "giving": "give",
    "taken": "take",
    "took": "take",
    "taking": "take",
    "known": "know",
    "knew": "know",
    "knowing": "know",
    "seen": "see",
    "saw": "see",
    "found": "find",
    "held": "hold",
    "brought": "bring",
    "thought": "think",
    "chosen": "choose",
    "chose": "choose",
    "choosing": "choose",
    "drawn": "draw",
    "drew": "draw",
    "shown": "show",
    "grown": "grow",
    "grew": "grow",
    "became": "become",
    "becoming": "become",
    "paid": "pay",
    "laid": "lay",
    "kept": "keep",
    "left": "leave",
    "lost": "lose",
    "losing": "lose",
    "met": "meet",
    "sent": "send",
    "spent": "spend",
    "built": "build",
    "meant": "mean",
    "felt": "feel",
    "dealt": "deal",
    "led": "lead",
    "read": "read",
    "put": "put",
    "set": "set",
    "lay": "lie",
    "lain": "lie",
    "died": "die",
    "dying": "die",
    "lied": "lie",
    "rose": "rise",
    "risen": "rise",
    "arose": "arise",
    "arisen": "arise",
    "fell": "fall",
    "fallen": "fall",
    "bore": "bear",
    "borne": "bear",
    "born": "bear",
    "spoke": "speak",
    "spoken": "speak",
    "stood": "stand",
    "understood": "understand",
    "struck": "strike",
    "sought": "seek",
    "bound": "bind",
    "begun": "begin",
    "began": "begin",
    "beginning": "begin",
    "wrote": "write",
    "written": "write",
    "writing": "write",
    # irregular nouns
    "men": "man",
    "women": "woman",
    "children": "child",
    "feet": "foot",
    # frequent regulars whose rule image splits the lemma
    "decided": "decide",
    "deciding": "decide",
    "expence": "expense",
    "expences": "expense",
    "united": "unite",
    "uniting": "unite",
    "stated": "state",
    "stating": "state",
    "created": "create",
    "creating": "create",
    "related": "relate",
    "situated": "situate",
    "calculated": "calculate",
    "regulated": "regulate",
    "regulating": "regulate",
    "operated": "operate",
    "separated": "separate",
    "violated": "violate",
    "violating": "violate",
    "contributed": "contribute",
    "contributing": "contribute",
    "imagined": "imagine",
    "imagining": "imagine",
    "provided": "provide",
    "providing": "provide",
    "declared": "declare",
    "declaring": "declare",
    "required": "require",
    "requiring": "require",
    "desired": "desire",
    "cared": "care",
    "caring": "care",
    "used": "use",
    "obtained": "obtain",
    # protections: the rules would strip these
    "perhaps": "perhaps",
    "always": "always",
    "whereas": "whereas",
    "during": "during",
    "indeed": "indeed",
    "proceed": "proceed",
    "exceed": "exceed",
    "succeed": "succeed",
    "series": "series",
    "species": "species",
    "nothing": "nothing",
    "something": "something",
    "anything": "anything",
    "everything": "everything",
    "news": "news",
    "sacred": "sacred",
    "hatred": "hatred",
    "kindred": "kindred",
    "hundred": "hundred",
    "ourselves": "ourselves",
    "yourselves": "yourselves",
    "themselves": "themselves",
}

_VOWELS = frozenset("aeiou")


def _has_vowel(s):
    for c in s:
        if c in _VOWELS:
            return True
    return False


def _strip_verbal(word, k):
    """Remove a k-letter -ed/-ing suffix with doubling and e-restore fixes."""
    stem = word[: -k]
    if len(stem) < 2 or not _has_vowel(stem):
        return word
    if len(stem) >= 3 and stem[-1] == stem[-2] \
            and stem[-1] not in _VOWELS and stem[-1] not in "lsz":
        return stem[:-1]
    last = stem[-1]
    if last in "vcu":
        return stem + "e"
    if last == "g" and not stem.endswith("ng"):
        return stem + "e"
    if last == "s" and not stem.endswith("ss"):
        return stem + "e"
    if last == "z" and not stem.endswith("zz"):
        return stem + "e"
    if stem.endswith("bl") or stem.endswith("iz"):
        return stem + "e"
    if len(stem) < 3:
        return word
    return stem


def _suffix_rules(w):
    # plural family
    if w.endswith("ies") and len(w) >= 5:
        w = w[:-3] + "y"
    elif w.endswith("es") and w[:-2].endswith(("x", "ch", "sh", "ss", "zz", "o")):
        w = w[:-2]
    elif w.endswith("s") and len(w) >= 4 and not w.endswith(("ss", "us", "is")) \
            and w[-2] != "'":
        w = w[:-1]
    # past / gerund family
    if w.endswith("ied") and len(w) >= 5:
        w = w[:-3] + "y"
    elif w.endswith("eed"):
        if len(w) >= 6:
            w = w[:-1]
    elif w.endswith("ed") and len(w) >= 4:
        w = _strip_verbal(w, 2)
    elif w.endswith("ing") and len(w) >= 6:
        w = _strip_verbal(w, 3)
    return w


def lemma(word):
    """Lemma of a single lowercase token."""
    hit = EXCEPTIONS.get(word)
    if hit is not None:
        return hit
    w = word
    if w.endswith("'s"):
        w = w[:-2]
        hit = EXCEPTIONS.get(w)
        if hit is not None:
            return hit
    if len(w) >= 4:
        w = _suffix_rules(w)
    return EXCEPTIONS.get(w, w)
