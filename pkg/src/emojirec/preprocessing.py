"""Text normalization: tokenization, stopword filtering and lemmatization.

The tokenizer lowercases and splits on anything that is not a letter or
digit, which also strips emoji and other symbol codepoints out of text
streams. Stopword filtering uses a pinned list shipped with the package
(overridable per call). The default lemmatizer is rule based: a documented
exception table plus a small set of suffix rules, iterated to a fixed
point so that applying it twice never changes the result.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable
from importlib import resources

# Unicode letters and digits only; underscore and all punctuation split tokens,
# emoji/symbol codepoints never survive.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

# Articles are always removed by preprocess(), even under a custom stopword
# list that happens to omit them.
ARTICLES = frozenset({"a", "an", "the"})

_VOWELS = frozenset("aeiou")

# Irregular forms the suffix rules cannot derive.
EXCEPTIONS = {
    # plurals
    "children": "child",
    "feet": "foot",
    "geese": "goose",
    "men": "man",
    "women": "woman",
    "mice": "mouse",
    "teeth": "tooth",
    "people": "person",
    "leaves": "leaf",
    "wolves": "wolf",
    "knives": "knife",
    "lives": "life",
    "loaves": "loaf",
    "halves": "half",
    "shelves": "shelf",
    "wives": "wife",
    "buses": "bus",
    "movies": "movie",
    "cookies": "cookie",
    "goes": "go",
    "potatoes": "potato",
    "tomatoes": "tomato",
    "heroes": "hero",
    # verb forms
    "ran": "run",
    "went": "go",
    "ate": "eat",
    "saw": "see",
    "made": "make",
    "took": "take",
    "gave": "give",
    "came": "come",
    "got": "get",
    "said": "say",
    "sat": "sit",
    "stood": "stand",
    "held": "hold",
    "flew": "fly",
    "swam": "swim",
    "drank": "drink",
    "rode": "ride",
    "wrote": "write",
    "drove": "drive",
    "threw": "throw",
    "caught": "catch",
    "bought": "buy",
    "brought": "bring",
    "thought": "think",
    "felt": "feel",
    "kept": "keep",
    "left": "leave",
    "lost": "lose",
    "met": "meet",
    "paid": "pay",
    "slept": "sleep",
    "told": "tell",
    "wore": "wear",
    "spoke": "speak",
    "broke": "break",
    "chose": "choose",
    "fell": "fall",
    "grew": "grow",
    "knew": "know",
    "used": "use",
}

# Words the suffix rules would mangle; kept verbatim.
KEEP_AS_IS = frozenset(
    {
        "gas",
        "lens",
        "news",
        "tennis",
        "species",
        "series",
        "chaos",
        "canvas",
        "iris",
        "atlas",
        "bias",
        "alias",
        "cosmos",
        "campus",
        "virus",
        "bonus",
        "morning",
        "evening",
        "building",
        "ceiling",
        "pudding",
        "something",
        "anything",
        "everything",
        "nothing",
        "during",
    }
)


def tokenize(text: str) -> list[str]:
    """Lowercase and split on whitespace/punctuation/symbols.

    Deterministic; an empty or symbol-only string yields an empty list.
    """
    if not text:
        return []
    return _TOKEN_RE.findall(text.lower())


def load_stopwords(path) -> frozenset[str]:
    """Read a stopword file: one token per line, '#' comments, blanks ignored."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.split("#", 1)[0].strip().lower()
            if word:
                words.add(word)
    return frozenset(words)


def default_stopwords() -> frozenset[str]:
    """The versioned English stopword list shipped with the package."""
    ref = resources.files("emojirec").joinpath("data/stopwords_en.txt")
    with resources.as_file(ref) as path:
        return load_stopwords(path)


_DEFAULT_STOPWORDS: frozenset[str] | None = None


def _stopwords_cached() -> frozenset[str]:
    global _DEFAULT_STOPWORDS
    if _DEFAULT_STOPWORDS is None:
        _DEFAULT_STOPWORDS = default_stopwords()
    return _DEFAULT_STOPWORDS


class RuleLemmatizer:
    """English lemmatizer: exception table plus suffix rules.

    Handles plural nouns and the common verb inflections (-s, -es, -ies,
    -ing, -ed) with consonant undoubling and final-e restoration. The rule
    pass is applied until the word stops changing, which makes the mapping
    idempotent by construction.
    """

    def __init__(
        self,
        exceptions: dict[str, str] | None = None,
        keep: frozenset[str] | None = None,
    ):
        self.exceptions = EXCEPTIONS if exceptions is None else dict(exceptions)
        self.keep = KEEP_AS_IS if keep is None else frozenset(keep)

    def __call__(self, word: str) -> str:
        return self.lemmatize(word)

    def lemmatize(self, word: str) -> str:
        previous = word
        for _ in range(len(word) + 1):
            current = self._pass(previous)
            if current == previous:
                return current
            previous = current
        return previous

    def _pass(self, word: str) -> str:
        if len(word) < 3:
            return word
        if word in self.exceptions:
            return self.exceptions[word]
        if word in self.keep:
            return word
        if word.endswith("ies") and len(word) >= 5:
            return word[:-3] + "y"
        if word.endswith("ied") and len(word) >= 5:
            return word[:-3] + "y"
        if word.endswith("sses"):
            return word[:-2]
        if word.endswith(("ches", "shes", "xes", "zes")):
            return word[:-2]
        if word.endswith("ing") and len(word) >= 6 and _has_vowel(word[:-3]):
            return self._fix_stem(word[:-3])
        if word.endswith("eed"):
            # agreed -> agree, but feed/breed/speed stay put
            if len(word) >= 6 and _has_vowel(word[:-3]):
                return word[:-1]
            return word
        if word.endswith("ed") and len(word) >= 5 and _has_vowel(word[:-2]):
            return self._fix_stem(word[:-2])
        if (
            word.endswith("s")
            and len(word) >= 4
            and not word.endswith(("ss", "us", "is"))
        ):
            return word[:-1]
        return word

    @staticmethod
    def _fix_stem(stem: str) -> str:
        # runn -> run, stopp -> stop; ll/ss/ff/zz are legitimate endings
        if len(stem) >= 4 and stem[-1] == stem[-2] and stem[-1] in "bdgmnprt":
            return stem[:-1]
        # mak -> make, clos -> close; final w/x/y never takes a restored e
        if (
            len(stem) in (3, 4)
            and stem[-1] not in _VOWELS
            and stem[-1] not in "wxy"
            and stem[-2] in _VOWELS
            and stem[-3] not in _VOWELS
            and (len(stem) == 3 or stem[0] not in _VOWELS)
        ):
            return stem + "e"
        return stem


def _has_vowel(word: str) -> bool:
    return any(ch in _VOWELS for ch in word)


DEFAULT_LEMMATIZER = RuleLemmatizer()

Lemmatizer = Callable[[str], str]


def preprocess(
    tokens: Iterable[str],
    stopwords: frozenset[str] | set[str] | None = None,
    lemmatizer: Lemmatizer | None = None,
) -> list[str]:
    """Drop stopwords and articles, lemmatize the survivors, order preserved.

    Stopwords are filtered again after lemmatization so the operation is
    idempotent even when a lemma lands on a stopword (e.g. cans -> can).
    """
    if stopwords is None:
        stopwords = _stopwords_cached()
    if lemmatizer is None:
        lemmatizer = DEFAULT_LEMMATIZER
    drop = set(stopwords) | set(ARTICLES)
    out = []
    for token in tokens:
        if token in drop:
            continue
        lemma = lemmatizer(token)
        if lemma and lemma not in drop:
            out.append(lemma)
    return out
