"""Emoji-side and query-side vector construction.

Emoji vectors are count-weighted bag-of-words means over one knowledge
strategy. Query vectors combine a probability-weighted sum of class-label
vectors with an optional caption vector. All operations are pure functions
over immutable inputs.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from .inventory import EmojiInventory, STRATEGIES, knowledge_text
from .preprocessing import Lemmatizer, tokenize
from .store import BowResult, EmbeddingStore, TokenCounts, bow_embedding
from .validation import check_probability_entries, check_same_dimension

log = logging.getLogger(__name__)

MODES = ("V", "VT")
FUSIONS = ("normalize-add", "raw-add")


class EmptyQueryError(ValueError):
    """Neither the image nor the caption produced any in-vocabulary signal."""


@dataclass
class EmojiVectorSet:
    """Per-strategy emoji vectors plus zero-coverage flags."""

    strategy: str
    dimension: int
    vectors: dict[str, np.ndarray] = field(default_factory=dict)
    empty_flags: dict[str, bool] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def empty_count(self) -> int:
        return sum(self.empty_flags.values())

    def candidates(self) -> list[str]:
        """Codepoints eligible for scoring (zero-coverage emojis excluded)."""
        return [cp for cp in self.vectors if not self.empty_flags[cp]]


@dataclass
class ClassProbabilities:
    """Classifier output for one image: (label, probability) pairs.

    Probabilities are nonnegative and sum to at most 1 (top-N truncation of
    a softmax may sum below 1); labels are unique and non-empty.
    """

    entries: list[tuple[str, float]]

    def __post_init__(self):
        self.entries = check_probability_entries(self.entries)

    @classmethod
    def from_mapping(cls, mapping) -> "ClassProbabilities":
        return cls(list(mapping.items()))

    def labels(self) -> list[str]:
        return [label for label, _ in self.entries]

    def total_mass(self) -> float:
        return sum(prob for _, prob in self.entries)


@dataclass(frozen=True)
class QueryVector:
    """A composed query in embedding space.

    ``image_coverage`` is the probability mass of classes that contributed;
    ``caption_coverage`` is the caption's token coverage, unset in V mode.
    """

    vector: np.ndarray
    mode: str
    image_coverage: float
    caption_coverage: float | None = None


def build_emoji_vectors(
    store: EmbeddingStore,
    inventory: EmojiInventory,
    strategy: str,
    stopwords: frozenset[str] | set[str] | None = None,
    lemmatizer: Lemmatizer | None = None,
) -> EmojiVectorSet:
    """Bag-of-words vector per emoji under one knowledge strategy.

    Emojis whose knowledge text has zero in-vocabulary coverage get a zero
    vector and an empty flag; the summary count is logged, never fatal.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    out = EmojiVectorSet(strategy=strategy, dimension=store.dimension)
    for record in inventory:
        counts = knowledge_text(record, strategy, stopwords, lemmatizer)
        result = bow_embedding(store, counts)
        out.vectors[record.codepoint] = result.vector
        out.empty_flags[record.codepoint] = result.empty
    if out.empty_count:
        log.info(
            "strategy %s: %d of %d emojis have no in-vocabulary knowledge",
            strategy,
            out.empty_count,
            len(out),
        )
    return out


def class_label_vector(store: EmbeddingStore, label: str) -> BowResult:
    """Bag-of-words vector for a classifier label.

    Multi-word labels are tokenized and averaged; comma-separated synonym
    groups ("tabby, tabby cat") are flattened into one token bag, so a word
    repeated across synonyms weighs proportionally.
    """
    return bow_embedding(store, TokenCounts.from_tokens(tokenize(label)))


def caption_vector(store: EmbeddingStore, caption: str) -> BowResult:
    """Bag-of-words vector for a caption (raw unigram counts)."""
    return bow_embedding(store, TokenCounts.from_tokens(tokenize(caption)))


def image_vector(store: EmbeddingStore, probs: ClassProbabilities) -> BowResult:
    """Probability-weighted sum of class-label vectors.

    Labels with zero vocabulary coverage are dropped and their probability
    mass excluded, without renormalization, so the result stays linear in
    the probability list and the coverage stays observable.
    """
    vec = np.zeros(store.dimension, dtype=np.float64)
    included_mass = 0.0
    found = 0
    for label, prob in probs.entries:
        label_vec = class_label_vector(store, label)
        if label_vec.empty:
            continue
        vec += label_vec.vector * prob
        included_mass += prob
        found += 1
    return BowResult(
        vec,
        tokens_total=len(probs.entries),
        tokens_found=found,
        coverage=included_mass,
    )


def compose_query(
    image: BowResult,
    caption: BowResult | None = None,
    mode: str = "V",
    fusion: str = "normalize-add",
) -> QueryVector:
    """Combine image and caption vectors into one query vector.

    Mode V uses the image vector unchanged. Mode VT L2-normalizes each part,
    adds them and unit-normalizes the sum (the raw sum is available via
    ``fusion="raw-add"``); when one part is empty-flagged the other is used
    alone with a warning. Both parts empty raises :class:`EmptyQueryError`.
    """
    mode = mode.upper()
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if fusion not in FUSIONS:
        raise ValueError(f"unknown fusion {fusion!r}; expected one of {FUSIONS}")
    if caption is not None:
        check_same_dimension(image.vector, caption.vector)

    if mode == "V":
        if image.empty:
            raise EmptyQueryError("image vector has no in-vocabulary coverage")
        return QueryVector(
            vector=image.vector.copy(),
            mode="V",
            image_coverage=image.coverage,
        )

    caption_empty = caption is None or caption.empty
    if image.empty and caption_empty:
        raise EmptyQueryError("neither image nor caption has vocabulary coverage")
    if caption_empty:
        warnings.warn(
            "caption has no in-vocabulary coverage; VT query degrades to V",
            UserWarning,
            stacklevel=2,
        )
        return QueryVector(
            vector=image.vector.copy(),
            mode="VT",
            image_coverage=image.coverage,
            caption_coverage=0.0,
        )
    assert caption is not None
    if image.empty:
        warnings.warn(
            "image vector has no in-vocabulary coverage; VT query uses caption only",
            UserWarning,
            stacklevel=2,
        )
        return QueryVector(
            vector=caption.vector.copy(),
            mode="VT",
            image_coverage=0.0,
            caption_coverage=caption.coverage,
        )

    if fusion == "raw-add":
        combined = image.vector + caption.vector
    else:
        # Unit-normalize the combined vector as well: cosine scoring is
        # scale-invariant, and a unit result keeps the two-part composition
        # comparable across queries.
        combined = _unit(_unit(image.vector) + _unit(caption.vector))
    return QueryVector(
        vector=combined,
        mode="VT",
        image_coverage=image.coverage,
        caption_coverage=caption.coverage,
    )


def _unit(vec: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        return vec
    return vec / norm
