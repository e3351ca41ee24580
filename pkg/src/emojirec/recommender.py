"""Scikit-learn style facade over the vectorizer and scorer.

``fit`` learns the per-emoji vectors from an inventory, ``predict`` maps
queries to their top recommendation, and ``get_params``/``set_params``
come from :class:`sklearn.base.BaseEstimator`, so the recommender slots
into the usual estimator tooling.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .evaluation import LabeledQuery, hit_at_k
from .inventory import EmojiInventory, EmojiRecord, load_inventory
from .ranking import Ranking, rank
from .store import EmbeddingStore
from .vectorize import (
    ClassProbabilities,
    EmptyQueryError,
    build_emoji_vectors,
    caption_vector,
    compose_query,
    image_vector,
)


class EmojiRecommender(BaseEstimator):
    """Rank emojis against image/caption queries by cosine similarity.

    Parameters
    ----------
    store : EmbeddingStore
        Loaded word-embedding store used for both emoji and query vectors.
    strategy : str
        Knowledge strategy for the emoji side: "names", "senses",
        "definitions" or "processed_definitions".
    mode : str
        "V" (image only) or "VT" (image plus caption).
    fusion : str
        "normalize-add" (each part L2-normalized before adding) or
        "raw-add".
    k : int
        Default ranking depth for :meth:`recommend` and :meth:`score`.
    stopwords, lemmatizer
        Optional preprocessing overrides for the processed-definitions
        strategy.
    """

    def __init__(
        self,
        store: EmbeddingStore | None = None,
        strategy: str = "senses",
        mode: str = "VT",
        fusion: str = "normalize-add",
        k: int = 5,
        stopwords=None,
        lemmatizer=None,
    ):
        self.store = store
        self.strategy = strategy
        self.mode = mode
        self.fusion = fusion
        self.k = k
        self.stopwords = stopwords
        self.lemmatizer = lemmatizer

    def fit(self, X, y=None):
        """Build the emoji vector set from an inventory.

        X may be an :class:`EmojiInventory`, an iterable of
        :class:`EmojiRecord`, or a path to an inventory JSON file.
        """
        if self.store is None:
            raise ValueError("EmojiRecommender requires a loaded embedding store")
        if isinstance(X, EmojiInventory):
            inventory = X
        elif isinstance(X, (str, bytes)) or hasattr(X, "__fspath__"):
            inventory = load_inventory(X)
        else:
            inventory = EmojiInventory(records=list(X))
        for record in inventory:
            if not isinstance(record, EmojiRecord):
                raise TypeError("fit expects EmojiRecord items")
        self.inventory_ = inventory
        self.vectors_ = build_emoji_vectors(
            self.store, inventory, self.strategy, self.stopwords, self.lemmatizer
        )
        self.dimension_ = self.store.dimension
        return self

    def recommend(
        self,
        classes,
        caption: str | None = None,
        k: int | None = None,
        restriction=None,
    ) -> Ranking:
        """Top-k ranking for one query.

        ``classes`` is a ClassProbabilities, a {label: prob} mapping, or a
        (label, prob) pair list; ``caption`` is free text (used in VT mode).
        """
        check_is_fitted(self, "vectors_")
        query = self._compose(classes, caption)
        return rank(query, self.vectors_, k or self.k, restriction)

    def predict(self, X) -> list[str]:
        """Top-1 codepoint per query; raises on queries with no signal."""
        check_is_fitted(self, "vectors_")
        return [self.recommend(*self._unpack(item), k=1).codepoints()[0] for item in X]

    def transform(self, X) -> np.ndarray:
        """Map queries to their composed vectors in embedding space."""
        check_is_fitted(self, "vectors_")
        rows = [self._compose(*self._unpack(item)).vector for item in X]
        return np.vstack(rows)

    def score(self, X, y=None) -> float:
        """Hit@k accuracy at the configured k; empty queries are skipped."""
        check_is_fitted(self, "vectors_")
        golds = list(y) if y is not None else [item.gold for item in X]
        hits = 0
        total = 0
        for item, gold in zip(X, golds):
            try:
                ranking = self.recommend(*self._unpack(item))
            except EmptyQueryError:
                continue
            total += 1
            hits += hit_at_k(ranking, gold, self.k)
        return hits / total if total else 0.0

    def _compose(self, classes, caption):
        if not isinstance(classes, ClassProbabilities):
            if hasattr(classes, "items"):
                classes = ClassProbabilities.from_mapping(classes)
            else:
                pairs = [
                    (e["label"], e["prob"]) if isinstance(e, dict) else tuple(e)
                    for e in classes
                ]
                classes = ClassProbabilities(pairs)
        image = image_vector(self.store, classes)
        cap = caption_vector(self.store, caption) if caption else None
        return compose_query(image, cap, mode=self.mode, fusion=self.fusion)

    @staticmethod
    def _unpack(item):
        if isinstance(item, LabeledQuery):
            return item.classes, item.caption
        if isinstance(item, dict):
            return item["classes"], item.get("caption")
        return item
