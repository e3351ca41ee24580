"""Cosine scoring and deterministic top-k ranking over emoji vector sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from collections.abc import Collection

import numpy as np

from .validation import as_vector
from .vectorize import EmojiVectorSet, QueryVector


class NoCandidatesError(ValueError):
    """No scoreable emoji remains after restriction and empty-flag filtering."""


def cosine(a, b) -> float | None:
    """Cosine similarity, or None when either vector has zero norm.

    The None sentinel ranks strictly last in :func:`rank`.
    """
    va = as_vector(a)
    vb = as_vector(b, dimension=va.size)
    norm_a = float(np.linalg.norm(va))
    norm_b = float(np.linalg.norm(vb))
    if norm_a == 0.0 or norm_b == 0.0:
        return None
    return float(np.dot(va, vb) / (norm_a * norm_b))


@dataclass(frozen=True)
class Ranking:
    """Top-k entries, scores non-increasing, ties broken by codepoint."""

    entries: tuple[tuple[str, float], ...]
    k: int
    restriction: frozenset[str] | None = None

    def codepoints(self) -> list[str]:
        return [cp for cp, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def rank(
    query: QueryVector | np.ndarray,
    emojis: EmojiVectorSet,
    k: int,
    restriction: Collection[str] | None = None,
) -> Ranking:
    """Score candidates by cosine similarity and return the top k.

    Candidates are the non-empty-flagged emojis, intersected with the
    restriction when given. Sorting is by score descending, ties by
    ascending codepoint string; undefined scores (zero-norm pairs) sort
    after every defined score. Returns min(k, candidate count) entries.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    vec = query.vector if isinstance(query, QueryVector) else np.asarray(query)
    vec = as_vector(vec, dimension=emojis.dimension)

    candidates = emojis.candidates()
    if restriction is not None:
        allowed = set(restriction)
        candidates = [cp for cp in candidates if cp in allowed]
    if not candidates:
        raise NoCandidatesError("no candidate emojis after restriction")

    scored = []
    for cp in candidates:
        score = cosine(vec, emojis.vectors[cp])
        if score is None:
            scored.append((1, 0.0, cp, math.nan))
        else:
            scored.append((0, -score, cp, score))
    scored.sort(key=lambda item: item[:3])

    entries = tuple((cp, score) for _, _, cp, score in scored[:k])
    return Ranking(
        entries=entries,
        k=k,
        restriction=frozenset(restriction) if restriction is not None else None,
    )
