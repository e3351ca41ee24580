"""Word-embedding store: text-format loading and bag-of-words embeddings.

File format: UTF-8, an optional "<count> <dim>" header line, then one entry
per line as ``token c1 c2 ... cD``. Tokens may not contain spaces. The store
is immutable after loading; lookups are safe to share across threads.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from collections.abc import Iterable, Mapping

import numpy as np

log = logging.getLogger(__name__)


class EmbeddingFormatError(ValueError):
    """A malformed embedding file; the message names the offending line."""


class EmptyEmbeddingFileError(EmbeddingFormatError):
    """The embedding file holds no entries."""


@dataclass
class EmbeddingStore:
    """Token to vector map of uniform dimension.

    Keys keep their original case; a lowercase index provides the fallback
    lookup, so a lowercased token still finds a cased file entry. Tokens are
    unique after case normalization (duplicates kept the first occurrence
    and are counted in ``duplicate_count``).
    """

    dimension: int
    entries: dict[str, np.ndarray] = field(default_factory=dict)
    duplicate_count: int = 0
    _folded: dict[str, str] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if not self._folded:
            self._folded = {token.lower(): token for token in self.entries}

    @property
    def token_count(self) -> int:
        return len(self.entries)

    def lookup(self, token: str) -> np.ndarray | None:
        """Exact-case match first, then the case-normalized fallback."""
        vec = self.entries.get(token)
        if vec is not None:
            return vec
        key = self._folded.get(token.lower())
        return self.entries[key] if key is not None else None

    def __contains__(self, token: str) -> bool:
        return self.lookup(token) is not None

    def __len__(self) -> int:
        return len(self.entries)


def load_word_embeddings(path, expected_dim: int | None = None) -> EmbeddingStore:
    """Load a text-format embedding file into an immutable store.

    The dimension is inferred from the header (if present) or the first
    entry; every row must agree. Raises :class:`EmbeddingFormatError` with
    the offending line number on malformed rows, non-finite components or
    dimension mismatches, and :class:`EmptyEmbeddingFileError` when no
    entries are found.
    """
    entries: dict[str, np.ndarray] = {}
    folded: dict[str, str] = {}
    duplicates = 0
    dimension: int | None = None
    header_dim: int | None = None

    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            fields = raw.split()
            if not fields:
                raise EmbeddingFormatError(f"{path}: line {lineno}: empty row")
            if lineno == 1 and len(fields) == 2 and _all_ints(fields):
                header_dim = int(fields[1])
                if header_dim < 1:
                    raise EmbeddingFormatError(
                        f"{path}: line 1: header dimension must be >= 1"
                    )
                continue
            token = fields[0]
            try:
                values = [float(x) for x in fields[1:]]
            except ValueError as exc:
                raise EmbeddingFormatError(
                    f"{path}: line {lineno}: unparsable number ({exc})"
                ) from None
            if dimension is None:
                dimension = header_dim if header_dim is not None else len(values)
                if dimension < 1:
                    raise EmbeddingFormatError(
                        f"{path}: line {lineno}: entry has no components"
                    )
            if len(values) != dimension:
                raise EmbeddingFormatError(
                    f"{path}: line {lineno}: expected {dimension} components, "
                    f"got {len(values)}"
                )
            vec = np.asarray(values, dtype=np.float64)
            if not np.all(np.isfinite(vec)):
                raise EmbeddingFormatError(
                    f"{path}: line {lineno}: non-finite component"
                )
            key = token.lower()
            if key in folded:
                duplicates += 1
                continue
            folded[key] = token
            entries[token] = vec

    if not entries:
        raise EmptyEmbeddingFileError(f"{path}: no embedding entries")
    assert dimension is not None
    if expected_dim is not None and dimension != expected_dim:
        raise EmbeddingFormatError(
            f"{path}: dimension {dimension} does not match expected {expected_dim}"
        )
    if duplicates:
        log.warning("%s: %d duplicate tokens ignored (first kept)", path, duplicates)
    return EmbeddingStore(
        dimension=dimension,
        entries=entries,
        duplicate_count=duplicates,
        _folded=folded,
    )


def _all_ints(fields: list[str]) -> bool:
    try:
        [int(x) for x in fields]
    except ValueError:
        return False
    return True


@dataclass
class TokenCounts:
    """Occurrence counts per token; all counts >= 1."""

    counts: dict[str, int]

    def __post_init__(self):
        for token, count in self.counts.items():
            if not token:
                raise ValueError("tokens must be non-empty")
            if count < 1:
                raise ValueError(f"count for {token!r} must be >= 1")

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "TokenCounts":
        return cls(dict(Counter(tokens)))

    @property
    def empty(self) -> bool:
        return not self.counts

    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class BowResult:
    """A bag-of-words vector plus coverage accounting.

    ``coverage`` is the fraction of the input signal that contributed:
    distinct-token coverage for text bags, included probability mass for
    class-probability bags.
    """

    vector: np.ndarray
    tokens_total: int
    tokens_found: int
    coverage: float

    @property
    def empty(self) -> bool:
        return self.tokens_found == 0


def bow_embedding(
    store: EmbeddingStore, counts: TokenCounts | Mapping[str, int]
) -> BowResult:
    """Count-weighted mean of the in-store token vectors.

    Out-of-vocabulary tokens are excluded from numerator and denominator
    (never zero-imputed). Zero coverage yields a flagged zero vector; the
    caller decides policy.
    """
    if isinstance(counts, TokenCounts):
        counts = counts.counts
    numerator = np.zeros(store.dimension, dtype=np.float64)
    weight = 0
    found = 0
    for token, count in counts.items():
        vec = store.lookup(token)
        if vec is None:
            continue
        numerator += vec * count
        weight += count
        found += 1
    total = len(counts)
    if weight == 0:
        return BowResult(numerator, tokens_total=total, tokens_found=0, coverage=0.0)
    return BowResult(
        numerator / weight,
        tokens_total=total,
        tokens_found=found,
        coverage=found / total,
    )
