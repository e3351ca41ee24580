"""Evaluation harness: labeled-query ingestion, the accuracy grid over
(strategy, mode, k, restriction), and inter-annotator agreement.

Reports are fully deterministic: aggregation is commutative over queries,
restriction sets use a fixed tie-break, and report files carry no
timestamps, so identical inputs produce byte-identical output regardless
of query order.
"""

from __future__ import annotations

import csv
import json
import logging
import warnings
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .inventory import CODEPOINT_RE, EmojiInventory, STRATEGIES, normalize_codepoint
from .preprocessing import Lemmatizer
from .ranking import NoCandidatesError, Ranking, rank
from .store import EmbeddingStore
from .vectorize import (
    ClassProbabilities,
    EmptyQueryError,
    build_emoji_vectors,
    caption_vector,
    compose_query,
    image_vector,
)

log = logging.getLogger(__name__)

REPORT_FORMAT_VERSION = 1
CSV_COLUMNS = ("strategy", "mode", "k", "restriction", "hits", "total", "accuracy")


class QueryFormatError(ValueError):
    pass


class NoValidQueriesError(QueryFormatError):
    pass


class AnnotationFormatError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledQuery:
    """One evaluation item: classifier output, caption and the gold emoji."""

    id: str
    classes: ClassProbabilities
    caption: str
    gold: str


def scan_queries(path) -> tuple[list[LabeledQuery], list[tuple[int, str]]]:
    """Parse query JSONL, returning valid queries and (line, reason) rejects."""
    queries: list[LabeledQuery] = []
    rejected: list[tuple[int, str]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                queries.append(_parse_query(line))
            except (ValueError, TypeError) as exc:
                rejected.append((lineno, str(exc)))
    for lineno, reason in rejected:
        log.warning("%s: line %d rejected: %s", path, lineno, reason)
    return queries, rejected


def load_queries(path) -> list[LabeledQuery]:
    """Load query JSONL; invalid lines are rejected with diagnostics.

    Raises :class:`NoValidQueriesError` when nothing valid remains.
    """
    queries, rejected = scan_queries(path)
    if not queries:
        raise NoValidQueriesError(
            f"{path}: no valid queries ({len(rejected)} rejected)"
        )
    return queries


def _parse_query(line: str) -> LabeledQuery:
    obj = json.loads(line)
    if not isinstance(obj, dict):
        raise QueryFormatError("query line must be a JSON object")
    qid = obj.get("id")
    if not isinstance(qid, str) or not qid:
        raise QueryFormatError("missing or empty 'id'")
    raw_classes = obj.get("classes")
    if not isinstance(raw_classes, list) or not raw_classes:
        raise QueryFormatError(f"{qid}: 'classes' must be a non-empty list")
    pairs = []
    for item in raw_classes:
        if not isinstance(item, dict) or "label" not in item or "prob" not in item:
            raise QueryFormatError(f"{qid}: class entries need 'label' and 'prob'")
        pairs.append((item["label"], item["prob"]))
    classes = ClassProbabilities(pairs)
    caption = obj.get("caption", "")
    if not isinstance(caption, str):
        raise QueryFormatError(f"{qid}: 'caption' must be a string")
    gold = obj.get("gold")
    if not isinstance(gold, str) or not CODEPOINT_RE.match(normalize_codepoint(gold)):
        raise QueryFormatError(f"{qid}: missing or malformed 'gold' codepoint")
    return LabeledQuery(
        id=qid, classes=classes, caption=caption, gold=normalize_codepoint(gold)
    )


def hit_at_k(ranking: Ranking, gold: str, k: int) -> bool:
    """True iff the gold codepoint appears among the first min(k, len) entries."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return any(cp == gold for cp, _ in ranking.entries[:k])


def top_frequent_golds(queries: list[LabeledQuery], n: int) -> list[str]:
    """The n most frequent gold emojis; ties broken by ascending codepoint."""
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = Counter(q.gold for q in queries)
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [cp for cp, _ in ordered[:n]]


@dataclass(frozen=True)
class GridConfig:
    """The evaluation grid: strategy x mode x k, one restriction per run."""

    strategies: tuple[str, ...] = STRATEGIES
    modes: tuple[str, ...] = ("V", "VT")
    ks: tuple[int, ...] = (1, 3)
    restrict_top: int | None = None
    fusion: str = "normalize-add"

    def __post_init__(self):
        if not self.strategies or not self.modes or not self.ks:
            raise ValueError("grid needs at least one strategy, one mode and one k")

    @property
    def restriction_name(self) -> str:
        return "none" if self.restrict_top is None else f"top{self.restrict_top}"


@dataclass
class GridCell:
    strategy: str
    mode: str
    k: int
    restriction: str
    hits: int = 0
    total: int = 0
    skipped: dict[str, int] = field(
        default_factory=lambda: {"empty_query": 0, "no_candidates": 0}
    )

    @property
    def accuracy(self) -> float:
        return self.hits / self.total if self.total else 0.0

    def as_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "mode": self.mode,
            "k": self.k,
            "restriction": self.restriction,
            "hits": self.hits,
            "total": self.total,
            "skipped": dict(self.skipped),
            "accuracy": self.accuracy,
        }


@dataclass
class EvalReport:
    """Accuracy grid plus config echo and coverage statistics."""

    cells: list[GridCell]
    config: dict
    restriction_sets: dict[str, list[str]]
    coverage: dict

    def cell(self, strategy: str, mode: str, k: int) -> GridCell:
        for c in self.cells:
            if (c.strategy, c.mode, c.k) == (strategy, mode, k):
                return c
        raise KeyError((strategy, mode, k))

    def to_dict(self) -> dict:
        return {
            "format_version": REPORT_FORMAT_VERSION,
            "config": self.config,
            "restriction_sets": self.restriction_sets,
            "coverage": self.coverage,
            "grid": [c.as_dict() for c in self.cells],
        }

    def to_json_bytes(self) -> bytes:
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2)
        return (text + "\n").encode("utf-8")

    def write_json(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_json_bytes())

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for c in self.cells:
                writer.writerow(
                    [c.strategy, c.mode, c.k, c.restriction, c.hits, c.total,
                     repr(c.accuracy)]
                )

    def summary_lines(self) -> list[str]:
        header = f"{'strategy':<24} {'mode':<4} {'k':>2} {'restrict':<8} " \
                 f"{'hits':>6} {'total':>6} {'accuracy':>9}"
        lines = [header, "-" * len(header)]
        for c in self.cells:
            lines.append(
                f"{c.strategy:<24} {c.mode:<4} {c.k:>2} {c.restriction:<8} "
                f"{c.hits:>6} {c.total:>6} {c.accuracy:>9.4f}"
            )
        return lines


def evaluate(
    queries: list[LabeledQuery],
    store: EmbeddingStore,
    inventory: EmojiInventory,
    grid: GridConfig,
    stopwords: frozenset[str] | set[str] | None = None,
    lemmatizer: Lemmatizer | None = None,
) -> EvalReport:
    """Run the full grid and aggregate hit@k accuracies.

    Per-query failures (empty query, no candidates) are counted as skips
    per cell, never abort the grid, and the result is independent of query
    order.
    """
    if not queries:
        raise NoValidQueriesError("no queries to evaluate")
    for strategy in grid.strategies:
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")

    vector_sets = {
        s: build_emoji_vectors(store, inventory, s, stopwords, lemmatizer)
        for s in grid.strategies
    }

    restriction: set[str] | None = None
    restriction_sets: dict[str, list[str]] = {}
    if grid.restrict_top is not None:
        members = top_frequent_golds(queries, grid.restrict_top)
        restriction = set(members)
        restriction_sets[grid.restriction_name] = sorted(members)

    # Query-side vectors do not depend on the grid cell; compute them once.
    image_results = [image_vector(store, q.classes) for q in queries]
    caption_results = [caption_vector(store, q.caption) for q in queries]

    composed: dict[tuple[int, str], object] = {}

    def query_vector(index: int, mode: str):
        key = (index, mode)
        if key not in composed:
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    composed[key] = compose_query(
                        image_results[index],
                        caption_results[index],
                        mode=mode,
                        fusion=grid.fusion,
                    )
            except EmptyQueryError:
                composed[key] = None
        return composed[key]

    k_max = max(grid.ks)
    cells: list[GridCell] = []
    for strategy in grid.strategies:
        emoji_set = vector_sets[strategy]
        for mode in grid.modes:
            per_k = {
                k: GridCell(strategy, mode, k, grid.restriction_name)
                for k in grid.ks
            }
            for index, query in enumerate(queries):
                qvec = query_vector(index, mode)
                if qvec is None:
                    for cell in per_k.values():
                        cell.skipped["empty_query"] += 1
                    continue
                try:
                    ranking = rank(qvec, emoji_set, k_max, restriction)
                except NoCandidatesError:
                    for cell in per_k.values():
                        cell.skipped["no_candidates"] += 1
                    continue
                for k, cell in per_k.items():
                    cell.total += 1
                    if hit_at_k(ranking, query.gold, k):
                        cell.hits += 1
            cells.extend(per_k[k] for k in grid.ks)

    coverage = {
        "strategies": {
            s: {"emojis": len(vs), "empty": vs.empty_count}
            for s, vs in sorted(vector_sets.items())
        },
        "queries": {
            "total": len(queries),
            "image_empty": sum(r.empty for r in image_results),
            "caption_empty": sum(r.empty for r in caption_results),
        },
    }
    config = {
        "strategies": list(grid.strategies),
        "modes": list(grid.modes),
        "ks": list(grid.ks),
        "restriction": grid.restriction_name,
        "fusion": grid.fusion,
        "dimension": store.dimension,
        "inventory_size": len(inventory),
        "query_count": len(queries),
    }
    return EvalReport(
        cells=cells,
        config=config,
        restriction_sets=restriction_sets,
        coverage=coverage,
    )


def majority_label(labels: list[str]) -> str | None:
    """Strict plurality winner, or None when the top count is tied."""
    if not labels:
        raise ValueError("labels must be non-empty")
    counts = Counter(labels).most_common()
    if len(counts) > 1 and counts[0][1] == counts[1][1]:
        return None
    return counts[0][0]


def cohen_kappa(a: list[str], b: list[str]) -> float:
    """Chance-corrected agreement over the union category set.

    kappa = (p_o - p_e) / (1 - p_e); the degenerate case p_e == 1 (both
    raters use one shared category) is defined as 1.
    """
    if len(a) != len(b):
        raise ValueError(f"label lists differ in length: {len(a)} vs {len(b)}")
    if not a:
        raise ValueError("label lists must be non-empty")
    n = len(a)
    p_observed = sum(x == y for x, y in zip(a, b)) / n
    counts_a = Counter(a)
    counts_b = Counter(b)
    p_expected = sum(
        (counts_a[c] / n) * (counts_b[c] / n) for c in set(counts_a) | set(counts_b)
    )
    if p_expected == 1.0:
        return 1.0
    return (p_observed - p_expected) / (1.0 - p_expected)


@dataclass
class AnnotationSet:
    """Per-item labels from a fixed roster of annotators."""

    items: dict[str, list[str]]

    def __post_init__(self):
        sizes = {len(labels) for labels in self.items.values()}
        if len(sizes) > 1:
            raise AnnotationFormatError(
                f"items disagree on annotator count: {sorted(sizes)}"
            )

    @property
    def n_annotators(self) -> int:
        for labels in self.items.values():
            return len(labels)
        return 0

    def annotator_labels(self, index: int) -> list[str]:
        return [labels[index] for labels in self.items.values()]


def load_annotations(path) -> AnnotationSet:
    """Load annotation JSONL: one {"id", "labels": [...]} object per line."""
    items: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise AnnotationFormatError(
                    f"{path}: line {lineno}: unparsable JSON ({exc})"
                ) from None
            if not isinstance(obj, dict):
                raise AnnotationFormatError(
                    f"{path}: line {lineno}: expected an object"
                )
            item_id = obj.get("id")
            labels = obj.get("labels")
            if not isinstance(item_id, str) or not item_id:
                raise AnnotationFormatError(
                    f"{path}: line {lineno}: missing or empty 'id'"
                )
            if (
                not isinstance(labels, list)
                or not labels
                or not all(isinstance(x, str) and x for x in labels)
            ):
                raise AnnotationFormatError(
                    f"{path}: line {lineno}: 'labels' must be non-empty strings"
                )
            if item_id in items:
                raise AnnotationFormatError(
                    f"{path}: line {lineno}: duplicate item id {item_id!r}"
                )
            items[item_id] = list(labels)
    if not items:
        raise AnnotationFormatError(f"{path}: no annotation items")
    return AnnotationSet(items=items)


def pairwise_kappa(
    annotations: AnnotationSet,
) -> tuple[list[tuple[tuple[int, int], float]], float]:
    """Cohen's kappa for every annotator pair, plus the unweighted mean."""
    n = annotations.n_annotators
    if n < 2:
        raise ValueError("need >= 2 annotators")
    pairs: list[tuple[tuple[int, int], float]] = []
    for i, j in combinations(range(n), 2):
        value = cohen_kappa(
            annotations.annotator_labels(i), annotations.annotator_labels(j)
        )
        pairs.append(((i, j), value))
    mean = sum(value for _, value in pairs) / len(pairs)
    return pairs, mean
