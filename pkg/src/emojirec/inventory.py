"""Emoji knowledge inventory: names, sense words and sense definitions.

Inventory files are JSON::

    {"version": "...", "emojis": [
        {"codepoint": "U+1F618", "name": "face blowing a kiss",
         "senses": [{"word": "love", "pos": "noun"}, ...],
         "definitions": ["...", ...]},
        ...
    ]}

Records are validated on load; structurally broken records are rejected
with diagnostics while a duplicate codepoint aborts the load. The loaded
inventory is immutable by convention and safe for concurrent reads.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .preprocessing import Lemmatizer, preprocess, tokenize
from .store import TokenCounts

log = logging.getLogger(__name__)

CODEPOINT_RE = re.compile(r"^U\+[0-9A-F]{2,6}(?: U\+[0-9A-F]{2,6})*$")

STRATEGIES = ("names", "senses", "definitions", "processed_definitions")


class InventoryFormatError(ValueError):
    pass


class DuplicateCodepointError(InventoryFormatError):
    def __init__(self, codepoint: str):
        super().__init__(f"duplicate codepoint: {codepoint}")
        self.codepoint = codepoint


class Sense(NamedTuple):
    word: str
    pos: str


@dataclass
class EmojiRecord:
    """One emoji's identity plus its knowledge concepts."""

    codepoint: str
    short_name: str = ""
    sense_words: list[Sense] = field(default_factory=list)
    definitions: list[str] = field(default_factory=list)

    def validate(self) -> None:
        if not self.codepoint:
            raise InventoryFormatError("codepoint must be non-empty")
        if not CODEPOINT_RE.match(self.codepoint):
            raise InventoryFormatError(
                f"malformed codepoint string: {self.codepoint!r}"
            )
        if not (self.short_name or self.sense_words or self.definitions):
            raise InventoryFormatError(
                f"{self.codepoint}: record carries no name, senses or definitions"
            )


@dataclass
class EmojiInventory:
    records: list[EmojiRecord]
    source_version: str = ""
    rejected: list[tuple[int, str]] = field(default_factory=list)

    def __post_init__(self):
        seen: set[str] = set()
        for record in self.records:
            if record.codepoint in seen:
                raise DuplicateCodepointError(record.codepoint)
            seen.add(record.codepoint)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def codepoints(self) -> list[str]:
        return [record.codepoint for record in self.records]

    def get(self, codepoint: str) -> EmojiRecord | None:
        for record in self.records:
            if record.codepoint == codepoint:
                return record
        return None


def normalize_codepoint(value: str) -> str:
    return " ".join(part.upper() for part in value.split())


def load_inventory(path) -> EmojiInventory:
    """Load and validate an inventory file.

    Rejected records (with reasons) are kept on ``inventory.rejected`` and
    logged; a duplicate codepoint raises :class:`DuplicateCodepointError`.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InventoryFormatError(f"{path}: unparsable JSON ({exc})") from None
    if not isinstance(data, dict) or not isinstance(data.get("emojis"), list):
        raise InventoryFormatError(f"{path}: expected an object with an 'emojis' list")

    records: list[EmojiRecord] = []
    rejected: list[tuple[int, str]] = []
    seen: set[str] = set()
    for index, entry in enumerate(data["emojis"]):
        try:
            record = _parse_record(entry)
            record.validate()
        except InventoryFormatError as exc:
            rejected.append((index, str(exc)))
            continue
        if record.codepoint in seen:
            raise DuplicateCodepointError(record.codepoint)
        seen.add(record.codepoint)
        records.append(record)

    for index, reason in rejected:
        log.warning("%s: emoji record %d rejected: %s", path, index, reason)
    log.info("%s: loaded %d records, rejected %d", path, len(records), len(rejected))
    inventory = EmojiInventory(
        records=records,
        source_version=str(data.get("version", "")),
    )
    inventory.rejected = rejected
    return inventory


def _parse_record(entry) -> EmojiRecord:
    if not isinstance(entry, dict):
        raise InventoryFormatError("emoji entry must be an object")
    codepoint = entry.get("codepoint")
    if not isinstance(codepoint, str):
        raise InventoryFormatError("missing or non-string 'codepoint'")
    name = entry.get("name", "")
    if not isinstance(name, str):
        raise InventoryFormatError(f"{codepoint}: 'name' must be a string")
    senses = []
    for sense in entry.get("senses", []) or []:
        if not isinstance(sense, dict) or not isinstance(sense.get("word"), str):
            raise InventoryFormatError(f"{codepoint}: malformed sense entry")
        if not sense["word"]:
            raise InventoryFormatError(f"{codepoint}: empty sense word")
        senses.append(Sense(word=sense["word"], pos=str(sense.get("pos", ""))))
    definitions = entry.get("definitions", []) or []
    if not isinstance(definitions, list) or not all(
        isinstance(d, str) for d in definitions
    ):
        raise InventoryFormatError(f"{codepoint}: 'definitions' must be strings")
    return EmojiRecord(
        codepoint=normalize_codepoint(codepoint),
        short_name=name,
        sense_words=senses,
        definitions=list(definitions),
    )


def knowledge_text(
    record: EmojiRecord,
    strategy: str,
    stopwords: frozenset[str] | set[str] | None = None,
    lemmatizer: Lemmatizer | None = None,
) -> TokenCounts:
    """Token counts backing one knowledge strategy for one emoji.

    ``names`` and ``senses`` yield distinct tokens with count 1 each (the
    sense-count denominator is then the number of distinct forms);
    ``definitions`` yields unigram counts over all definitions concatenated;
    ``processed_definitions`` additionally drops stopwords/articles and
    lemmatizes. A strategy with no backing data yields an empty result.
    """
    if strategy == "names":
        return TokenCounts.from_tokens(_distinct(tokenize(record.short_name)))
    if strategy == "senses":
        tokens: list[str] = []
        for sense in record.sense_words:
            tokens.extend(tokenize(sense.word))
        return TokenCounts.from_tokens(_distinct(tokens))
    if strategy == "definitions":
        tokens = []
        for definition in record.definitions:
            tokens.extend(tokenize(definition))
        return TokenCounts.from_tokens(tokens)
    if strategy == "processed_definitions":
        tokens = []
        for definition in record.definitions:
            tokens.extend(tokenize(definition))
        return TokenCounts.from_tokens(preprocess(tokens, stopwords, lemmatizer))
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def _distinct(tokens: list[str]) -> list[str]:
    return list(dict.fromkeys(tokens))
