"""Loading and normalization of labeled community-page texts.

A corpus file is JSON-lines: one UTF-8 record per line with string fields
``id``, ``network`` ("twitter" | "vkontakte"), ``language`` ("en" | "ru"),
``label`` and ``text``. Normalization lowercases with full Unicode case
folding, splits on whitespace, drops hashtag tokens whole, removes emoji
code points and strips punctuation-category characters.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field

from .errors import DuplicateId, IoError, ParseError

NETWORKS = ("twitter", "vkontakte")
LANGUAGES = ("en", "ru")

# Closed emoji definition: the SMP pictographic blocks, the BMP symbol and
# dingbat blocks that are overwhelmingly emoji, the handful of scattered
# U+2Bxx emoji, variation selectors, ZWJ and the combining keycap. The
# formal Unicode Emoji property is deliberately not used verbatim because it
# also covers ASCII digits, '#' and '*' (keycap bases), which must survive.
_EMOJI_RANGES = (
    (0x1F000, 0x1FAFF),
    (0x2600, 0x27BF),
    (0xFE00, 0xFE0F),
)
_EMOJI_SINGLES = frozenset(
    [0x200D, 0x20E3, 0x2B05, 0x2B06, 0x2B07, 0x2B1B, 0x2B1C, 0x2B50, 0x2B55]
)


def is_emoji_char(ch: str) -> bool:
    cp = ord(ch)
    if cp in _EMOJI_SINGLES:
        return True
    return any(lo <= cp <= hi for lo, hi in _EMOJI_RANGES)


def _is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def normalize_text(raw: str) -> list[str]:
    """Normalize raw page text into the token list used for vectorization.

    Case folds, splits on Unicode whitespace, drops any token that starts
    with '#' entirely, removes emoji code points, strips punctuation-category
    characters and discards tokens that end up empty. Total and
    deterministic; idempotent on the space-join of its own output.
    """
    tokens = []
    for token in raw.casefold().split():
        if token.startswith("#"):
            continue
        cleaned = "".join(
            ch for ch in token if not is_emoji_char(ch) and not _is_punctuation(ch)
        )
        if cleaned:
            tokens.append(cleaned)
    return tokens


@dataclass(frozen=True)
class Document:
    """One community page's text with its network/language/interest labels."""

    id: str
    network: str
    language: str
    label: str
    raw_text: str
    tokens: tuple[str, ...]

    @classmethod
    def from_raw(cls, id: str, network: str, language: str, label: str, raw_text: str) -> "Document":
        return cls(id, network, language, label, raw_text, tuple(normalize_text(raw_text)))


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of documents plus the distinct label list."""

    name: str
    documents: tuple[Document, ...]
    classes: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.documents)

    def per_class_counts(self) -> dict[str, int]:
        counts = {label: 0 for label in self.classes}
        for doc in self.documents:
            counts[doc.label] += 1
        return counts


_REQUIRED_KEYS = ("id", "network", "language", "label", "text")


def load_corpus(path: str, format: str = "jsonl") -> Corpus:
    """Load a corpus file, normalizing every record's text.

    Preserves file order; ``classes`` lists labels in order of first
    appearance. Raises :class:`ParseError` with the 1-based line number on a
    malformed record, :class:`DuplicateId` on a repeated id and
    :class:`IoError` when the file cannot be read.
    """
    if format != "jsonl":
        raise ValueError(f"unsupported corpus format {format!r}")
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise IoError(f"cannot read corpus file {path!r}: {exc}") from exc

    documents: list[Document] = []
    classes: list[str] = []
    seen_ids: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(lineno, f"invalid JSON: {exc.msg}") from exc
        if not isinstance(record, dict):
            raise ParseError(lineno, "record is not a JSON object")
        for key in _REQUIRED_KEYS:
            if key not in record:
                raise ParseError(lineno, f"missing field {key!r}")
            if not isinstance(record[key], str):
                raise ParseError(lineno, f"field {key!r} is not a string")
        if record["network"] not in NETWORKS:
            raise ParseError(lineno, f"network must be one of {NETWORKS}")
        if record["language"] not in LANGUAGES:
            raise ParseError(lineno, f"language must be one of {LANGUAGES}")
        if not record["id"]:
            raise ParseError(lineno, "empty id")
        if record["id"] in seen_ids:
            raise DuplicateId(record["id"])
        seen_ids.add(record["id"])
        documents.append(
            Document.from_raw(
                record["id"], record["network"], record["language"],
                record["label"], record["text"],
            )
        )
        if record["label"] not in classes:
            classes.append(record["label"])
    return Corpus(name=path, documents=tuple(documents), classes=tuple(classes))


@dataclass
class ValidationReport:
    """Balance and emptiness report for a corpus."""

    expected_per_class: int
    per_class_counts: dict[str, int]
    unbalanced_classes: list[str] = field(default_factory=list)
    empty_documents: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.unbalanced_classes and not self.empty_documents

    def summary(self) -> str:
        lines = [f"classes: {len(self.per_class_counts)}"]
        for label, count in self.per_class_counts.items():
            mark = "" if count == self.expected_per_class else f"  (expected {self.expected_per_class})"
            lines.append(f"  {label}: {count}{mark}")
        if self.empty_documents:
            lines.append(f"documents normalizing to no tokens: {', '.join(self.empty_documents)}")
        lines.append("result: PASS" if self.passed else "result: FAIL")
        return "\n".join(lines)


def validate_corpus(corpus: Corpus, expected_per_class: int) -> ValidationReport:
    """Check the per-class balance constraint and flag empty-token documents."""
    counts = corpus.per_class_counts()
    report = ValidationReport(expected_per_class=expected_per_class, per_class_counts=counts)
    report.unbalanced_classes = [
        label for label, count in counts.items() if count != expected_per_class
    ]
    report.empty_documents = [doc.id for doc in corpus.documents if not doc.tokens]
    return report
