"""Core domain types shared across the pipeline: entity types, BIO labels,
message formats, spans and annotated messages."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "EntityType",
    "MessageFormat",
    "LABELS",
    "LABEL_INDEX",
    "OUTSIDE",
    "PaymentMessage",
    "EntitySpan",
    "AnnotatedMessage",
    "parse_label",
    "is_valid_bio",
    "bio_violation",
    "extract_spans",
    "spans_to_labels",
]


class EntityType(enum.Enum):
    PERSON_NAME = "PERSON_NAME"
    ORGANIZATION = "ORGANIZATION"
    ACCOUNT_NUMBER = "ACCOUNT_NUMBER"
    LOCATION = "LOCATION"
    AMOUNT = "AMOUNT"
    PURPOSE = "PURPOSE"


class MessageFormat(enum.Enum):
    MT103 = "MT103"
    PAIN001 = "PAIN001"
    ACH = "ACH"
    SEPA = "SEPA"
    OTHER = "OTHER"


OUTSIDE = "O"

# O first, then B-/I- pairs in EntityType declaration order.
LABELS: tuple[str, ...] = (OUTSIDE,) + tuple(
    f"{kind}-{etype.value}" for etype in EntityType for kind in ("B", "I")
)
LABEL_INDEX: dict[str, int] = {label: i for i, label in enumerate(LABELS)}


def parse_label(label: str) -> tuple[str, EntityType | None]:
    """Split ``"B-AMOUNT"`` into ``("B", EntityType.AMOUNT)``; ``"O"`` gives ``("O", None)``."""
    if label == OUTSIDE:
        return OUTSIDE, None
    if label not in LABEL_INDEX:
        raise ValueError(f"unknown label {label!r}")
    kind, _, name = label.partition("-")
    return kind, EntityType(name)


@dataclass(frozen=True)
class PaymentMessage:
    id: str
    format: MessageFormat
    text: str
    language_tags: frozenset[str] = frozenset({"en"})
    multilingual: bool = False
    nonstandard: bool = False
    has_nested: bool = False

    def __post_init__(self):
        if not self.text:
            raise ValueError(f"message {self.id!r} has empty text")

    @property
    def flags(self) -> tuple[str, ...]:
        names = ("multilingual", "nonstandard", "has_nested")
        return tuple(n for n in names if getattr(self, n))


@dataclass(frozen=True)
class EntitySpan:
    """Typed span over inclusive token indices ``token_start..token_end``."""

    entity_type: EntityType
    token_start: int
    token_end: int
    message_id: str = ""

    def __post_init__(self):
        if self.token_start < 0 or self.token_end < self.token_start:
            raise ValueError(f"bad span bounds {self.token_start}..{self.token_end}")

    @property
    def key(self) -> tuple[EntityType, int, int]:
        return (self.entity_type, self.token_start, self.token_end)

    def overlaps(self, other: EntitySpan) -> bool:
        return self.token_start <= other.token_end and other.token_start <= self.token_end

    def __lt__(self, other):  # enum members are not orderable
        return (self.token_start, self.token_end, self.entity_type.value) < (
            other.token_start,
            other.token_end,
            other.entity_type.value,
        )


def bio_violation(labels: Sequence[str]) -> int | None:
    """Index of the first label that breaks BIO well-formedness, or ``None``."""
    prev_type = None
    for i, label in enumerate(labels):
        kind, etype = parse_label(label)
        if kind == "I" and etype is not prev_type:
            return i
        prev_type = etype
    return None


def is_valid_bio(labels: Sequence[str]) -> bool:
    return bio_violation(labels) is None


def extract_spans(
    labels: Sequence[str], message_id: str = "", repairs: list[int] | None = None
) -> list[EntitySpan]:
    """Decode BIO labels into spans.

    An orphan ``I-X`` (not continuing an entity of type X) opens a new span,
    as in the CoNLL scorer. If ``repairs`` is given, the index of every such
    repair is appended to it.
    """
    spans = []
    start = None
    cur = None
    for i, label in enumerate(labels):
        kind, etype = parse_label(label)
        if kind == "I" and etype is cur:
            continue
        if cur is not None:
            spans.append(EntitySpan(cur, start, i - 1, message_id))
            cur = None
        if kind == "I" and repairs is not None:
            repairs.append(i)
        if kind != OUTSIDE:
            start, cur = i, etype
    if cur is not None:
        spans.append(EntitySpan(cur, start, len(labels) - 1, message_id))
    return spans


def spans_to_labels(spans: Iterable[EntitySpan], length: int) -> list[str]:
    labels = [OUTSIDE] * length
    for span in sorted(spans):
        if span.token_end >= length:
            raise ValueError(f"span {span} exceeds sequence length {length}")
        if any(labels[j] != OUTSIDE for j in range(span.token_start, span.token_end + 1)):
            raise ValueError(f"span {span} overlaps another span")
        name = span.entity_type.value
        labels[span.token_start] = f"B-{name}"
        for j in range(span.token_start + 1, span.token_end + 1):
            labels[j] = f"I-{name}"
    return labels


@dataclass(frozen=True)
class AnnotatedMessage:
    """A message with its tokens and gold annotation.

    ``inner_spans`` holds nested entities that BIO cannot encode; they are
    kept for error analysis and never scored.
    """

    message: PaymentMessage
    tokens: "TokenSequence"  # noqa: F821
    labels: tuple[str, ...]
    gold_spans: tuple[EntitySpan, ...]
    inner_spans: tuple[EntitySpan, ...] = ()

    def __post_init__(self):
        if len(self.tokens) != len(self.labels):
            raise ValueError(
                f"message {self.message.id}: {len(self.tokens)} tokens but {len(self.labels)} labels"
            )
        bad = bio_violation(self.labels)
        if bad is not None:
            raise ValueError(f"message {self.message.id}: invalid BIO at token {bad} ({self.labels[bad]})")
        if tuple(extract_spans(self.labels, self.message.id)) != self.gold_spans:
            raise ValueError(f"message {self.message.id}: gold spans disagree with labels")

    @property
    def id(self) -> str:
        return self.message.id

    @classmethod
    def from_labels(cls, message, tokens, labels, inner_spans=()) -> AnnotatedMessage:
        labels = tuple(labels)
        return cls(message, tokens, labels, tuple(extract_spans(labels, message.id)), tuple(inner_spans))
