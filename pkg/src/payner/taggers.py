"""Message-level taggers sharing one interface: ``tag`` and ``tag_batch``."""

from __future__ import annotations

from typing import Protocol, Sequence

from .baseline import DEFAULT_RULES, RuleSet, rule_tag
from .crf import CrfModel, decode_batch, viterbi_decode
from .features import extract_sequence_features
from .formats import parse_structure
from .gazetteer import Gazetteers, default_gazetteers
from .schema import AnnotatedMessage, EntitySpan, PaymentMessage, extract_spans
from .tokenize import TokenSequence, tokenize_text

MessageLike = PaymentMessage | AnnotatedMessage


class Tagger(Protocol):
    name: str

    def tag(self, message: MessageLike) -> list[EntitySpan]: ...

    def tag_batch(self, messages: Sequence[MessageLike]) -> list[list[EntitySpan]]: ...


def _prepare(m: MessageLike):
    if isinstance(m, AnnotatedMessage):
        msg, tokens = m.message, m.tokens
    else:
        msg = m
        tokens = None
    structure = parse_structure(msg.text, msg.format)
    if tokens is None:
        tokens = tokenize_text(msg.text, msg.format, msg.id, structure)
    return msg, tokens, structure


class CrfTagger:
    name = "crf"

    def __init__(self, model: CrfModel, gaz: Gazetteers | None = None, enforce_bio: bool = True):
        self.model = model
        self.gaz = gaz or default_gazetteers()
        self.enforce_bio = enforce_bio

    def _features(self, msg: PaymentMessage, tokens: TokenSequence, structure):
        return extract_sequence_features(tokens, structure, msg.format, self.gaz)

    def labels(self, message: MessageLike) -> list[str]:
        msg, tokens, structure = _prepare(message)
        if not len(tokens):
            return []
        return viterbi_decode(self.model, self._features(msg, tokens, structure), self.enforce_bio)

    def tag(self, message: MessageLike) -> list[EntitySpan]:
        msg = message.message if isinstance(message, AnnotatedMessage) else message
        return extract_spans(self.labels(message), msg.id)

    def tag_batch(self, messages: Sequence[MessageLike]) -> list[list[EntitySpan]]:
        prepared = [_prepare(m) for m in messages]
        feats = [self._features(msg, tok, st) for msg, tok, st in prepared]
        nonempty = [k for k, f in enumerate(feats) if len(f)]
        decoded = decode_batch(self.model, [feats[k] for k in nonempty], self.enforce_bio)
        out: list[list[EntitySpan]] = [[] for _ in messages]
        for k, labels in zip(nonempty, decoded):
            out[k] = extract_spans(labels, prepared[k][0].id)
        return out


class RuleTagger:
    name = "rules"

    def __init__(self, rules: RuleSet = DEFAULT_RULES, gaz: Gazetteers | None = None):
        self.rules = rules
        self.gaz = gaz or default_gazetteers()

    def tag(self, message: MessageLike) -> list[EntitySpan]:
        msg, tokens, structure = _prepare(message)
        return rule_tag(msg, tokens, structure, self.gaz, self.rules)

    def tag_batch(self, messages: Sequence[MessageLike]) -> list[list[EntitySpan]]:
        return [self.tag(m) for m in messages]


def predict(tagger: Tagger, messages: Sequence[MessageLike], batch_size: int = 64) -> dict[str, list[EntitySpan]]:
    out = {}
    for a in range(0, len(messages), batch_size):
        chunk = messages[a : a + batch_size]
        for m, spans in zip(chunk, tagger.tag_batch(chunk)):
            out[m.id] = spans
    return out
