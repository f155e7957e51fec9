"""Rule-based tagger: regular expressions, gazetteers and field-specific rules.

Each rule proposes candidate spans. Candidates are accepted greedily by
rule priority (lower number first), then leftmost, then longest; a
candidate overlapping an accepted span is dropped.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .features import cap_class
from .formats import FieldId, FieldStructure, default_currencies, detect_patterns, parse_structure, validate_iban
from .gazetteer import Gazetteers, default_gazetteers, normalize
from .schema import EntitySpan, EntityType, PaymentMessage
from .tokenize import TokenSequence, tokenize

_ACCT = re.compile(r"\d{6,17}")
_GAZ_KINDS = {
    "gazetteer:bank_names",
    "gazetteer:country_names",
    "gazetteer:city_names",
    "gazetteer:person_name_parts",
}
RULE_KINDS = frozenset(
    {"pattern:iban", "pattern:account", "pattern:amount", "field:name", "field:remittance"} | _GAZ_KINDS
)
NAME_FIELDS = frozenset({FieldId.F50K, FieldId.F59, FieldId.Dbtr, FieldId.Cdtr})
REMITTANCE_FIELDS = frozenset({FieldId.F70, FieldId.RmtInf})


@dataclass(frozen=True)
class Rule:
    kind: str
    entity_type: EntityType
    priority: int

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown rule kind {self.kind!r}")


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        prios = [r.priority for r in self.rules]
        if len(set(prios)) != len(prios):
            raise ValueError("rule priorities must be unique")
        object.__setattr__(self, "rules", tuple(sorted(self.rules, key=lambda r: r.priority)))

    def __len__(self):
        return len(self.rules)

    def with_rule(self, rule: Rule) -> RuleSet:
        return RuleSet(self.rules + (rule,))

    def to_json(self) -> str:
        return json.dumps(
            [{"kind": r.kind, "entity_type": r.entity_type.value, "priority": r.priority} for r in self.rules],
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> RuleSet:
        items = json.loads(text)
        if not isinstance(items, list):
            raise ValueError("rule file must hold a JSON list")
        return cls(tuple(Rule(it["kind"], EntityType(it["entity_type"]), int(it["priority"])) for it in items))

    @classmethod
    def load(cls, path: str | os.PathLike) -> RuleSet:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())


DEFAULT_RULES = RuleSet(
    (
        Rule("pattern:iban", EntityType.ACCOUNT_NUMBER, 10),
        Rule("pattern:account", EntityType.ACCOUNT_NUMBER, 20),
        Rule("pattern:amount", EntityType.AMOUNT, 30),
        Rule("field:remittance", EntityType.PURPOSE, 40),
        Rule("gazetteer:bank_names", EntityType.ORGANIZATION, 50),
        Rule("field:name", EntityType.PERSON_NAME, 60),
        Rule("gazetteer:city_names", EntityType.LOCATION, 70),
        Rule("gazetteer:country_names", EntityType.LOCATION, 80),
    )
)


@lru_cache(maxsize=1 << 16)
def _flags(text: str):
    return detect_patterns(text)


def _field_blocks(field_ids: list, fields: frozenset) -> list[list[int]]:
    """Token indices of each maximal run of tokens sharing one field from ``fields``."""
    blocks: list[list[int]] = []
    prev = None
    for i, fid in enumerate(field_ids):
        if fid in fields:
            if fid is prev and blocks:
                blocks[-1].append(i)
            else:
                blocks.append([i])
        prev = fid
    return blocks


def _candidates(rule: Rule, tokens, field_ids, gaz_spans, in_gaz) -> Iterable[tuple[int, int]]:
    texts = tokens.texts
    n = len(texts)
    if rule.kind == "pattern:iban":
        return [(i, i) for i, t in enumerate(texts) if validate_iban(t)]
    if rule.kind == "pattern:account":
        return [(i, i) for i, t in enumerate(texts) if _ACCT.fullmatch(t) and not _flags(t).is_date]
    if rule.kind == "pattern:amount":
        ccy = default_currencies()
        out = []
        for i, t in enumerate(texts):
            if not _flags(t).is_amount:
                continue
            if i > 0 and texts[i - 1] in ccy:
                out.append((i - 1, i))
            elif i + 1 < n and texts[i + 1] in ccy:
                out.append((i, i + 1))
        return out
    if rule.kind in _GAZ_KINDS:
        return gaz_spans(rule.kind.split(":", 1)[1])
    if rule.kind == "field:remittance":
        return [(b[0], b[-1]) for b in _field_blocks(field_ids, REMITTANCE_FIELDS)]
    if rule.kind == "field:name":
        out = []
        for block in _field_blocks(field_ids, NAME_FIELDS):
            run: list[int] = []
            for i in block:
                ok = texts[i].isalpha() and cap_class(texts[i]) in ("Init", "ALLCAPS") and not in_gaz[i]
                if ok and (not run or not tokens.line_start(i)):
                    run.append(i)
                elif run:
                    break
            if run:
                out.append((run[0], run[-1]))
        return out
    raise ValueError(f"unknown rule kind {rule.kind!r}")


def rule_tag(
    message: PaymentMessage,
    tokens: TokenSequence | None = None,
    structure: FieldStructure | None = None,
    gaz: Gazetteers | None = None,
    rules: RuleSet = DEFAULT_RULES,
) -> list[EntitySpan]:
    if tokens is None:
        tokens = tokenize(message)
    if structure is None:
        structure = parse_structure(message.text, message.format)
    if gaz is None:
        gaz = default_gazetteers()
    if not rules.rules or not len(tokens):
        return []
    norm = [normalize(t) for t in tokens.texts]
    matches: dict[str, list[tuple[int, int]]] = {}

    def gaz_spans(name: str) -> list[tuple[int, int]]:
        if name not in matches:
            matches[name] = getattr(gaz, name).match_spans(norm)
        return matches[name]

    in_gaz = [False] * len(tokens)
    for name in ("bank_names", "country_names", "city_names"):
        for a, b in gaz_spans(name):
            for j in range(a, b + 1):
                in_gaz[j] = True
    field_ids = []
    for tok in tokens:
        region = structure.locate(tok.char_start)
        field_ids.append(region.field if region else None)

    taken = [False] * len(tokens)
    accepted = []
    for rule in rules.rules:
        cands = sorted(set(_candidates(rule, tokens, field_ids, gaz_spans, in_gaz)), key=lambda c: (c[0], -c[1]))
        for a, b in cands:
            if any(taken[a : b + 1]):
                continue
            for j in range(a, b + 1):
                taken[j] = True
            accepted.append(EntitySpan(rule.entity_type, a, b, message.id))
    return sorted(accepted)


def rule_tag_many(messages: Sequence[PaymentMessage], rules: RuleSet = DEFAULT_RULES, gaz=None) -> dict[str, list[EntitySpan]]:
    return {m.id: rule_tag(m, gaz=gaz, rules=rules) for m in messages}
