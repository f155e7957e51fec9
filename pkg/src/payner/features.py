"""Feature templates for the CRF and the pruned feature index.

Every feature is a binary indicator named by a string with a family
prefix (``cap=``, ``lower=``, ``gaz:bank``, ``pat:iban`` ...). Besides the
token, context, lexicon and pattern families the extractor emits three
helpers: ``bias`` (always on), ``fmt=<format>`` and ``bol`` (first token on
its line, since stacked address lines in MT103 blocks carry no separator).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .formats import FieldStructure, detect_patterns, parse_structure, relative_position
from .gazetteer import Gazetteers, default_gazetteers, normalize
from .schema import AnnotatedMessage, MessageFormat
from .tokenize import TokenSequence

__all__ = [
    "extract_features",
    "extract_sequence_features",
    "message_features",
    "FeatureIndex",
    "build_feature_index",
    "shape",
    "len_bucket",
    "cap_class",
]

_ACCT = re.compile(r"\d{6,17}")
_GAZ_FAMILIES = (
    ("bank_names", "gaz:bank"),
    ("country_names", "gaz:country"),
    ("city_names", "gaz:city"),
    ("currency_codes", "gaz:ccy"),
    ("person_name_parts", "gaz:name"),
)


def cap_class(text: str) -> str | None:
    letters = [c for c in text if c.isalpha()]
    if not letters:
        return None
    if all(c.isupper() for c in letters):
        return "ALLCAPS" if len(letters) > 1 else "Init"
    if all(c.islower() for c in letters):
        return "lower"
    if letters[0].isupper() and all(c.islower() for c in letters[1:]):
        return "Init"
    return "mixed"


def len_bucket(n: int) -> str:
    if n <= 3:
        return str(n)
    if n <= 6:
        return "4-6"
    if n <= 12:
        return "7-12"
    return "13+"


def shape(text: str) -> str:
    """Character classes X/x/9 with repeats collapsed; other characters kept."""
    out = []
    for c in text:
        k = "X" if c.isupper() else "x" if c.isalpha() else "9" if c.isdigit() else c
        if not out or out[-1] != k:
            out.append(k)
    return "".join(out)


@lru_cache(maxsize=1 << 16)
def _token_features(text: str) -> tuple[str, ...]:
    feats = ["bias", f"lower={text.lower()}", f"len={len_bucket(len(text))}", f"shape={shape(text)}"]
    cap = cap_class(text)
    if cap:
        feats.append(f"cap={cap}")
    if any(c.isdigit() for c in text):
        feats.append("hasdigit")
    if any(not c.isalnum() for c in text):
        feats.append("haspunct")
    flags = detect_patterns(text)
    if flags.is_iban:
        feats.append("pat:iban")
    if flags.is_bic:
        feats.append("pat:bic")
    if flags.is_amount:
        feats.append("pat:amount")
    if flags.is_date:
        feats.append("pat:date")
    if _ACCT.fullmatch(text):
        feats.append("pat:acct")
    return tuple(feats)


def extract_sequence_features(
    tokens: TokenSequence,
    structure: FieldStructure | None = None,
    fmt: MessageFormat = MessageFormat.OTHER,
    gaz: Gazetteers | None = None,
) -> list[list[str]]:
    """Feature strings for every position of ``tokens``."""
    if gaz is None:
        gaz = default_gazetteers()
    if structure is None:
        structure = parse_structure(tokens.text, fmt) if tokens.text else FieldStructure()
    n = len(tokens)
    lowered = [t.text.lower() for t in tokens]
    norm = [normalize(t.text) for t in tokens]

    gaz_hits: list[list[str]] = [[] for _ in range(n)]
    for attr, name in _GAZ_FAMILIES:
        for a, b in getattr(gaz, attr).match_spans(norm):
            for j in range(a, b + 1):
                gaz_hits[j].append(name)

    def word(j: int) -> str:
        return "<BOS>" if j < 0 else "<EOS>" if j >= n else lowered[j]

    fmt_feat = f"fmt={fmt.value}"
    out = []
    for i, tok in enumerate(tokens):
        feats = list(_token_features(tok.text))
        feats += [f"prev={word(i - 1)}", f"next={word(i + 1)}", f"w-2={word(i - 2)}", f"w+2={word(i + 2)}"]
        region = structure.locate(tok.char_start)
        if region is None:
            feats.append("field=OTHER_FIELD")
        else:
            feats.append(f"field={region.field.name}")
            decile = min(9, int(relative_position(tok.char_start, region) * 10))
            feats.append(f"fieldpos={decile}")
        feats += gaz_hits[i]
        feats.append(fmt_feat)
        if tokens.text and tokens.line_start(i):
            feats.append("bol")
        out.append(list(dict.fromkeys(feats)))
    return out


def extract_features(
    tokens: TokenSequence,
    structure: FieldStructure,
    fmt: MessageFormat,
    gaz: Gazetteers,
    i: int,
) -> list[str]:
    if not 0 <= i < len(tokens):
        raise IndexError(f"position {i} out of range for {len(tokens)} tokens")
    return extract_sequence_features(tokens, structure, fmt, gaz)[i]


def message_features(m: AnnotatedMessage, gaz: Gazetteers | None = None) -> list[list[str]]:
    return extract_sequence_features(m.tokens, None, m.message.format, gaz)


@dataclass(frozen=True)
class FeatureIndex:
    """Bijection between retained feature strings and dense ids.

    Ids follow the lexicographic order of the feature strings.
    """

    features: tuple[str, ...]
    counts: tuple[int, ...]
    prune_threshold: float = 2
    _ids: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.features) != len(self.counts):
            raise ValueError("features and counts differ in length")
        if list(self.features) != sorted(set(self.features)):
            raise ValueError("features must be unique and sorted")
        if any(c < self.prune_threshold for c in self.counts):
            raise ValueError("retained feature below prune threshold")
        object.__setattr__(self, "_ids", {f: i for i, f in enumerate(self.features)})

    def __len__(self):
        return len(self.features)

    def __contains__(self, feat: str) -> bool:
        return feat in self._ids

    def id_of(self, feat: str) -> int:
        return self._ids[feat]

    def get(self, feat: str) -> int | None:
        return self._ids.get(feat)

    def feature(self, i: int) -> str:
        return self.features[i]

    def encode(self, feats: Iterable[str]) -> np.ndarray:
        """Ids of the indexed features among ``feats``; unknown ones are dropped."""
        ids = self._ids
        return np.array(sorted({ids[f] for f in feats if f in ids}), dtype=np.int64)

    def encode_sequence(self, seq: Sequence[Iterable[str]]) -> list[np.ndarray]:
        return [self.encode(feats) for feats in seq]


def build_feature_index(
    train: Sequence[AnnotatedMessage],
    prune_threshold: float = 2,
    gaz: Gazetteers | None = None,
    features: Sequence[Sequence[Sequence[str]]] | None = None,
) -> FeatureIndex:
    """Count feature firings over ``train`` and keep those seen ``prune_threshold`` times or more.

    ``features`` may carry precomputed per-message feature lists to avoid
    extracting twice.
    """
    if not train:
        raise ValueError("cannot build a feature index from an empty training set")
    counts: Counter[str] = Counter()
    seqs = features if features is not None else (message_features(m, gaz) for m in train)
    for seq in seqs:
        for feats in seq:
            counts.update(feats)
    kept = sorted(f for f, c in counts.items() if c >= prune_threshold)
    return FeatureIndex(tuple(kept), tuple(counts[f] for f in kept), prune_threshold)
