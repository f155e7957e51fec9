"""Corpus statistics, stratified splitting and file I/O.

Annotation files are CoNLL-style::

    # id = s42-000001
    # format = MT103
    # flags = multilingual,nonstandard
    # languages = de,en
    # text = ":20:REF\\n:50K:..."
    # nested = LOCATION:4-4
    :20:	O
    REF	O
    ...

followed by one blank line. ``languages``, ``text`` and ``nested`` are
optional. When ``text`` is present the reader re-tokenizes it to recover
character offsets and field context, and checks the token column against
that; without it, offsets refer to the tokens joined by single spaces.
"""

from __future__ import annotations

import io
import json
import logging
import math
import os
import random
import statistics
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

from .generator import DEFAULT_FORMAT_MIX, GeneratorConfig, apportion, generate_corpus
from .schema import (
    LABEL_INDEX,
    AnnotatedMessage,
    EntitySpan,
    EntityType,
    MessageFormat,
    PaymentMessage,
    bio_violation,
)
from .tokenize import Token, TokenSequence, tokenize_text

__all__ = [
    "GeneratorConfig",
    "DEFAULT_FORMAT_MIX",
    "generate_corpus",
    "CorpusStats",
    "corpus_stats",
    "split_corpus",
    "AnnotationFormatError",
    "write_annotations",
    "read_annotations",
    "write_raw",
    "read_raw",
]

log = logging.getLogger(__name__)

_FLAG_NAMES = ("multilingual", "nonstandard", "has_nested")


@dataclass(frozen=True)
class CorpusStats:
    format_counts: dict[MessageFormat, int]
    entity_counts: dict[EntityType, int]
    density_mean: float
    density_sd: float
    length_mean: float
    length_sd: float
    multilingual_rate: float
    nonstandard_rate: float
    nested_rate: float
    message_count: int

    def format_proportions(self) -> dict[MessageFormat, float]:
        return {f: c / self.message_count for f, c in self.format_counts.items()}

    def to_dict(self) -> dict:
        return {
            "message_count": self.message_count,
            "format_counts": {f.value: c for f, c in self.format_counts.items()},
            "entity_counts": {t.value: c for t, c in self.entity_counts.items()},
            "density_mean": self.density_mean,
            "density_sd": self.density_sd,
            "length_mean": self.length_mean,
            "length_sd": self.length_sd,
            "multilingual_rate": self.multilingual_rate,
            "nonstandard_rate": self.nonstandard_rate,
            "nested_rate": self.nested_rate,
        }


def corpus_stats(corpus: Sequence[AnnotatedMessage]) -> CorpusStats:
    """Exact counts and population moments over ``corpus``."""
    if not corpus:
        raise ValueError("corpus_stats needs at least one message")
    n = len(corpus)
    fmt = Counter(m.message.format for m in corpus)
    ents = Counter(s.entity_type for m in corpus for s in m.gold_spans)
    density = [len(m.gold_spans) for m in corpus]
    length = [len(m.message.text) for m in corpus]
    return CorpusStats(
        format_counts={f: fmt.get(f, 0) for f in MessageFormat},
        entity_counts={t: ents.get(t, 0) for t in EntityType},
        density_mean=statistics.fmean(density),
        density_sd=statistics.pstdev(density),
        length_mean=statistics.fmean(length),
        length_sd=statistics.pstdev(length),
        multilingual_rate=sum(m.message.multilingual for m in corpus) / n,
        nonstandard_rate=sum(m.message.nonstandard for m in corpus) / n,
        nested_rate=sum(m.message.has_nested for m in corpus) / n,
        message_count=n,
    )


def split_corpus(
    corpus: Sequence[AnnotatedMessage],
    ratios: tuple[float, float, float] = (0.70, 0.15, 0.15),
    seed: int = 0,
    stratify_by: str | None = "format",
) -> tuple[list[AnnotatedMessage], list[AnnotatedMessage], list[AnnotatedMessage]]:
    """Split into (train, dev, test).

    Each stratum is shuffled with ``seed`` and cut by largest-remainder
    apportionment of ``ratios``, so per-stratum sizes are exact up to
    rounding. Parts keep the original corpus order.
    """
    if len(ratios) != 3 or any(r < 0 for r in ratios) or not math.isclose(sum(ratios), 1.0, abs_tol=1e-9):
        raise ValueError(f"ratios must be three non-negative numbers summing to 1, got {ratios}")
    if not corpus:
        raise ValueError("cannot split an empty corpus")
    if stratify_by not in ("format", None):
        raise ValueError(f"unsupported stratify_by {stratify_by!r}")

    strata: dict[object, list[int]] = {}
    for i, m in enumerate(corpus):
        key = m.message.format.value if stratify_by == "format" else None
        strata.setdefault(key, []).append(i)

    rng = random.Random(seed)
    part_of = [0] * len(corpus)
    for key in sorted(strata, key=str):
        idx = strata[key][:]
        rng.shuffle(idx)
        sizes = apportion(len(idx), list(ratios))
        pos = 0
        for part, size in enumerate(sizes):
            for i in idx[pos : pos + size]:
                part_of[i] = part
            pos += size

    parts = ([], [], [])
    for i, m in enumerate(corpus):
        parts[part_of[i]].append(m)
    if not parts[1] or not parts[2]:
        log.warning("split of %d messages leaves dev=%d test=%d", len(corpus), len(parts[1]), len(parts[2]))
    return parts


# ------------------------------------------------------------ annotations


class AnnotationFormatError(ValueError):
    def __init__(self, source: str, line: int, reason: str):
        super().__init__(f"{source}:{line}: {reason}")
        self.source = source
        self.line = line
        self.reason = reason


def _span_list(spans: Iterable[EntitySpan]) -> str:
    return ";".join(f"{s.entity_type.value}:{s.token_start}-{s.token_end}" for s in spans)


def _format_record(m: AnnotatedMessage) -> str:
    msg = m.message
    out = [
        f"# id = {msg.id}",
        f"# format = {msg.format.value}",
        f"# flags = {','.join(msg.flags)}",
        f"# languages = {','.join(sorted(msg.language_tags))}",
        f"# text = {json.dumps(msg.text, ensure_ascii=False)}",
    ]
    if m.inner_spans:
        out.append(f"# nested = {_span_list(m.inner_spans)}")
    for tok, label in zip(m.tokens, m.labels):
        out.append(f"{tok.text}\t{label}")
    return "\n".join(out) + "\n\n"


def write_annotations(corpus: Iterable[AnnotatedMessage], sink: str | os.PathLike | IO[str]) -> None:
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            write_annotations(corpus, fh)
        return
    for m in corpus:
        sink.write(_format_record(m))


def dumps_annotations(corpus: Iterable[AnnotatedMessage]) -> str:
    buf = io.StringIO()
    write_annotations(corpus, buf)
    return buf.getvalue()


def _joined_tokens(texts: list[str], message_id: str) -> TokenSequence:
    toks, pos = [], 0
    for t in texts:
        toks.append(Token(t, pos, pos + len(t)))
        pos += len(t) + 1
    return TokenSequence(tuple(toks), message_id, " ".join(texts))


class _Record:
    def __init__(self, line: int):
        self.line = line
        self.headers: dict[str, tuple[int, str]] = {}
        self.rows: list[tuple[int, str, str]] = []


def _parse_nested(value: str, lineno: int, src: str, mid: str) -> tuple[EntitySpan, ...]:
    spans = []
    for item in filter(None, value.split(";")):
        try:
            name, _, rng = item.partition(":")
            a, _, b = rng.partition("-")
            spans.append(EntitySpan(EntityType(name), int(a), int(b), mid))
        except ValueError as exc:
            raise AnnotationFormatError(src, lineno, f"bad nested span {item!r}") from exc
    return tuple(spans)


def _build(rec: _Record, src: str) -> AnnotatedMessage:
    h = rec.headers
    if "id" not in h:
        raise AnnotationFormatError(src, rec.line, "record has no '# id' header")
    mid = h["id"][1]
    if "format" not in h:
        raise AnnotationFormatError(src, rec.line, f"message {mid!r} has no '# format' header")
    try:
        fmt = MessageFormat(h["format"][1])
    except ValueError:
        raise AnnotationFormatError(src, h["format"][0], f"unknown format {h['format'][1]!r}") from None
    flags = set(filter(None, h.get("flags", (0, ""))[1].split(",")))
    unknown = flags - set(_FLAG_NAMES)
    if unknown:
        raise AnnotationFormatError(src, h["flags"][0], f"unknown flags {sorted(unknown)}")
    langs = frozenset(filter(None, h["languages"][1].split(","))) if "languages" in h else frozenset({"en"})

    texts = [r[1] for r in rec.rows]
    labels = tuple(r[2] for r in rec.rows)
    for lineno, _, label in rec.rows:
        if label not in LABEL_INDEX:
            raise AnnotationFormatError(src, lineno, f"unknown label {label!r}")
    bad = bio_violation(labels)
    if bad is not None:
        raise AnnotationFormatError(
            src, rec.rows[bad][0], f"broken BIO: {labels[bad]} follows {labels[bad - 1] if bad else 'sequence start'}"
        )

    if "text" in h:
        lineno, raw = h["text"]
        try:
            text = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise AnnotationFormatError(src, lineno, f"text header is not a JSON string: {exc}") from None
        if not isinstance(text, str) or not text:
            raise AnnotationFormatError(src, lineno, "text header must be a non-empty JSON string")
        tokens = tokenize_text(text, fmt, mid)
        if tokens.texts != texts:
            n_tok, n_row = len(tokens), len(texts)
            if n_tok != n_row:
                reason = f"token/label count mismatch: text has {n_tok} tokens, record has {n_row} lines"
                where = rec.rows[min(n_tok, n_row) - 1][0] if rec.rows else lineno
            else:
                k = next(i for i, (a, b) in enumerate(zip(tokens.texts, texts)) if a != b)
                reason, where = f"token {texts[k]!r} does not match text token {tokens.texts[k]!r}", rec.rows[k][0]
            raise AnnotationFormatError(src, where, reason)
    else:
        if not texts:
            raise AnnotationFormatError(src, rec.line, f"message {mid!r} has neither tokens nor text")
        tokens = _joined_tokens(texts, mid)
        text = tokens.text

    message = PaymentMessage(
        id=mid,
        format=fmt,
        text=text,
        language_tags=langs,
        multilingual="multilingual" in flags,
        nonstandard="nonstandard" in flags,
        has_nested="has_nested" in flags,
    )
    inner = _parse_nested(h["nested"][1], h["nested"][0], src, mid) if "nested" in h else ()
    return AnnotatedMessage.from_labels(message, tokens, labels, inner)


def _records(lines: Iterable[str], src: str) -> Iterable[_Record]:
    rec = None
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            if rec is not None:
                yield rec
                rec = None
            continue
        if rec is None:
            rec = _Record(lineno)
        if "\t" in line:
            token, _, label = line.partition("\t")
            if not token or "\t" in label:
                raise AnnotationFormatError(src, lineno, "token/label count mismatch: expected '<token>\\t<label>'")
            rec.rows.append((lineno, token, label))
        elif line.startswith("#"):
            if rec.rows:
                raise AnnotationFormatError(src, lineno, "header line after token lines")
            key, sep, value = line[1:].partition("=")
            if not sep:
                raise AnnotationFormatError(src, lineno, f"malformed header {line!r}")
            key = key.strip()
            if key in rec.headers:
                raise AnnotationFormatError(src, lineno, f"duplicate header {key!r}")
            rec.headers[key] = (lineno, value.strip() if key != "text" else value.lstrip(" "))
        else:
            raise AnnotationFormatError(src, lineno, "token/label count mismatch: line has a token but no label")
    if rec is not None:
        yield rec


def read_annotations(source: str | os.PathLike | IO[str]) -> list[AnnotatedMessage]:
    """Parse an annotation file; errors carry the offending line number."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8", newline="") as fh:
            return _read(fh, str(source))
    return _read(source, getattr(source, "name", "<stream>"))


def loads_annotations(text: str) -> list[AnnotatedMessage]:
    return _read(io.StringIO(text, newline=None), "<string>")


def _read(lines: Iterable[str], src: str) -> list[AnnotatedMessage]:
    out, seen = [], {}
    for rec in _records(lines, src):
        m = _build(rec, src)
        if m.id in seen:
            raise AnnotationFormatError(src, rec.line, f"duplicate id {m.id!r} (first at line {seen[m.id]})")
        seen[m.id] = rec.line
        out.append(m)
    return out


# --------------------------------------------------------------- raw JSONL


def write_raw(messages: Iterable[PaymentMessage], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for m in messages:
            fh.write(json.dumps({"id": m.id, "format": m.format.value, "text": m.text}, ensure_ascii=False) + "\n")


def read_raw(path: str | os.PathLike) -> list[PaymentMessage]:
    out, seen = [], set()
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            m = PaymentMessage(id=str(obj["id"]), format=MessageFormat(obj["format"]), text=obj["text"])
        except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
            raise AnnotationFormatError(str(path), lineno, f"bad raw message: {exc}") from None
        if m.id in seen:
            raise AnnotationFormatError(str(path), lineno, f"duplicate id {m.id!r}")
        seen.add(m.id)
        out.append(m)
    return out
