"""Payment-aware tokenization and character-to-token span alignment.

Rules, applied in order:

1. SWIFT field tags (``:50K:``) are single tokens.
2. For pain.001 input, XML markup is skipped; element identity survives as
   the token's ``field_context``.
3. IBAN- and BIC-shaped runs are kept whole.
4. Other alphanumeric runs split between all-caps letters and digits
   (``INV2024`` -> ``INV``, ``2024``); ``/`` and ``-`` are separate tokens.
5. Everything else splits on whitespace and punctuation, except that
   separators between digits stay inside the number (``1,234.56``).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .formats import FieldId, FieldStructure, parse_structure
from .schema import EntitySpan, EntityType, MessageFormat, PaymentMessage

log = logging.getLogger(__name__)

_MARKUP = re.compile(r"<[^<>]*>")
_CHUNK = re.compile(r"\S+")
_TAG = re.compile(r":\d{2}[A-Z]?:")
_RUN = re.compile(r"(?:\d+(?:[.,]\d+)*|[^\W\d_]+)+")
_PIECE = re.compile(r"\d+(?:[.,]\d+)*|[^\W\d_]+")
_IBAN_SHAPE = re.compile(r"[A-Z]{2}\d{2}[A-Z0-9]{11,30}")
_BIC_SHAPE = re.compile(r"[A-Z]{6}[A-Z0-9]{2}(?:[A-Z0-9]{3})?")


@dataclass(frozen=True)
class Token:
    text: str
    char_start: int
    char_end: int
    field_context: FieldId | None = None


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[Token, ...]
    message_id: str = ""
    text: str = ""

    def __len__(self):
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    @property
    def texts(self) -> list[str]:
        return [t.text for t in self.tokens]

    def line_start(self, i: int) -> bool:
        """True when token ``i`` is the first token on its line."""
        if i == 0:
            return True
        gap = self.text[self.tokens[i - 1].char_end : self.tokens[i].char_start]
        return "\n" in gap


def _split_run(run: str, offset: int) -> Iterator[tuple[int, int]]:
    if _IBAN_SHAPE.fullmatch(run) or _BIC_SHAPE.fullmatch(run):
        yield offset, offset + len(run)
        return
    pieces = [m.span() for m in _PIECE.finditer(run)]
    start = pieces[0][0]
    for (a, b), (c, d) in zip(pieces, pieces[1:]):
        left, right = run[a:b], run[c:d]
        letters = left if not left[0].isdigit() else right
        if letters.isupper():
            yield offset + start, offset + b
            start = c
    yield offset + start, offset + pieces[-1][1]


def _split_chunk(text: str, start: int, end: int) -> Iterator[tuple[int, int]]:
    m = _TAG.match(text, start, end)
    if m:
        yield m.span()
        start = m.end()
    pos = start
    while pos < end:
        m = _RUN.match(text, pos, end)
        if m:
            yield from _split_run(m.group(), pos)
            pos = m.end()
        else:
            yield pos, pos + 1
            pos += 1


def token_offsets(text: str, strip_markup: bool = False) -> list[tuple[int, int]]:
    """Half-open character offsets of every token in ``text``."""
    if strip_markup:
        segments, pos = [], 0
        for m in _MARKUP.finditer(text):
            segments.append((pos, m.start()))
            pos = m.end()
        segments.append((pos, len(text)))
    else:
        segments = [(0, len(text))]
    out = []
    for seg_start, seg_end in segments:
        for m in _CHUNK.finditer(text, seg_start, seg_end):
            out.extend(_split_chunk(text, m.start(), m.end()))
    return out


def tokenize_text(
    text: str,
    fmt: MessageFormat = MessageFormat.OTHER,
    message_id: str = "",
    structure: FieldStructure | None = None,
) -> TokenSequence:
    if not text:
        raise ValueError("cannot tokenize empty text")
    if structure is None:
        structure = parse_structure(text, fmt)
    tokens = []
    for a, b in token_offsets(text, strip_markup=fmt is MessageFormat.PAIN001):
        region = structure.locate(a)
        tokens.append(Token(text[a:b], a, b, region.field if region else None))
    return TokenSequence(tuple(tokens), message_id, text)


def tokenize(message: PaymentMessage) -> TokenSequence:
    return tokenize_text(message.text, message.format, message.id)


def align_char_spans(
    tokens: TokenSequence,
    char_spans: Iterable[tuple[int, int, EntityType]],
    stats: dict | None = None,
) -> list[EntitySpan]:
    """Project character spans onto the minimal covering token ranges.

    A span that cuts through a token is widened to the whole token; each such
    widening bumps ``stats["expanded"]`` when ``stats`` is given.
    """
    limit = len(tokens.text) if tokens.text else (tokens[-1].char_end if len(tokens) else 0)
    out = []
    prev_end = -1
    for start, end, etype in sorted(char_spans, key=lambda s: (s[0], s[1])):
        if start < 0 or end > limit or start >= end:
            raise ValueError(f"char span ({start}, {end}) outside text bounds [0, {limit})")
        if start < prev_end:
            raise ValueError(f"char span ({start}, {end}) overlaps previous span")
        prev_end = end
        covered = [i for i, t in enumerate(tokens) if t.char_start < end and t.char_end > start]
        if not covered:
            raise ValueError(f"char span ({start}, {end}) covers no token")
        first, last = covered[0], covered[-1]
        if tokens[first].char_start < start or tokens[last].char_end > end:
            log.debug("span (%d, %d) expanded to token boundaries", start, end)
            if stats is not None:
                stats["expanded"] = stats.get("expanded", 0) + 1
        out.append(EntitySpan(etype, first, last, tokens.message_id))
    return out
