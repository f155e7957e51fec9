"""Structured parsing of MT103 and pain.001 text, IBAN/BIC validation,
token pattern detection and per-token format features."""

from __future__ import annotations

import enum
import re
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources
from typing import TYPE_CHECKING, Iterable

import numpy as np

from .schema import MessageFormat

if TYPE_CHECKING:
    from .tokenize import Token


class FieldId(enum.Enum):
    F20 = "20"
    F23B = "23B"
    F32A = "32A"
    F50K = "50K"
    F52A = "52A"
    F57A = "57A"
    F59 = "59"
    F70 = "70"
    F71A = "71A"
    Dbtr = "Dbtr"
    DbtrAcct = "DbtrAcct"
    Cdtr = "Cdtr"
    CdtrAcct = "CdtrAcct"
    CdtrAgt = "CdtrAgt"
    RmtInf = "RmtInf"
    InstdAmt = "InstdAmt"
    OTHER_FIELD = "OTHER"


FIELD_IDS = tuple(FieldId)
_MT103_TAGS = {f.value: f for f in FIELD_IDS[:9]}
# innermost-first priority when an element sits inside several known roles
_PAIN_ROLES = ("DbtrAcct", "CdtrAcct", "CdtrAgt", "InstdAmt", "RmtInf", "Dbtr", "Cdtr")


@dataclass(frozen=True)
class FieldRegion:
    field: FieldId
    start: int
    end: int
    attrs: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class FieldStructure:
    regions: tuple[FieldRegion, ...] = ()

    def __len__(self):
        return len(self.regions)

    def __iter__(self):
        return iter(self.regions)

    @cached_property
    def _starts(self) -> list[int]:
        return [r.start for r in self.regions]

    def locate(self, offset: int) -> FieldRegion | None:
        """Region containing character ``offset``, if any."""
        k = bisect_right(self._starts, offset) - 1
        if k >= 0 and offset < self.regions[k].end:
            return self.regions[k]
        return None


_TAG_LINE = re.compile(r"^:(\d{2}[A-Z]?):", re.M)


def parse_mt103(text: str) -> FieldStructure:
    """Split MT103 block text on ``:<tag>:`` markers at line starts.

    Each field runs from the end of its tag to the next tag (trailing
    whitespace trimmed). Text before the first tag is left uncovered.
    """
    marks = list(_TAG_LINE.finditer(text))
    regions = []
    for k, m in enumerate(marks):
        start = m.end()
        end = marks[k + 1].start() if k + 1 < len(marks) else len(text)
        while end > start and text[end - 1].isspace():
            end -= 1
        regions.append(FieldRegion(_MT103_TAGS.get(m.group(1), FieldId.OTHER_FIELD), start, end))
    return FieldStructure(tuple(regions))


_XML_TAG = re.compile(r"<(/?)([A-Za-z_][\w.:-]*)([^<>]*?)(/?)>|<[?!][^<>]*>")
_ATTR = re.compile(r'([\w:]+)\s*=\s*"([^"]*)"')


def _local(name: str) -> str:
    return name.rpartition(":")[2]


def parse_pain001(text: str) -> FieldStructure:
    """Namespace-agnostic element scan over pain.001 XML.

    Text content is assigned the innermost known payment role on the element
    path (e.g. ``Cdtr/Nm`` -> Cdtr); content of other elements becomes
    OTHER_FIELD. Input without well-formed markup degrades to one OTHER_FIELD
    region over the whole text.
    """
    whole = FieldStructure((FieldRegion(FieldId.OTHER_FIELD, 0, len(text)),)) if text else FieldStructure()
    stack: list[tuple[str, tuple]] = []
    regions = []
    pos = 0
    seen_tag = False

    def content(start, end):
        seg = text[start:end]
        lead = len(seg) - len(seg.lstrip())
        trail = len(seg.rstrip())
        if trail <= lead:
            return
        field = FieldId.OTHER_FIELD
        path = [name for name, _ in stack]
        for role in _PAIN_ROLES:
            if role in path:
                field = FieldId[role]
                break
        attrs = stack[-1][1] if stack else ()
        regions.append(FieldRegion(field, start + lead, start + trail, attrs))

    for m in _XML_TAG.finditer(text):
        if "<" in text[pos : m.start()] or ">" in text[pos : m.start()]:
            return whole
        if stack:
            content(pos, m.start())
        elif text[pos : m.start()].strip():
            return whole
        pos = m.end()
        if m.group(2) is None:
            continue
        seen_tag = True
        closing, name, rest, selfclose = m.group(1), _local(m.group(2)), m.group(3), m.group(4)
        if closing:
            if not stack or stack[-1][0] != name:
                return whole
            stack.pop()
        elif not selfclose:
            attrs = tuple((_local(k), v) for k, v in _ATTR.findall(rest))
            stack.append((name, attrs))
    tail = text[pos:]
    if not seen_tag or stack or tail.strip():
        return whole
    return FieldStructure(tuple(regions))


def parse_structure(text: str, fmt: MessageFormat) -> FieldStructure:
    """Dispatch to the structural parser for ``fmt``; free-text formats have none."""
    if fmt is MessageFormat.MT103:
        return parse_mt103(text)
    if fmt is MessageFormat.PAIN001:
        return parse_pain001(text)
    return FieldStructure()


def validate_iban(s: str) -> bool:
    """ISO 13616 check: shape plus mod-97 == 1, computed digit by digit."""
    if not 15 <= len(s) <= 34 or not s.isascii():
        return False
    if not (s[:2].isalpha() and s[:2].isupper() and s[2:4].isdigit()):
        return False
    body = s[4:]
    if not body.isalnum() or body != body.upper():
        return False
    rem = 0
    for ch in s[4:] + s[:4]:
        if ch.isdigit():
            rem = (rem * 10 + int(ch)) % 97
        else:
            rem = (rem * 100 + ord(ch) - 55) % 97
    return rem == 1


_BIC = re.compile(r"[A-Z]{4}[A-Z]{2}[A-Z0-9]{2}(?:[A-Z0-9]{3})?")


def validate_bic(s: str) -> bool:
    return _BIC.fullmatch(s) is not None


def iban_check_digits(country: str, bban: str) -> str:
    """Check digits making ``country + cd + bban`` a valid IBAN."""
    rem = 0
    for ch in bban + country + "00":
        if ch.isdigit():
            rem = (rem * 10 + int(ch)) % 97
        else:
            rem = (rem * 100 + ord(ch) - 55) % 97
    return f"{98 - rem:02d}"


def _read_list(name: str) -> list[str]:
    text = resources.files("payner.data").joinpath(name).read_text(encoding="utf-8")
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def load_list_file(path) -> list[str]:
    """One entry per line, UTF-8, ``#`` comments and blank lines ignored."""
    with open(path, encoding="utf-8") as fh:
        return [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]


@lru_cache(maxsize=1)
def default_currencies() -> frozenset[str]:
    return frozenset(_read_list("currencies.txt"))


@dataclass(frozen=True)
class PatternFlags:
    is_iban: bool = False
    is_bic: bool = False
    is_currency_code: bool = False
    is_amount: bool = False
    is_date: bool = False


_AMOUNT = re.compile(r"\d{1,3}(?:([.,'])\d{3})(?:\1\d{3})*(?:[.,]\d{1,2})?|\d+[.,]\d{1,2}")
_DATE_YYMMDD = re.compile(r"\d{2}(0[1-9]|1[0-2])(0[1-9]|[12]\d|3[01])")
_DATE_ISO = re.compile(r"(19|20)\d{2}-(0[1-9]|1[0-2])-(0[1-9]|[12]\d|3[01])")
_DATE_DMY = re.compile(r"(0[1-9]|[12]\d|3[01])[/.](0[1-9]|1[0-2])[/.](19|20)\d{2}")


def detect_patterns(token_text: str, currencies: Iterable[str] | None = None) -> PatternFlags:
    ccy = default_currencies() if currencies is None else currencies
    is_date = bool(
        _DATE_YYMMDD.fullmatch(token_text) or _DATE_ISO.fullmatch(token_text) or _DATE_DMY.fullmatch(token_text)
    )
    return PatternFlags(
        is_iban=validate_iban(token_text),
        is_bic=validate_bic(token_text),
        is_currency_code=token_text in ccy,
        is_amount=_AMOUNT.fullmatch(token_text) is not None and not is_date,
        is_date=is_date,
    )


@dataclass(frozen=True)
class FormatFeatureVector:
    field_type: FieldId
    relative_position: float
    pattern: PatternFlags
    message_type: MessageFormat

    def one_hot(self) -> np.ndarray:
        vec = np.zeros(len(FIELD_IDS))
        vec[FIELD_IDS.index(self.field_type)] = 1.0
        return vec


def relative_position(offset: int, region: FieldRegion | None) -> float:
    if region is None:
        return 0.0
    return (offset - region.start) / max(1, region.end - region.start)


def format_features(token: Token, structure: FieldStructure, fmt: MessageFormat) -> FormatFeatureVector:
    region = structure.locate(token.char_start)
    return FormatFeatureVector(
        field_type=region.field if region else FieldId.OTHER_FIELD,
        relative_position=relative_position(token.char_start, region),
        pattern=detect_patterns(token.text),
        message_type=fmt,
    )
