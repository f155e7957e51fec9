"""Name lists used as lexicon features and by the rule-based baseline."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .formats import load_list_file
from .tokenize import token_offsets

GAZETTEER_FILES = {
    "bank_names": "banks.txt",
    "country_names": "countries.txt",
    "city_names": "cities.txt",
    "currency_codes": "currencies.txt",
    "person_name_parts": "person_names.txt",
}

_TRANSLIT = str.maketrans({"ä": "ae", "ö": "oe", "ü": "ue", "ß": "ss", "Ä": "AE", "Ö": "OE", "Ü": "UE"})


def normalize(text: str) -> str:
    return unicodedata.normalize("NFC", text).casefold()


def ascii_fold(text: str) -> str:
    """German umlaut expansion, then accent stripping (SWIFT character set)."""
    text = unicodedata.normalize("NFC", text).translate(_TRANSLIT)
    return unicodedata.normalize("NFKD", text).encode("ascii", "ignore").decode("ascii")


def _entry_keys(entry: str) -> set[tuple[str, ...]]:
    keys = set()
    for variant in {entry, ascii_fold(entry)}:
        key = tuple(normalize(variant[a:b]) for a, b in token_offsets(variant))
        if key:
            keys.add(key)
    return keys


@dataclass(frozen=True)
class Lexicon:
    """Case-insensitive multi-token name list."""

    entries: frozenset[tuple[str, ...]] = frozenset()
    max_len: int = field(default=0)
    _first: dict[str, int] = field(init=False, repr=False, compare=False)  # first token -> longest entry

    def __post_init__(self):
        first: dict[str, int] = {}
        for key in self.entries:
            first[key[0]] = max(first.get(key[0], 0), len(key))
        object.__setattr__(self, "_first", first)

    @classmethod
    def build(cls, names: Iterable[str]) -> Lexicon:
        keys = set()
        for name in names:
            keys |= _entry_keys(name)
        return cls(frozenset(keys), max((len(k) for k in keys), default=0))

    def __contains__(self, text: str) -> bool:
        return (normalize(text),) in self.entries

    def __len__(self):
        return len(self.entries)

    def match_spans(self, norm_tokens: Sequence[str]) -> list[tuple[int, int]]:
        """Leftmost-longest matches over pre-normalized tokens, as inclusive index pairs."""
        out = []
        first = self._first
        i, n = 0, len(norm_tokens)
        while i < n:
            longest = first.get(norm_tokens[i], 0)
            for k in range(min(longest, n - i), 0, -1):
                if tuple(norm_tokens[i : i + k]) in self.entries:
                    out.append((i, i + k - 1))
                    i += k
                    break
            else:
                i += 1
        return out


@dataclass(frozen=True)
class Gazetteers:
    bank_names: Lexicon
    country_names: Lexicon
    city_names: Lexicon
    currency_codes: Lexicon
    person_name_parts: Lexicon

    @classmethod
    def from_lists(cls, **lists: Iterable[str]) -> Gazetteers:
        missing = set(GAZETTEER_FILES) - set(lists)
        if missing:
            raise ValueError(f"missing gazetteer lists: {sorted(missing)}")
        return cls(**{name: Lexicon.build(lists[name]) for name in GAZETTEER_FILES})

    @classmethod
    def from_files(cls, **paths) -> Gazetteers:
        """Load the shipped lists, replacing any given by keyword with a file path."""
        lists = {}
        for name, fname in GAZETTEER_FILES.items():
            if name in paths:
                lists[name] = load_list_file(paths[name])
            else:
                text = resources.files("payner.data").joinpath(fname).read_text(encoding="utf-8")
                lists[name] = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        return cls.from_lists(**lists)


@lru_cache(maxsize=1)
def default_gazetteers() -> Gazetteers:
    return Gazetteers.from_files()
