"""Seeded synthetic generator of annotated payment messages.

Messages are assembled from format-specific templates (MT103 blocks,
pain.001 XML, SEPA key/value statements, ACH descriptors and free text).
Every entity is recorded by character offsets while the text is written, so
gold labels come from the same pass that produces the text.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping
from xml.sax.saxutils import escape

from . import _pools as P
from .formats import iban_check_digits
from .gazetteer import ascii_fold
from .schema import AnnotatedMessage, EntityType, MessageFormat, PaymentMessage, spans_to_labels
from .tokenize import align_char_spans, tokenize

E = EntityType

DEFAULT_FORMAT_MIX = {
    MessageFormat.MT103: 0.40,
    MessageFormat.PAIN001: 0.30,
    MessageFormat.ACH: 0.14,
    MessageFormat.SEPA: 0.10,
    MessageFormat.OTHER: 0.06,
}


@dataclass(frozen=True)
class GeneratorConfig:
    count: int
    format_mix: Mapping[MessageFormat, float] = field(default_factory=lambda: dict(DEFAULT_FORMAT_MIX))
    multilingual_rate: float = 0.23
    nonstandard_rate: float = 0.15
    nested_rate: float = 0.08
    density_mean: float = 12.3
    density_sd: float = 4.8
    length_mean: float = 487.0
    length_sd: float = 312.0
    seed: int = 0

    def __post_init__(self):
        if self.count <= 0:
            raise ValueError(f"count must be positive, got {self.count}")
        rates = {
            "multilingual_rate": self.multilingual_rate,
            "nonstandard_rate": self.nonstandard_rate,
            "nested_rate": self.nested_rate,
        }
        rates.update({f"format_mix[{k.value}]": v for k, v in self.format_mix.items()})
        for name, v in rates.items():
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if abs(sum(self.format_mix.values()) - 1.0) > 1e-9:
            raise ValueError(f"format_mix must sum to 1, got {sum(self.format_mix.values())}")
        if self.density_sd < 0 or self.length_sd < 0:
            raise ValueError("standard deviations must be non-negative")


# ---------------------------------------------------------------- sampling

_CORE = (
    "amount", "cdtr_name", "cdtr_acct", "dbtr_name", "purpose", "dbtr_acct",
    "cdtr_bank", "cdtr_city", "dbtr_city", "cdtr_country", "dbtr_country", "dbtr_bank",
)  # fmt: skip
_EXTRA = ("purpose", "purpose", "purpose", "intermediary", "intermediary", "charges", "charges",
          "ultimate", "dbtr_street", "cdtr_street")  # fmt: skip


def truncated_normal(rng: random.Random, mean: float, sd: float, floor: float) -> float:
    for _ in range(1000):
        x = rng.gauss(mean, sd)
        if x >= floor:
            return x
    return floor


def plan_slots(rng: random.Random, k: int) -> Counter:
    """Which entity slots a message with ``k`` entities fills."""
    if k <= len(_CORE):
        head = list(_CORE[: min(k, 3)])
        return Counter(head + rng.sample(_CORE[3:], k - len(head)))
    return Counter(list(_CORE) + [rng.choice(_EXTRA) for _ in range(k - len(_CORE))])


def apportion(total: int, weights: list[float]) -> list[int]:
    """Largest-remainder split of ``total`` into integer parts; ties go to the earlier part."""
    quotas = [total * w for w in weights]
    counts = [int(q) for q in quotas]
    order = sorted(range(len(weights)), key=lambda i: (-(quotas[i] - counts[i]), i))
    for i in order[: total - sum(counts)]:
        counts[i] += 1
    return counts


@dataclass
class _Ent:
    etype: EntityType
    text: str
    inner: tuple[EntityType, str] | None = None


@dataclass
class _Party:
    lang: str
    cc: str
    city: str
    name: _Ent | None = None
    acct: _Ent | None = None
    addr: list = field(default_factory=list)  # (kind, _Ent) with kind in street/city/country
    banks: list = field(default_factory=list)
    bic: str = ""
    postal: str = ""


@dataclass
class _Payment:
    fmt: MessageFormat
    lang: str
    caption_lang: str
    dbtr: _Party
    cdtr: _Party
    amounts: list
    purposes: list
    intermediaries: list
    ultimates: list
    ccy: str
    date: tuple[int, int, int]
    ref: str
    nonstandard: bool


_EURO = {"DE", "AT", "ES", "FR", "BE", "NL", "IT", "IE"}


def _digits(rng, n):
    return "".join(rng.choice("0123456789") for _ in range(n))


def _alnum(rng, n):
    return "".join(rng.choice("ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789") for _ in range(n))


def make_iban(rng: random.Random, cc: str, bank_code: str = "") -> str:
    bank = (bank_code or "BANK")[:4]
    bban = {
        "GB": lambda: bank + _digits(rng, 14),
        "IE": lambda: bank + _digits(rng, 14),
        "NL": lambda: bank + _digits(rng, 10),
        "DE": lambda: _digits(rng, 18),
        "AT": lambda: _digits(rng, 16),
        "CH": lambda: _digits(rng, 17),
        "ES": lambda: _digits(rng, 20),
        "FR": lambda: _digits(rng, 23),
        "BE": lambda: _digits(rng, 12),
        "IT": lambda: rng.choice("ABCDEFGHIJ") + _digits(rng, 22),
    }.get(cc, lambda: _digits(rng, 18))()
    if cc not in {"GB", "IE", "NL", "DE", "AT", "CH", "ES", "FR", "BE", "IT"}:
        cc = "DE"
    return cc + iban_check_digits(cc, bban) + bban


def make_bic(rng: random.Random, bank_code: str, cc: str) -> str:
    loc = rng.choice("ABCDEFGHIJKLMNOPQRSTUVWXYZ") + rng.choice("ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789")
    branch = rng.choice(["", "", "XXX", _alnum(rng, 3)])
    return bank_code + cc + loc + branch


def _person(rng, lang) -> str:
    first = rng.choice(P.FIRST_NAMES[lang])
    last = rng.choice(P.LAST_NAMES[lang])
    r = rng.random()
    if lang == "es" and r < 0.5:
        return f"{first} {last} {rng.choice(P.LAST_NAMES[lang])}"
    if r < 0.15:
        return f"{first} {rng.choice(P.FIRST_NAMES[lang])} {last}"
    return f"{first} {last}"


def _company(rng, lang, city: str | None = None) -> str:
    word = rng.choice(P.COMPANY_WORDS)
    sector = rng.choice(P.COMPANY_SECTORS[lang])
    suffix = rng.choice(P.COMPANY_SUFFIXES[lang])
    if city:
        return f"{word} {city} {sector} {suffix}"
    return f"{word} {sector} {suffix}" if rng.random() < 0.7 else f"{word} {suffix}"


def _bank_for(rng, cc):
    local = [b for b in P.BANKS if b[2] == cc]
    return rng.choice(local or P.BANKS)


def _purpose(rng, lang, embed: str | None = None) -> _Ent:
    tmpl = rng.choice(P.PURPOSES[lang])
    n = rng.choice([_digits(rng, 4), _digits(rng, 6), f"{rng.randint(2021, 2025)}-{_digits(rng, 3)}"])
    text = tmpl.format(n=n, month=rng.choice(P.MONTHS[lang]), year=rng.randint(2021, 2025))
    if embed:
        return _Ent(E.PURPOSE, f"{text} {embed}", (E.ORGANIZATION, embed))
    return _Ent(E.PURPOSE, text)


def _street(rng, lang) -> str:
    street, num = rng.choice(P.STREETS[lang]), rng.randint(1, 250)
    return f"{num} {street}" if lang in ("en", "fr") else f"{street} {num}"


def _postal(rng, cc) -> str:
    if cc in ("GB", "IE"):
        return ""
    if cc in ("AT", "CH", "BE"):
        return _digits(rng, 4)
    return _digits(rng, 5)


def _build_party(rng, lang, cities, slots, prefix, nest: str | None) -> _Party:
    city, cc = rng.choice(cities)
    party = _Party(lang=lang, cc=cc, city=city, postal=_postal(rng, cc))
    bank_name, bank_code, bank_cc = _bank_for(rng, cc)
    party.bic = make_bic(rng, bank_code, bank_cc)
    if slots[f"{prefix}_name"]:
        if nest == f"{prefix}_name":
            other_city = rng.choice(cities)[0]
            party.name = _Ent(E.ORGANIZATION, _company(rng, lang, other_city), (E.LOCATION, other_city))
        elif rng.random() < 0.5:
            party.name = _Ent(E.PERSON_NAME, _person(rng, lang))
        else:
            party.name = _Ent(E.ORGANIZATION, _company(rng, lang))
    if slots[f"{prefix}_acct"]:
        if cc == "US":
            party.acct = _Ent(E.ACCOUNT_NUMBER, _digits(rng, rng.randint(8, 12)))
        else:
            party.acct = _Ent(E.ACCOUNT_NUMBER, make_iban(rng, cc, bank_code))
    for _ in range(slots[f"{prefix}_street"]):
        party.addr.append(("street", _Ent(E.LOCATION, _street(rng, lang))))
    if slots[f"{prefix}_city"]:
        party.addr.append(("city", _Ent(E.LOCATION, city)))
    if slots[f"{prefix}_country"]:
        party.addr.append(("country", _Ent(E.LOCATION, P.COUNTRY_NAMES[cc][lang])))
    if slots[f"{prefix}_bank"]:
        if nest == f"{prefix}_bank":
            tmpl = rng.choice(P.NESTED_BANK_TEMPLATES[lang])
            party.banks.append(_Ent(E.ORGANIZATION, tmpl.format(city=city), (E.LOCATION, city)))
        else:
            party.banks.append(_Ent(E.ORGANIZATION, bank_name))
    return party


def _amount_value(rng) -> float:
    return round(min(rng.lognormvariate(6.5, 1.6), 9_999_999.0), 2)


def fmt_amount(value: float, style: str) -> str:
    whole, cents = f"{value:.2f}".split(".")
    grouped = f"{int(whole):,}"
    if style == "swift":
        return f"{whole},{cents}"
    if style == "us":
        return f"{grouped}.{cents}"
    if style == "eu":
        return f"{grouped.replace(',', '.')},{cents}"
    return f"{whole}.{cents}"


def _sample_payment(rng, fmt, k, multilingual, nonstandard, nested) -> tuple[_Payment, bool]:
    lang = rng.choice(["de", "es", "fr"]) if multilingual else "en"
    slots = plan_slots(rng, k)
    if fmt is MessageFormat.ACH:
        us = [c for c in P.CITIES["en"] if c[1] == "US"]
        dbtr_cities = cdtr_cities = us
        dbtr_lang = "en"
    else:
        dbtr_lang = rng.choice(["en", lang]) if multilingual else "en"
        dbtr_cities, cdtr_cities = P.CITIES[dbtr_lang], P.CITIES[lang]
    nest = None
    if nested:
        options = [s for s in ("purpose", "intermediary", "cdtr_bank", "dbtr_bank", "cdtr_name", "dbtr_name")
                   if slots[s]]  # fmt: skip
        nest = rng.choice(options) if options else None
    dbtr = _build_party(rng, dbtr_lang, dbtr_cities, slots, "dbtr", nest)
    cdtr = _build_party(rng, lang, cdtr_cities, slots, "cdtr", nest)
    if fmt is MessageFormat.ACH or cdtr.cc == "US":
        ccy = "USD"
    elif cdtr.cc in _EURO or fmt in (MessageFormat.SEPA, MessageFormat.PAIN001):
        ccy = "EUR" if rng.random() < 0.9 or fmt is MessageFormat.SEPA else rng.choice(["USD", "GBP", "CHF"])
    else:
        ccy = {"GB": "GBP", "CH": "CHF"}.get(cdtr.cc, "EUR")
    n_amounts = slots["amount"] + slots["charges"]
    amounts = [_amount_value(rng) if i == 0 else round(rng.uniform(1, 60), 2) for i in range(n_amounts)]
    purposes = []
    for i in range(slots["purpose"]):
        embed = _company(rng, lang) if (nest == "purpose" and i == 0) else None
        purposes.append(_purpose(rng, lang, embed))
    intermediaries = []
    for i in range(slots["intermediary"]):
        if nest == "intermediary" and i == 0:
            city = rng.choice(cdtr_cities)[0]
            tmpl = rng.choice(P.NESTED_BANK_TEMPLATES[lang])
            intermediaries.append((_Ent(E.ORGANIZATION, tmpl.format(city=city), (E.LOCATION, city)), ""))
        else:
            name, code, cc = rng.choice(P.BANKS)
            intermediaries.append((_Ent(E.ORGANIZATION, name), make_bic(rng, code, cc)))
    ultimates = [_Ent(E.PERSON_NAME, _person(rng, lang)) for _ in range(slots["ultimate"])]
    caption_lang = lang if multilingual and rng.random() < 0.5 else "en"
    payment = _Payment(
        fmt=fmt,
        lang=lang,
        caption_lang=caption_lang,
        dbtr=dbtr,
        cdtr=cdtr,
        amounts=amounts,
        purposes=purposes,
        intermediaries=intermediaries,
        ultimates=ultimates,
        ccy=ccy,
        date=(rng.randint(2021, 2025), rng.randint(1, 12), rng.randint(1, 28)),
        ref=rng.choice(["FT", "REF", "TRX", "PAY"]) + _digits(rng, rng.randint(6, 10)),
        nonstandard=nonstandard,
    )
    return payment, nest is not None


# ---------------------------------------------------------------- rendering


class _Writer:
    """Accumulates message text while recording entity character spans."""

    def __init__(self, rng, upper=False, fold=False, nonstandard=False, xml=False):
        self.rng = rng
        self.parts: list[str] = []
        self.pos = 0
        self.spans: list[tuple[int, int, EntityType]] = []
        self.inner: list[tuple[int, int, EntityType]] = []
        self.upper, self.fold, self.nonstandard, self.xml = upper, fold, nonstandard, xml

    def __len__(self):
        return self.pos

    def text(self, s: str):
        if self.xml:
            s = s if s.startswith("<") else escape(s)
        if self.fold:
            s = ascii_fold(s)
        if self.upper:
            s = s.upper()
        self.parts.append(s)
        self.pos += len(s)

    def raw(self, s: str):
        self.parts.append(s)
        self.pos += len(s)

    def _case(self, s: str, how: str) -> str:
        if self.fold:
            s = ascii_fold(s)
        if how == "lower":
            return s.lower()
        if how == "title":
            return s.title()
        return s.upper() if self.upper else s

    def ent(self, e: _Ent):
        how = "keep"
        if self.nonstandard and e.etype in (E.PERSON_NAME, E.ORGANIZATION, E.LOCATION, E.PURPOSE):
            how = self.rng.choice(["keep", "keep", "lower", "title"])
        s = self._case(e.text, how)
        assert "&" not in s and "<" not in s, s
        start = self.pos
        self.raw(s)
        self.spans.append((start, self.pos, e.etype))
        if e.inner is not None:
            itype, itext = e.inner
            itext = self._case(itext, how)
            off = s.find(itext)
            if off >= 0:
                self.inner.append((start + off, start + off + len(itext), itype))

    def result(self) -> str:
        return "".join(self.parts)


def _caps(p: _Payment, key: str) -> str:
    cap = P.CAPTIONS[p.caption_lang][key]
    if p.nonstandard and cap in P.ABBREVIATIONS:
        return P.ABBREVIATIONS[cap]
    return cap


def _render_mt103(p: _Payment, w: _Writer, target_len: int):
    rng = w.rng
    y, m, d = p.date
    collapse = p.nonstandard and rng.random() < 0.5
    nl = " " if collapse else "\n"
    w.text(f":20:{p.ref}\n:23B:CRED\n:32A:{y % 100:02d}{m:02d}{d:02d}")
    amounts = list(p.amounts)
    if amounts:
        w.ent(_Ent(E.AMOUNT, f"{p.ccy}{fmt_amount(amounts.pop(0), 'swift')}"))
    w.text("\n")
    if amounts and rng.random() < 0.5:
        w.text(":33B:")
        w.ent(_Ent(E.AMOUNT, f"{p.ccy}{fmt_amount(amounts.pop(0), 'swift')}"))
        w.text("\n")

    def party(tag, pt: _Party):
        if not (pt.name or pt.acct or pt.addr):
            return
        w.text(tag)
        lines = []
        if pt.acct:
            w.text("/")
            w.ent(pt.acct)
            lines.append(1)
        if pt.name:
            if lines:
                w.text(nl)
            w.ent(pt.name)
            lines.append(1)
        same_line = rng.random() < 0.4
        for kind, e in pt.addr:
            if lines:
                w.text(", " if (same_line and kind == "country") else nl)
            if kind == "city" and pt.postal:
                w.text(pt.postal + " ")
            w.ent(e)
            lines.append(1)
        w.text("\n")

    party(":50K:", p.dbtr)
    if p.dbtr.banks:
        w.text(f":52A:{p.dbtr.bic}\n")
        for b in p.dbtr.banks:
            w.ent(b)
            w.text("\n")
    for bank, bic in p.intermediaries:
        w.text(":56A:" + (bic + nl if bic else ""))
        w.ent(bank)
        w.text("\n")
    if p.cdtr.banks:
        w.text(f":57A:{p.cdtr.bic}\n")
        for b in p.cdtr.banks:
            w.ent(b)
            w.text("\n")
    party(":59:", p.cdtr)
    if p.purposes:
        w.text(":70:")
        for i, e in enumerate(p.purposes):
            if i:
                w.text(rng.choice([" / ", nl, "; "]))
            w.ent(e)
        w.text("\n")
    w.text(":71A:" + rng.choice(["SHA", "OUR", "BEN"]) + "\n")
    for a in amounts:
        w.text(":71F:")
        w.ent(_Ent(E.AMOUNT, f"{p.ccy}{fmt_amount(a, 'swift')}"))
        w.text("\n")
    if p.ultimates or len(w) < target_len:
        w.text(":72:")
        first = True
        for u in p.ultimates:
            w.text(("" if first else nl) + "/ULTBEN/")
            w.ent(u)
            first = False
        for line in _fill(rng, "MT103"):
            if len(w) >= target_len:
                break
            w.text(("" if first else "\n") + line)
            first = False
        w.text("\n")


def _render_pain(p: _Payment, w: _Writer, target_len: int):
    rng = w.rng
    y, m, d = p.date
    w.raw('<?xml version="1.0" encoding="UTF-8"?>\n')
    w.raw('<Document xmlns="urn:iso:std:iso:20022:tech:xsd:pain.001.001.03"><CstmrCdtTrfInitn>\n')
    w.raw(f"<GrpHdr><MsgId>{p.ref}</MsgId><CreDtTm>{y}-{m:02d}-{d:02d}T09:{rng.randint(10, 59)}:00</CreDtTm>")
    w.raw("<NbOfTxs>1</NbOfTxs></GrpHdr>\n")
    w.raw(f"<PmtInf><PmtInfId>{p.ref}-1</PmtInfId><PmtMtd>TRF</PmtMtd><ReqdExctnDt>{y}-{m:02d}-{d:02d}</ReqdExctnDt>\n")

    def party(tag, pt: _Party):
        if pt.name or pt.addr:
            w.raw(f"<{tag}>")
            if pt.name:
                w.raw("<Nm>")
                w.ent(pt.name)
                w.raw("</Nm>")
            if pt.addr:
                w.raw("<PstlAdr>")
                for kind, e in pt.addr:
                    el = {"street": "StrtNm", "city": "TwnNm", "country": "AdrLine"}[kind]
                    if kind == "city" and pt.postal:
                        w.raw(f"<PstCd>{pt.postal}</PstCd>")
                    w.raw(f"<{el}>")
                    w.ent(e)
                    w.raw(f"</{el}>")
                w.raw(f"<Ctry>{pt.cc}</Ctry></PstlAdr>")
            w.raw(f"</{tag}>\n")
        if pt.acct:
            w.raw(f"<{tag}Acct><Id>")
            inner = "IBAN" if pt.cc != "US" else "Othr><Id"
            w.raw(f"<{inner}>")
            w.ent(pt.acct)
            w.raw("</Id></Othr>" if pt.cc == "US" else "</IBAN>")
            w.raw(f"</Id></{tag}Acct>\n")

    def agent(tag, pt: _Party):
        w.raw(f"<{tag}><FinInstnId><BIC>{pt.bic}</BIC>")
        for b in pt.banks:
            w.raw("<Nm>")
            w.ent(b)
            w.raw("</Nm>")
        w.raw(f"</FinInstnId></{tag}>\n")

    party("Dbtr", p.dbtr)
    agent("DbtrAgt", p.dbtr)
    w.raw(f"<CdtTrfTxInf><PmtId><EndToEndId>E2E{p.ref[2:]}</EndToEndId></PmtId>\n")
    amounts = list(p.amounts)
    if amounts:
        w.raw(f'<Amt><InstdAmt Ccy="{p.ccy}">')
        w.ent(_Ent(E.AMOUNT, fmt_amount(amounts.pop(0), "plain")))
        w.raw("</InstdAmt></Amt>\n")
    for a in amounts:
        w.raw(f'<ChrgsInf><Amt Ccy="{p.ccy}">')
        w.ent(_Ent(E.AMOUNT, fmt_amount(a, "plain")))
        w.raw("</Amt></ChrgsInf>\n")
    for i, (bank, bic) in enumerate(p.intermediaries, 1):
        w.raw(f"<IntrmyAgt{i}><FinInstnId>" + (f"<BIC>{bic}</BIC>" if bic else "") + "<Nm>")
        w.ent(bank)
        w.raw(f"</Nm></FinInstnId></IntrmyAgt{i}>\n")
    agent("CdtrAgt", p.cdtr)
    party("Cdtr", p.cdtr)
    for u in p.ultimates:
        w.raw("<UltmtCdtr><Nm>")
        w.ent(u)
        w.raw("</Nm></UltmtCdtr>\n")
    if p.purposes:
        w.raw("<RmtInf>")
        for e in p.purposes:
            w.raw("<Ustrd>")
            w.ent(e)
            w.raw("</Ustrd>")
        w.raw("</RmtInf>\n")
    for tag, val in rng.sample(P.PAIN_FILLER_ELEMENTS, len(P.PAIN_FILLER_ELEMENTS)):
        if len(w) >= target_len - 60:
            break
        w.raw(f"<{tag}>{val}</{tag}>\n")
    w.raw("</CdtTrfTxInf></PmtInf></CstmrCdtTrfInitn></Document>\n")


def _render_sepa(p: _Payment, w: _Writer, target_len: int):
    rng = w.rng
    y, m, d = p.date
    sep = ":" if not (p.nonstandard and rng.random() < 0.5) else " -"
    w.text(f"{_caps(p, 'title')}\n{_caps(p, 'reference')}{sep} {p.ref}\n{_caps(p, 'date')}{sep} {d:02d}.{m:02d}.{y}\n")

    def party(key, pt: _Party):
        if pt.name:
            w.text(f"{_caps(p, key)}{sep} ")
            w.ent(pt.name)
            w.text("\n")
        if pt.addr:
            w.text(f"{_caps(p, 'address')}{sep} ")
            for i, (kind, e) in enumerate(pt.addr):
                if i:
                    w.text(", ")
                if kind == "city" and pt.postal:
                    w.text(pt.postal + " ")
                w.ent(e)
            w.text("\n")
        if pt.acct:
            w.text(f"{_caps(p, 'iban')}{sep} ")
            w.ent(pt.acct)
            w.text("\n")
        if pt.banks:
            w.text(f"BIC{sep} {pt.bic}\n{_caps(p, 'bank')}{sep} ")
            for i, b in enumerate(pt.banks):
                if i:
                    w.text(", ")
                w.ent(b)
            w.text("\n")

    party("debtor", p.dbtr)
    party("creditor", p.cdtr)
    for bank, bic in p.intermediaries:
        w.text(f"{_caps(p, 'intermediary')}{sep} ")
        w.ent(bank)
        w.text(f" ({bic})\n" if bic else "\n")
    style = rng.choice(["us", "eu"])
    for i, a in enumerate(p.amounts):
        w.text(f"{_caps(p, 'amount' if i == 0 else 'charges')}{sep} ")
        amt = fmt_amount(a, style)
        w.ent(_Ent(E.AMOUNT, f"{p.ccy} {amt}" if style == "us" else f"{amt} {p.ccy}"))
        w.text("\n")
    for u in p.ultimates:
        w.text(f"{_caps(p, 'ultimate')}{sep} ")
        w.ent(u)
        w.text("\n")
    if p.purposes:
        w.text(f"{_caps(p, 'purpose')}{sep} ")
        for i, e in enumerate(p.purposes):
            if i:
                w.text(" / ")
            w.ent(e)
        w.text("\n")
    for line in _fill(rng, "SEPA"):
        if len(w) >= target_len:
            break
        w.text(line + "\n")


def _fill(rng, fmt: str) -> list[str]:
    """Entity-free padding lines, each used at most once per message."""
    pool = P.FILLER[fmt]
    return rng.sample(pool, len(pool))


def _render_ach(p: _Payment, w: _Writer, target_len: int):
    rng = w.rng
    y, m, d = p.date
    dstr = f"{y % 100:02d}{m:02d}{d:02d}"
    w.text(rng.choice(["ACH CREDIT", "ACH DEPOSIT", "ORIG CO ACH CREDIT"]) + "\n")
    if p.dbtr.name:
        w.text("ORIG CO NAME:")
        w.ent(p.dbtr.name)
        w.text("\n")
    w.text(f"ORIG ID:{_digits(rng, 10)} DESC DATE:{dstr}\n")
    if p.purposes:
        w.text("CO ENTRY DESCR:")
        for i, e in enumerate(p.purposes):
            if i:
                w.text(" / ")
            w.ent(e)
        w.text("\n")
    w.text(f"SEC:{rng.choice(['PPD', 'CCD', 'WEB'])} TRACE#:{_digits(rng, 15)} EED:{dstr}\n")
    if p.dbtr.acct:
        w.text("ORIG ACCT:")
        w.ent(p.dbtr.acct)
        w.text("\n")
    if p.dbtr.addr:
        w.text("ORIG ADDR:")
        for i, (_, e) in enumerate(p.dbtr.addr):
            w.text(" " if i else "")
            w.ent(e)
        w.text("\n")
    if p.dbtr.banks:
        w.text(f"ODFI:{_digits(rng, 9)} ")
        for b in p.dbtr.banks:
            w.ent(b)
        w.text("\n")
    if p.cdtr.name:
        w.text("IND NAME:")
        w.ent(p.cdtr.name)
        w.text("\n")
    w.text(f"IND ID:{_digits(rng, 8)}\n")
    if p.cdtr.acct:
        w.text("ACCT:")
        w.ent(p.cdtr.acct)
        w.text("\n")
    if p.cdtr.addr:
        w.text("ADDR:")
        for i, (_, e) in enumerate(p.cdtr.addr):
            w.text(" " if i else "")
            w.ent(e)
        w.text("\n")
    if p.cdtr.banks:
        w.text(f"RDFI:{_digits(rng, 9)} ")
        for b in p.cdtr.banks:
            w.ent(b)
        w.text("\n")
    for bank, _ in p.intermediaries:
        w.text("VIA:")
        w.ent(bank)
        w.text("\n")
    for i, a in enumerate(p.amounts):
        w.text("AMOUNT:" if i == 0 else "FEE:")
        w.ent(_Ent(E.AMOUNT, f"USD {fmt_amount(a, 'us')}"))
        w.text("\n")
    for u in p.ultimates:
        w.text("FOR BENEFIT OF:")
        w.ent(u)
        w.text("\n")
    for line in _fill(rng, "ACH"):
        if len(w) >= target_len:
            break
        w.text(line.format(d10=_digits(rng, 10), d15=_digits(rng, 15), d7=_digits(rng, 7), yymmdd=dstr) + "\n")


def _render_other(p: _Payment, w: _Writer, target_len: int):
    rng = w.rng
    amounts = list(p.amounts)
    w.text(rng.choice(["Dear Sir or Madam,\n", "Payment instruction\n", "To the payments team:\n"]))
    if amounts:
        w.text("Please transfer ")
        a = amounts.pop(0)
        w.ent(_Ent(E.AMOUNT, f"{p.ccy} {fmt_amount(a, 'us')}" if rng.random() < 0.5 else f"{fmt_amount(a, 'us')} {p.ccy}"))
    else:
        w.text("Please make a transfer")
    for role, pt in (("from", p.dbtr), ("to", p.cdtr)):
        if pt.name:
            w.text(f" {role} ")
            w.ent(pt.name)
        if pt.acct:
            w.text(" (account " if pt.name else f" {role} account ")
            w.ent(pt.acct)
            w.text(")" if pt.name else "")
        for b in pt.banks:
            w.text(" held at ")
            w.ent(b)
        if pt.addr:
            w.text(" located in " if role == "to" else ", address ")
            for i, (_, e) in enumerate(pt.addr):
                if i:
                    w.text(", ")
                w.ent(e)
    w.text(".\n")
    for bank, _ in p.intermediaries:
        w.text("Route the payment via ")
        w.ent(bank)
        w.text(".\n")
    for a in amounts:
        w.text("A fee of ")
        w.ent(_Ent(E.AMOUNT, f"{p.ccy} {fmt_amount(a, 'us')}"))
        w.text(" applies.\n")
    for u in p.ultimates:
        w.text("The final beneficiary is ")
        w.ent(u)
        w.text(".\n")
    if p.purposes:
        w.text("Reference: ")
        for i, e in enumerate(p.purposes):
            if i:
                w.text("; ")
            w.ent(e)
        w.text(".\n")
    for line in _fill(rng, "OTHER"):
        if len(w) >= target_len:
            break
        w.text(line + "\n")


_RENDERERS = {
    MessageFormat.MT103: (_render_mt103, dict(upper=True, fold=True)),
    MessageFormat.PAIN001: (_render_pain, dict(xml=True)),
    MessageFormat.SEPA: (_render_sepa, {}),
    MessageFormat.ACH: (_render_ach, dict(upper=True, fold=True)),
    MessageFormat.OTHER: (_render_other, {}),
}


def _generate_one(rng: random.Random, cfg: GeneratorConfig, fmt: MessageFormat, msg_id: str) -> AnnotatedMessage:
    multilingual = rng.random() < cfg.multilingual_rate
    nonstandard = rng.random() < cfg.nonstandard_rate
    nested = rng.random() < cfg.nested_rate
    k = max(1, round(truncated_normal(rng, cfg.density_mean, cfg.density_sd, 1.0)))
    target_len = int(truncated_normal(rng, cfg.length_mean, cfg.length_sd, 40.0))
    payment, _ = _sample_payment(rng, fmt, k, multilingual, nonstandard, nested)
    render, opts = _RENDERERS[fmt]
    w = _Writer(rng, nonstandard=nonstandard, **opts)
    render(payment, w, target_len)
    text = w.result()
    langs = frozenset({"en", payment.lang, payment.dbtr.lang})
    message = PaymentMessage(
        id=msg_id,
        format=fmt,
        text=text,
        language_tags=langs,
        multilingual=multilingual,
        nonstandard=nonstandard,
        has_nested=bool(w.inner),
    )
    tokens = tokenize(message)
    spans = align_char_spans(tokens, w.spans)
    inner = align_char_spans(tokens, w.inner)
    labels = spans_to_labels(spans, len(tokens))
    return AnnotatedMessage.from_labels(message, tokens, labels, inner)


def generate_corpus(config: GeneratorConfig) -> list[AnnotatedMessage]:
    """Generate ``config.count`` annotated messages, deterministically for a given seed.

    Format counts follow ``format_mix`` exactly up to rounding (largest
    remainder); flags are independent Bernoulli draws.
    """
    rng = random.Random(config.seed)
    fmts = [f for f in MessageFormat if config.format_mix.get(f, 0.0) > 0]
    counts = apportion(config.count, [config.format_mix[f] for f in fmts])
    order = [f for f, c in zip(fmts, counts) for _ in range(c)]
    rng.shuffle(order)
    return [_generate_one(rng, config, fmt, f"s{config.seed}-{i:06d}") for i, fmt in enumerate(order)]
