import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from payner.corpus import (
    AnnotationFormatError,
    corpus_stats,
    dumps_annotations,
    loads_annotations,
    read_annotations,
    read_raw,
    split_corpus,
    write_annotations,
    write_raw,
)
from payner.generator import GeneratorConfig, generate_corpus
from payner.schema import EntityType, MessageFormat

ONE_FORMAT = {f: float(f is MessageFormat.MT103) for f in MessageFormat}


def corpus_of(n, seed=0, mix=None):
    cfg = GeneratorConfig(count=n, seed=seed, **({"format_mix": mix} if mix else {}))
    return generate_corpus(cfg)


# ------------------------------------------------------------------ stats


def test_stats_counts(small_corpus):
    st_ = corpus_stats(small_corpus)
    assert st_.message_count == 300
    assert sum(st_.format_counts.values()) == 300
    assert sum(st_.entity_counts.values()) == sum(len(m.gold_spans) for m in small_corpus)
    assert sum(st_.format_proportions().values()) == pytest.approx(1.0)
    assert set(st_.to_dict()) >= {"format_counts", "entity_counts", "density_mean", "length_mean"}


def test_stats_single_message():
    (m,) = corpus_of(1)
    s = corpus_stats([m])
    assert s.density_sd == 0.0 and s.length_sd == 0.0
    assert s.density_mean == len(m.gold_spans)


def test_stats_empty():
    with pytest.raises(ValueError):
        corpus_stats([])


# ------------------------------------------------------------------ split


def test_split_100():
    train, dev, test = split_corpus(corpus_of(100, mix=ONE_FORMAT))
    assert (len(train), len(dev), len(test)) == (70, 15, 15)


def test_split_single_message_warns(caplog):
    with caplog.at_level(logging.WARNING):
        train, dev, test = split_corpus(corpus_of(1))
    assert (len(train), len(dev), len(test)) == (1, 0, 0)
    assert "dev=0" in caplog.text


def test_split_two_formats_stratified():
    mix = {f: 0.5 if f in (MessageFormat.MT103, MessageFormat.SEPA) else 0.0 for f in MessageFormat}
    train, dev, test = split_corpus(corpus_of(20, mix=mix))
    for part, k in ((train, 7), (dev, 2), (test, 1)):
        for f in (MessageFormat.MT103, MessageFormat.SEPA):
            assert sum(m.message.format is f for m in part) == k


def test_split_rejects_bad_ratios():
    c = corpus_of(5)
    for ratios in ((0.5, 0.5), (0.6, 0.6, -0.2), (0.5, 0.2, 0.2)):
        with pytest.raises(ValueError):
            split_corpus(c, ratios)
    with pytest.raises(ValueError):
        split_corpus([])


def test_split_e2e_sizes(e2e_splits):
    train, dev, test = e2e_splits
    assert (len(train), len(dev), len(test)) == (1000, 200, 200)


@settings(max_examples=25)
@given(st.integers(1, 60), st.integers(0, 1000))
def test_split_partitions(n, seed):
    corpus = corpus_of(n, seed=seed % 7)
    parts = split_corpus(corpus, seed=seed)
    ids = [m.id for p in parts for m in p]
    assert sorted(ids) == sorted(m.id for m in corpus)
    assert split_corpus(corpus, seed=seed) == parts
    order = {m.id: i for i, m in enumerate(corpus)}
    for p in parts:
        assert [order[m.id] for m in p] == sorted(order[m.id] for m in p)


# ------------------------------------------------------------ annotations

GOOD = "# id = a\n# format = OTHER\nPay\tO\nAnna\tB-PERSON_NAME\n"


def test_minimal_record_without_text():
    (m,) = loads_annotations(GOOD)
    assert m.message.text == "Pay Anna"
    assert m.gold_spans[0].entity_type is EntityType.PERSON_NAME


def err(text):
    with pytest.raises(AnnotationFormatError) as exc:
        loads_annotations(text)
    return exc.value


@pytest.mark.parametrize(
    "text,line,reason",
    [
        ("# id = a\n# format = OTHER\nPay\tO\nAnna\tB-NAME\n", 4, "unknown label"),
        ("# id = a\n# format = OTHER\nPay\tO\nAnna\tI-PERSON_NAME\n", 4, "broken BIO"),
        ("# id = a\n# format = OTHER\nPay\tO\nAnna\n", 4, "no label"),
        ("# id = a\n# format = OTHER\nPay\tO\n# flags = x\n", 4, "header line after"),
        ("# id = a\n# id = b\n", 2, "duplicate header"),
        (GOOD + "\n" + GOOD, 6, "duplicate id"),
        ("# id = a\n# format = XML\nPay\tO\n", 2, "unknown format"),
        ('# id = a\n# format = OTHER\n# text = "Pay Anna now"\nPay\tO\nAnna\tO\n', 5, "count mismatch"),
        ('# id = a\n# format = OTHER\n# text = "Pay Bob"\nPay\tO\nAnna\tO\n', 5, "does not match"),
        ("# format = OTHER\nPay\tO\n", 1, "no '# id'"),
    ],
)
def test_annotation_errors(text, line, reason):
    e = err(text)
    assert e.line == line
    assert reason in str(e)


def test_annotation_file_roundtrip(tmp_path, small_corpus):
    p = tmp_path / "c.conll"
    write_annotations(small_corpus, p)
    assert read_annotations(p) == small_corpus


def test_raw_roundtrip(tmp_path, small_corpus):
    p = tmp_path / "raw.jsonl"
    msgs = [m.message for m in small_corpus[:20]]
    write_raw(msgs, p)
    back = read_raw(p)
    assert [(m.id, m.format, m.text) for m in back] == [(m.id, m.format, m.text) for m in msgs]


def test_raw_errors(tmp_path):
    p = tmp_path / "raw.jsonl"
    p.write_text('{"id": "a", "format": "OTHER", "text": "x"}\n{"id": "a", "format": "OTHER", "text": "y"}\n')
    with pytest.raises(AnnotationFormatError, match="duplicate"):
        read_raw(p)
    p.write_text('{"id": "a"}\n')
    with pytest.raises(AnnotationFormatError):
        read_raw(p)


@settings(max_examples=30)
@given(st.integers(0, 2**31), st.integers(1, 4))
def test_annotation_roundtrip_property(seed, n):
    corpus = corpus_of(n, seed=seed)
    text = dumps_annotations(corpus)
    back = loads_annotations(text)
    assert back == corpus
    assert dumps_annotations(back) == text


def test_single_message_degenerate_mix():
    (m,) = generate_corpus(GeneratorConfig(count=1, seed=7, format_mix=ONE_FORMAT))
    assert m.message.format is MessageFormat.MT103


def test_stats_two_formats():
    mt = corpus_of(1, mix=ONE_FORMAT)[0]
    sepa = corpus_of(1, mix={f: float(f is MessageFormat.SEPA) for f in MessageFormat})[0]
    counts = corpus_stats([mt, sepa]).format_counts
    assert counts[MessageFormat.MT103] == 1 and counts[MessageFormat.SEPA] == 1
    assert sum(counts.values()) == 2


def test_density_converges_at_5000():
    s = corpus_stats(corpus_of(5000, seed=1))
    assert 11.3 <= s.density_mean <= 13.3
    assert abs(s.nonstandard_rate - 0.15) <= 0.02
    assert abs(s.nested_rate - 0.08) <= 0.02


def test_empty_corpus_file(tmp_path):
    p = tmp_path / "empty.conll"
    write_annotations([], p)
    assert p.read_text() == ""
    assert read_annotations(p) == []


def test_two_token_record_layout():
    text = "# id = a\n# format = OTHER\nJOHN\tB-PERSON_NAME\nDOE\tI-PERSON_NAME\n"
    (m,) = loads_annotations(text)
    out = dumps_annotations([m])
    assert out.endswith("JOHN\tB-PERSON_NAME\nDOE\tI-PERSON_NAME\n\n")
    assert loads_annotations(out) == [m]
