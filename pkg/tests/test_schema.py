import pytest
from hypothesis import given
from hypothesis import strategies as st

from payner.schema import (
    LABELS,
    EntitySpan,
    EntityType,
    MessageFormat,
    PaymentMessage,
    bio_violation,
    extract_spans,
    is_valid_bio,
    parse_label,
    spans_to_labels,
)


def test_label_inventory():
    assert len(EntityType) == 6
    assert len(MessageFormat) == 5
    assert len(LABELS) == 13
    assert LABELS[0] == "O"
    assert LABELS[1:3] == ("B-PERSON_NAME", "I-PERSON_NAME")
    assert LABELS[-2:] == ("B-PURPOSE", "I-PURPOSE")


def test_parse_label():
    assert parse_label("O") == ("O", None)
    assert parse_label("I-AMOUNT") == ("I", EntityType.AMOUNT)
    with pytest.raises(ValueError):
        parse_label("B-MONEY")


def test_empty_text_rejected():
    with pytest.raises(ValueError):
        PaymentMessage("x", MessageFormat.OTHER, "")


def test_bio_violations():
    assert bio_violation(["O", "I-AMOUNT"]) == 1
    assert bio_violation(["B-PERSON_NAME", "I-AMOUNT"]) == 1
    assert bio_violation(["I-LOCATION"]) == 0
    assert is_valid_bio(["B-AMOUNT", "I-AMOUNT", "B-AMOUNT", "O"])


def test_extract_spans_examples():
    (s,) = extract_spans(["B-PERSON_NAME", "I-PERSON_NAME", "O"])
    assert s.key == (EntityType.PERSON_NAME, 0, 1)
    assert extract_spans(["O", "O"]) == []


def test_orphan_inside_repaired():
    repairs = []
    (s,) = extract_spans(["I-AMOUNT", "O"], repairs=repairs)
    assert s.key == (EntityType.AMOUNT, 0, 0)
    assert repairs == [0]


def test_type_switch_inside_opens_new_span():
    repairs = []
    spans = extract_spans(["B-AMOUNT", "I-LOCATION", "I-LOCATION"], repairs=repairs)
    assert [s.key for s in spans] == [(EntityType.AMOUNT, 0, 0), (EntityType.LOCATION, 1, 2)]
    assert repairs == [1]


def test_span_bounds_checked():
    with pytest.raises(ValueError):
        EntitySpan(EntityType.AMOUNT, 3, 2)
    with pytest.raises(ValueError):
        spans_to_labels([EntitySpan(EntityType.AMOUNT, 0, 5)], 3)
    with pytest.raises(ValueError):
        spans_to_labels([EntitySpan(EntityType.AMOUNT, 0, 1), EntitySpan(EntityType.PURPOSE, 1, 2)], 3)


@st.composite
def span_lists(draw):
    n = draw(st.integers(0, 40))
    spans, pos = [], 0
    while pos < n:
        pos += draw(st.integers(0, 3))
        if pos >= n:
            break
        end = min(n - 1, pos + draw(st.integers(0, 4)))
        spans.append(EntitySpan(draw(st.sampled_from(list(EntityType))), pos, end))
        pos = end + 1
    return n, spans


@given(span_lists())
def test_spans_labels_roundtrip(case):
    n, spans = case
    labels = spans_to_labels(spans, n)
    assert is_valid_bio(labels)
    assert extract_spans(labels) == spans


@given(st.lists(st.sampled_from(LABELS), max_size=30))
def test_extract_spans_total_and_disjoint(labels):
    spans = extract_spans(labels)
    for a, b in zip(spans, spans[1:]):
        assert a.token_end < b.token_start
    # re-encoding repaired spans gives a valid sequence with the same spans
    assert extract_spans(spans_to_labels(spans, len(labels))) == spans
