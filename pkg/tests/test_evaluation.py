import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from payner.corpus import split_corpus
from payner.evaluation import (
    CrossFormatMatrix,
    Scores,
    categorize_errors,
    cross_format_eval,
    evaluate,
    load_plan,
    paired_bootstrap,
    prf,
)
from payner.crf import TrainConfig
from payner.schema import EntitySpan, EntityType, MessageFormat
from payner.taggers import CrfTagger, predict

E = EntityType


def sp(t, a, b):
    return EntitySpan(t, a, b)


# ---------------------------------------------------------------- metrics


def test_prf_fixture():
    assert prf(2, 1, 1) == (2 / 3, 2 / 3, 2 / 3)
    assert prf(3, 1, 0) == (0.75, 1.0, 2 * 0.75 / 1.75)


def test_zero_over_zero():
    assert prf(0, 0, 0) == (0.0, 0.0, 0.0)
    assert prf(0, 0, 5) == (0.0, 0.0, 0.0)
    assert prf(0, 4, 0) == (0.0, 0.0, 0.0)


@given(st.integers(0, 10_000), st.integers(0, 10_000), st.integers(0, 10_000))
def test_f1_identities(tp, fp, fn):
    p, r, f = prf(tp, fp, fn)
    assert 0 <= f <= 1
    assert (f == 0) == (tp == 0)
    if p + r:
        assert abs(f - 2 * p * r / (p + r)) <= 1e-12
    assert f <= min(2 * p, 2 * r) + 1e-12
    # exact rational form
    if tp:
        assert abs(f - 2 * tp / (2 * tp + fp + fn)) <= 1e-12


def test_scores_add():
    assert Scores(1, 2, 3) + Scores(4, 5, 6) == Scores(5, 7, 9)


# ---------------------------------------------------------------- evaluate


def test_identity_and_empty(small_corpus):
    gold = small_corpus[:50]
    rep = evaluate(gold, {m.id: list(m.gold_spans) for m in gold})
    assert rep.f1 == 1.0
    for t, s in rep.per_type.items():
        if s.tp:
            assert s.f1 == 1.0
    empty = evaluate(gold, {m.id: [] for m in gold})
    assert (empty.micro.precision, empty.micro.recall, empty.f1) == (0.0, 0.0, 0.0)
    assert empty.errors["missing"] == sum(len(m.gold_spans) for m in gold)


def test_two_of_three(small_corpus):
    from payner.corpus import loads_annotations

    (m,) = loads_annotations(
        "# id = a\n# format = OTHER\nAnna\tB-PERSON_NAME\nin\tO\nBerlin\tB-LOCATION\nEUR\tB-AMOUNT\n5.00\tI-AMOUNT\n"
    )
    pred = {"a": [sp(E.PERSON_NAME, 0, 0), sp(E.LOCATION, 2, 2), sp(E.AMOUNT, 4, 4)]}
    rep = evaluate([m], pred)
    assert (rep.micro.tp, rep.micro.fp, rep.micro.fn) == (2, 1, 1)
    assert rep.micro.precision == rep.micro.recall == rep.f1 == 2 / 3
    assert rep.errors == {"boundary": 1, "type_confusion": 0, "spurious": 0, "missing": 0}


def test_micro_is_sum_of_types(small_corpus, small_model):
    gold = small_corpus[250:]
    rep = evaluate(gold, predict(CrfTagger(small_model), gold))
    total = sum(rep.per_type.values(), Scores())
    assert total == rep.micro
    assert rep.slices["format:MT103"].tp <= rep.micro.tp
    d = json.loads(rep.to_json())
    assert d["micro"]["f1"] == rep.f1


def test_disjoint_predictions_score_zero(small_corpus):
    gold = small_corpus[:20]
    rep = evaluate(gold, {m.id: [sp(E.PURPOSE, len(m.tokens) - 1, len(m.tokens) - 1)]
                          if m.labels[-1] == "O" else [] for m in gold})  # fmt: skip
    assert rep.micro.tp == 0 and rep.f1 == 0.0


def test_id_mismatch(small_corpus):
    gold = small_corpus[:3]
    with pytest.raises(ValueError, match="missing"):
        evaluate(gold, {gold[0].id: []})
    with pytest.raises(ValueError, match="extra"):
        evaluate(gold, {**{m.id: [] for m in gold}, "zzz": []})


# ---------------------------------------------------------------- categories


def test_category_examples():
    assert categorize_errors([sp(E.PERSON_NAME, 0, 2)], [sp(E.PERSON_NAME, 0, 1)])["boundary"] == 1
    assert categorize_errors([sp(E.ORGANIZATION, 3, 4)], [sp(E.LOCATION, 3, 4)])["type_confusion"] == 1
    assert categorize_errors([sp(E.ORGANIZATION, 3, 4)], [sp(E.LOCATION, 4, 6)])["type_confusion"] == 1
    assert categorize_errors([sp(E.AMOUNT, 5, 5)], [])["missing"] == 1
    assert categorize_errors([], [sp(E.AMOUNT, 5, 5)])["spurious"] == 1
    # an overlapped but unmatched gold is not "missing"
    assert categorize_errors([sp(E.PERSON_NAME, 0, 2)], [sp(E.PERSON_NAME, 0, 1)])["missing"] == 0


# ---------------------------------------------------------------- bootstrap


@pytest.fixture(scope="module")
def boot_gold(small_corpus):
    return small_corpus[:100]


def test_bootstrap_identical(boot_gold):
    pred = {m.id: list(m.gold_spans) for m in boot_gold}
    assert paired_bootstrap(boot_gold, pred, pred, iterations=500) == 1.0


def test_bootstrap_single_iteration(boot_gold):
    perfect = {m.id: list(m.gold_spans) for m in boot_gold}
    half = {m.id: list(m.gold_spans[::2]) for m in boot_gold}
    assert paired_bootstrap(boot_gold, perfect, half, iterations=1) in (0.0, 1.0)


def test_bootstrap_deterministic_and_chunk_free(boot_gold):
    a = {m.id: list(m.gold_spans) for m in boot_gold}
    rng = np.random.default_rng(1)
    b = {m.id: [s for s in m.gold_spans if rng.random() < 0.9] for m in boot_gold}
    p1 = paired_bootstrap(boot_gold, a, b, iterations=1000, seed=3)
    assert p1 == paired_bootstrap(boot_gold, a, b, iterations=1000, seed=3, chunk=37)


def test_bootstrap_swap_exact_complement(boot_gold):
    # b misses one span in every message, so no resample can tie
    a = {m.id: list(m.gold_spans) for m in boot_gold}
    b = {m.id: list(m.gold_spans[1:]) for m in boot_gold}
    assert paired_bootstrap(boot_gold, a, b, iterations=300) == 0.0
    assert paired_bootstrap(boot_gold, b, a, iterations=300) == 1.0


def test_bootstrap_swap_complement_with_noise(boot_gold):
    rng = np.random.default_rng(7)
    a = {m.id: [s for s in m.gold_spans if rng.random() < 0.8] for m in boot_gold}
    b = {m.id: [s for s in m.gold_spans if rng.random() < 0.8] for m in boot_gold}
    pab = paired_bootstrap(boot_gold, a, b, iterations=2000, seed=5)
    pba = paired_bootstrap(boot_gold, b, a, iterations=2000, seed=5)
    assert 1.0 <= pab + pba <= 1.05  # the excess is the tie fraction


def test_bootstrap_errors(boot_gold):
    a = {m.id: [] for m in boot_gold}
    with pytest.raises(ValueError):
        paired_bootstrap(boot_gold, a, {}, iterations=10)
    with pytest.raises(ValueError):
        paired_bootstrap(boot_gold, a, a, iterations=0)


# ---------------------------------------------------------------- cross-format


def test_load_plan():
    plan = load_plan('[{"train": ["MT103"], "test": "SEPA"}]')
    assert plan == [((MessageFormat.MT103,), MessageFormat.SEPA)]
    for bad in ("[]", '[{"train": [], "test": "SEPA"}]', '[{"train": ["XML"], "test": "SEPA"}]'):
        with pytest.raises(ValueError):
            load_plan(bad)


def test_cross_format_consistency(small_corpus):
    from payner.crf import train

    cfg = TrainConfig(max_iterations=30)
    mt, sepa = MessageFormat.MT103, MessageFormat.SEPA
    matrix = cross_format_eval(small_corpus, [((mt,), mt), ((mt,), sepa)], cfg)
    assert isinstance(matrix, CrossFormatMatrix)
    assert all(0 <= c.f1 <= 1 for c in matrix.cells)
    tr, _, te = split_corpus(small_corpus, seed=0)
    tr = [m for m in tr if m.message.format is mt]
    te = [m for m in te if m.message.format is mt]
    model = train(tr, None, None, cfg)
    assert matrix[(mt,), mt] == evaluate(te, predict(CrfTagger(model), te)).f1
    assert json.loads(matrix.to_json())["cells"][1]["test_format"] == "SEPA"
    with pytest.raises(KeyError):
        matrix[(sepa,), mt]


def test_cross_format_empty_subset(small_corpus):
    only_mt = [m for m in small_corpus if m.message.format is MessageFormat.MT103]
    with pytest.raises(ValueError, match="empty subset"):
        cross_format_eval(only_mt, [((MessageFormat.MT103,), MessageFormat.SEPA)])
