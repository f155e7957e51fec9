"""Exact-match span scoring, error categories, paired bootstrap and the
cross-format experiment driver."""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .schema import AnnotatedMessage, EntitySpan, EntityType, MessageFormat, extract_spans

__all__ = [
    "extract_spans",
    "Scores",
    "EvalReport",
    "prf",
    "evaluate",
    "categorize_errors",
    "paired_bootstrap",
    "CrossFormatCell",
    "CrossFormatMatrix",
    "cross_format_eval",
    "load_plan",
]

log = logging.getLogger(__name__)

ERROR_KINDS = ("boundary", "type_confusion", "spurious", "missing")


def prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    """Precision, recall and F1 with every 0/0 taken as 0."""
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f


@dataclass(frozen=True)
class Scores:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def precision(self) -> float:
        return prf(self.tp, self.fp, self.fn)[0]

    @property
    def recall(self) -> float:
        return prf(self.tp, self.fp, self.fn)[1]

    @property
    def f1(self) -> float:
        return prf(self.tp, self.fp, self.fn)[2]

    def __add__(self, other: Scores) -> Scores:
        return Scores(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)

    def to_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn,
                "precision": self.precision, "recall": self.recall, "f1": self.f1}  # fmt: skip


@dataclass(frozen=True)
class EvalReport:
    per_type: dict[EntityType, Scores]
    micro: Scores
    errors: dict[str, int]
    message_count: int
    slices: dict[str, Scores] = field(default_factory=dict)

    @property
    def f1(self) -> float:
        return self.micro.f1

    def to_dict(self) -> dict:
        return {
            "message_count": self.message_count,
            "micro": self.micro.to_dict(),
            "per_type": {t.value: s.to_dict() for t, s in self.per_type.items()},
            "errors": dict(self.errors),
            "slices": {k: s.to_dict() for k, s in self.slices.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        m = self.micro
        return f"micro P={m.precision:.4f} R={m.recall:.4f} F1={m.f1:.4f} over {self.message_count} messages"


def _match(gold: Sequence[EntitySpan], pred: Sequence[EntitySpan]) -> dict[EntityType, Scores]:
    g = {s.key for s in gold}
    p = {s.key for s in pred}
    out = {}
    for t in EntityType:
        gt = {k for k in g if k[0] is t}
        pt = {k for k in p if k[0] is t}
        out[t] = Scores(len(gt & pt), len(pt - gt), len(gt - pt))
    return out


def categorize_errors(gold_spans: Sequence[EntitySpan], pred_spans: Sequence[EntitySpan]) -> dict[str, int]:
    """Classify every unmatched prediction and every untouched gold span."""
    counts = dict.fromkeys(ERROR_KINDS, 0)
    gold_keys = {s.key for s in gold_spans}
    pred_keys = {s.key for s in pred_spans}
    for p in pred_spans:
        if p.key in gold_keys:
            continue
        hits = [g for g in gold_spans if g.overlaps(p)]
        if not hits:
            counts["spurious"] += 1
        elif any(g.entity_type is p.entity_type for g in hits):
            counts["boundary"] += 1
        else:
            counts["type_confusion"] += 1
    for g in gold_spans:
        if g.key not in pred_keys and not any(g.overlaps(p) for p in pred_spans):
            counts["missing"] += 1
    return counts


def _check_ids(gold: Sequence[AnnotatedMessage], pred: Mapping[str, object], name: str = "pred") -> None:
    gold_ids = [m.id for m in gold]
    if len(set(gold_ids)) != len(gold_ids):
        raise ValueError("gold corpus has duplicate ids")
    missing = set(gold_ids) - set(pred)
    extra = set(pred) - set(gold_ids)
    if missing or extra:
        raise ValueError(
            f"{name} ids do not match gold: {len(missing)} missing (e.g. {sorted(missing)[:3]}), "
            f"{len(extra)} extra (e.g. {sorted(extra)[:3]})"
        )


def evaluate(gold: Sequence[AnnotatedMessage], pred: Mapping[str, Sequence[EntitySpan]]) -> EvalReport:
    _check_ids(gold, pred)
    per_type = {t: Scores() for t in EntityType}
    errors: Counter[str] = Counter(dict.fromkeys(ERROR_KINDS, 0))
    slices = {"nested": Scores(), "nonstandard": Scores(), "multilingual": Scores()}
    slices.update({f"format:{f.value}": Scores() for f in MessageFormat})
    for m in gold:
        p = pred[m.id]
        matched = _match(m.gold_spans, p)
        msg_total = Scores()
        for t, s in matched.items():
            per_type[t] = per_type[t] + s
            msg_total = msg_total + s
        errors.update(categorize_errors(m.gold_spans, p))
        if m.message.has_nested:
            slices["nested"] = slices["nested"] + msg_total
        if m.message.nonstandard:
            slices["nonstandard"] = slices["nonstandard"] + msg_total
        if m.message.multilingual:
            slices["multilingual"] = slices["multilingual"] + msg_total
        key = f"format:{m.message.format.value}"
        slices[key] = slices[key] + msg_total
    micro = sum(per_type.values(), Scores())
    return EvalReport(per_type, micro, dict(errors), len(gold), slices)


def _per_message_counts(gold: Sequence[AnnotatedMessage], pred: Mapping[str, Sequence[EntitySpan]]) -> np.ndarray:
    out = np.zeros((len(gold), 3), dtype=np.int64)
    for i, m in enumerate(gold):
        g = {s.key for s in m.gold_spans}
        p = {s.key for s in pred[m.id]}
        out[i] = (len(g & p), len(p - g), len(g - p))
    return out


def _f1_rows(c: np.ndarray) -> np.ndarray:
    tp, fp, fn = c[..., 0], c[..., 1], c[..., 2]
    denom = 2 * tp + fp + fn
    return np.where(tp > 0, 2 * tp / np.maximum(denom, 1), 0.0)


def paired_bootstrap(
    gold: Sequence[AnnotatedMessage],
    pred_a: Mapping[str, Sequence[EntitySpan]],
    pred_b: Mapping[str, Sequence[EntitySpan]],
    iterations: int = 10_000,
    seed: int = 0,
    chunk: int = 500,
) -> float:
    """Fraction of message-level resamples on which system b scores at least as well as a.

    Small values support the claim that a is better than b.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if not gold:
        raise ValueError("paired_bootstrap needs a non-empty gold corpus")
    _check_ids(gold, pred_a, "pred_a")
    _check_ids(gold, pred_b, "pred_b")
    ca = _per_message_counts(gold, pred_a)
    cb = _per_message_counts(gold, pred_b)
    rng = np.random.default_rng(seed)
    n = len(gold)
    hits = 0
    done = 0
    while done < iterations:
        k = min(chunk, iterations - done)
        idx = rng.integers(0, n, size=(k, n))
        fa = _f1_rows(ca[idx].sum(axis=1))
        fb = _f1_rows(cb[idx].sum(axis=1))
        hits += int(np.count_nonzero(fb >= fa))
        done += k
    return hits / iterations


# ------------------------------------------------------------ cross-format


@dataclass(frozen=True)
class CrossFormatCell:
    train_formats: tuple[MessageFormat, ...]
    test_format: MessageFormat
    f1: float
    train_size: int
    test_size: int

    def to_dict(self) -> dict:
        return {
            "train_formats": [f.value for f in self.train_formats],
            "test_format": self.test_format.value,
            "f1": self.f1,
            "train_size": self.train_size,
            "test_size": self.test_size,
        }


@dataclass(frozen=True)
class CrossFormatMatrix:
    cells: tuple[CrossFormatCell, ...]

    def __getitem__(self, key: tuple[Sequence[MessageFormat], MessageFormat]) -> float:
        train, test = key
        want = tuple(sorted(train, key=lambda f: f.value))
        for c in self.cells:
            if c.train_formats == want and c.test_format is test:
                return c.f1
        raise KeyError(key)

    def to_json(self) -> str:
        return json.dumps({"cells": [c.to_dict() for c in self.cells]}, indent=2, sort_keys=True)


def load_plan(text: str) -> list[tuple[tuple[MessageFormat, ...], MessageFormat]]:
    """Plan JSON: ``[{"train": ["MT103"], "test": "SEPA"}, ...]``."""
    items = json.loads(text)
    if not isinstance(items, list) or not items:
        raise ValueError("plan must be a non-empty JSON list")
    plan = []
    for it in items:
        train = tuple(MessageFormat(f) for f in it["train"])
        if not train:
            raise ValueError("plan entry has no train formats")
        plan.append((train, MessageFormat(it["test"])))
    return plan


def cross_format_eval(
    corpus: Sequence[AnnotatedMessage],
    plan: Sequence[tuple[Sequence[MessageFormat], MessageFormat]],
    train_config=None,
    gaz=None,
    seed: int = 0,
    ratios: tuple[float, float, float] = (0.70, 0.15, 0.15),
) -> CrossFormatMatrix:
    """Train one CRF per plan entry and score it on held-out messages of the test format.

    The corpus is split once (stratified by format); each entry trains on the
    train part restricted to its formats and tests on the test part
    restricted to its test format, so train and test never share a message.
    """
    from .corpus import split_corpus
    from .crf import TrainConfig, train
    from .features import message_features
    from .taggers import CrfTagger, predict

    config = train_config or TrainConfig(seed=seed)
    train_part, _, test_part = split_corpus(corpus, ratios, seed=seed)
    feats = {m.id: message_features(m, gaz) for m in list(train_part)}
    cells = []
    for train_formats, test_format in plan:
        fmts = set(train_formats)
        tr = [m for m in train_part if m.message.format in fmts]
        te = [m for m in test_part if m.message.format is test_format]
        if not tr or not te:
            raise ValueError(
                f"empty subset for plan entry train={sorted(f.value for f in fmts)} test={test_format.value}: "
                f"{len(tr)} train, {len(te)} test messages"
            )
        model = train(tr, None, gaz, config, train_features=[feats[m.id] for m in tr])
        report = evaluate(te, predict(CrfTagger(model, gaz), te))
        key = tuple(sorted(fmts, key=lambda f: f.value))
        log.info("cross-format %s -> %s: F1 %.4f", [f.value for f in key], test_format.value, report.f1)
        cells.append(CrossFormatCell(key, test_format, report.f1, len(tr), len(te)))
    return CrossFormatMatrix(tuple(cells))
