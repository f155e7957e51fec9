"""First-order linear-chain CRF over the 13 BIO labels.

Scores are ``sum_i W[f, y_i]`` over the active features ``f`` at position
``i`` plus ``T[y_{i-1}, y_i]``, with a BOS row of ``T`` scoring the first
label. Training minimizes the negative log-likelihood plus
``l2_lambda * ||w||^2`` (emission and transition weights alike) from an
all-zero start.
"""

from __future__ import annotations

import json
import logging
import math
import os
import zlib
from dataclasses import asdict, dataclass, field
from typing import IO, Callable, Sequence

import numpy as np
import scipy.sparse as sp

from . import _kernels as K
from .features import FeatureIndex, build_feature_index, message_features
from .gazetteer import Gazetteers
from .lbfgs import minimize
from .schema import LABEL_INDEX, LABELS, AnnotatedMessage, extract_spans

log = logging.getLogger(__name__)

NUM_LABELS = len(LABELS)
MODEL_VERSION = 1

Features = Sequence  # per position: iterable of feature strings, or an int id array


@dataclass(frozen=True)
class TrainConfig:
    l2_lambda: float = 0.1
    max_iterations: int = 200
    prune_threshold: float = 2
    convergence_tol: float = 1e-6
    lbfgs_history: int = 10
    seed: int = 0

    def __post_init__(self):
        if not self.l2_lambda >= 0:
            raise ValueError(f"l2_lambda must be >= 0, got {self.l2_lambda}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.lbfgs_history < 1:
            raise ValueError(f"lbfgs_history must be >= 1, got {self.lbfgs_history}")
        if self.convergence_tol < 0:
            raise ValueError("convergence_tol must be >= 0")


class TrainingError(RuntimeError):
    pass


class ModelFormatError(ValueError):
    pass


def bio_mask() -> np.ndarray:
    """(L + 1, L) additive mask: -inf where a transition breaks BIO, else 0."""
    mask = np.zeros((NUM_LABELS + 1, NUM_LABELS))
    for j, label in enumerate(LABELS):
        if not label.startswith("I-"):
            continue
        etype = label[2:]
        for k in range(NUM_LABELS + 1):
            if k == NUM_LABELS or LABELS[k][2:] != etype:
                mask[k, j] = -np.inf
    return mask


_BIO_MASK = bio_mask()
_BIO_MASK.setflags(write=False)


@dataclass(frozen=True, eq=False)
class CrfModel:
    feature_index: FeatureIndex
    emission_weights: np.ndarray  # (F, L)
    transition_weights: np.ndarray  # (L + 1, L), last row is BOS
    labels: tuple[str, ...] = LABELS
    config: TrainConfig = field(default_factory=TrainConfig)

    def __post_init__(self):
        if tuple(self.labels) != LABELS:
            raise ValueError("label order must be O followed by B-/I- pairs in EntityType order")
        W = np.array(self.emission_weights, dtype=np.float64)
        T = np.array(self.transition_weights, dtype=np.float64)
        if W.shape != (len(self.feature_index), NUM_LABELS):
            raise ValueError(f"emission weights have shape {W.shape}, expected ({len(self.feature_index)}, {NUM_LABELS})")
        if T.shape != (NUM_LABELS + 1, NUM_LABELS):
            raise ValueError(f"transition weights have shape {T.shape}")
        if not (np.isfinite(W).all() and np.isfinite(T).all()):
            raise ValueError("model weights must be finite")
        W.setflags(write=False)
        T.setflags(write=False)
        object.__setattr__(self, "emission_weights", W)
        object.__setattr__(self, "transition_weights", T)
        object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def zeros(cls, index: FeatureIndex, config: TrainConfig | None = None) -> CrfModel:
        return cls(index, np.zeros((len(index), NUM_LABELS)), np.zeros((NUM_LABELS + 1, NUM_LABELS)),
                   config=config or TrainConfig())  # fmt: skip

    @property
    def num_parameters(self) -> int:
        return self.emission_weights.size + self.transition_weights.size

    def parameters(self) -> np.ndarray:
        return np.concatenate([self.emission_weights.ravel(), self.transition_weights.ravel()])

    def with_parameters(self, theta: np.ndarray) -> CrfModel:
        F = len(self.feature_index)
        W = theta[: F * NUM_LABELS].reshape(F, NUM_LABELS)
        T = theta[F * NUM_LABELS :].reshape(NUM_LABELS + 1, NUM_LABELS)
        return CrfModel(self.feature_index, W, T, self.labels, self.config)

    def encode(self, features: Features) -> list[np.ndarray]:
        out = []
        for feats in features:
            if isinstance(feats, np.ndarray) and feats.dtype.kind in "iu":
                out.append(feats)
            else:
                out.append(self.feature_index.encode(feats))
        return out

    def emissions(self, features: Features) -> np.ndarray:
        """(n, L) emission scores; unknown features contribute nothing."""
        E, _ = self.stacked_emissions([features])
        return E

    def stacked_emissions(self, sequences: Sequence[Features]) -> tuple[np.ndarray, np.ndarray]:
        """Emission scores of many sequences stacked row-wise, plus row offsets."""
        ids = self.feature_index._ids
        cols: list[int] = []
        indptr = [0]
        offsets = [0]
        for seq in sequences:
            for feats in seq:
                if isinstance(feats, np.ndarray) and feats.dtype.kind in "iu":
                    cols.extend(feats.tolist())
                else:
                    cols.extend(j for j in map(ids.get, feats) if j is not None)
                indptr.append(len(cols))
            offsets.append(len(indptr) - 1)
        n = len(indptr) - 1
        X = sp.csr_matrix((np.ones(len(cols)), np.array(cols, dtype=np.int64), np.array(indptr, dtype=np.int64)),
                          shape=(n, len(self.feature_index)))  # fmt: skip
        return np.asarray(X @ self.emission_weights), np.array(offsets, dtype=np.int64)


def _label_ids(labels: Sequence) -> np.ndarray:
    return np.array([LABEL_INDEX[y] if isinstance(y, str) else int(y) for y in labels], dtype=np.int64)


def sequence_score(model: CrfModel, features: Features, labels: Sequence) -> float:
    if len(features) != len(labels):
        raise ValueError(f"{len(features)} positions but {len(labels)} labels")
    if not len(labels):
        return 0.0
    E = model.emissions(features)
    y = _label_ids(labels)
    return float(K.gold_scores(E, np.array([0, len(y)]), y, model.transition_weights)[0])


def log_partition(model: CrfModel, features: Features) -> float:
    if not len(features):
        raise ValueError("log_partition needs a non-empty sequence")
    _, logz = K.forward(model.emissions(features), model.transition_weights)
    return float(logz)


def forward_backward(model: CrfModel, features: Features) -> tuple[np.ndarray, np.ndarray]:
    """Unary marginals (n, L) and adjacent-pair marginals (n - 1, L, L)."""
    if not len(features):
        raise ValueError("forward_backward needs a non-empty sequence")
    _, unary, pair = K.marginals(model.emissions(features), model.transition_weights)
    return unary, pair[1:, :NUM_LABELS, :]


def viterbi_decode(model: CrfModel, features: Features, enforce_bio: bool = True) -> list[str]:
    if not len(features):
        raise ValueError("viterbi_decode needs a non-empty sequence")
    T = model.transition_weights + _BIO_MASK if enforce_bio else model.transition_weights
    path, _ = K.viterbi(model.emissions(features), T)
    return [LABELS[k] for k in path]


def decode_batch(model: CrfModel, features: Sequence[Features], enforce_bio: bool = True) -> list[list[str]]:
    """Decode many sequences with one compiled call."""
    if not features:
        return []
    E, offsets = model.stacked_emissions(features)
    T = model.transition_weights + _BIO_MASK if enforce_bio else model.transition_weights
    path = K.viterbi_batch(E, offsets, T)
    return [[LABELS[k] for k in path[offsets[s] : offsets[s + 1]]] for s in range(len(features))]


# ---------------------------------------------------------------- training


class _Batch:
    """Training messages stacked into one sparse design matrix."""

    def __init__(self, index: FeatureIndex, feats: Sequence[Features], labels: Sequence[Sequence], ids: Sequence[str]):
        rows, cols = [], []
        r = 0
        offsets = [0]
        ys = []
        for seq, lab in zip(feats, labels):
            if len(seq) != len(lab):
                raise ValueError("feature and label sequences differ in length")
            for f in seq:
                enc = f if isinstance(f, np.ndarray) else index.encode(f)
                cols.append(enc)
                rows.append(np.full(len(enc), r, dtype=np.int64))
                r += 1
            offsets.append(r)
            ys.append(_label_ids(lab))
        col = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
        row = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
        self.X = sp.csr_matrix((np.ones(len(col)), (row, col)), shape=(r, len(index)))
        self.XT = self.X.T.tocsr()
        self.offsets = np.array(offsets, dtype=np.int64)
        self.y = np.concatenate(ys) if ys else np.zeros(0, dtype=np.int64)
        self.ids = list(ids)
        onehot = np.zeros((r, NUM_LABELS))
        onehot[np.arange(r), self.y] = 1.0
        self.emp_W = self.XT @ onehot
        self.emp_T = np.zeros((NUM_LABELS + 1, NUM_LABELS))
        for s in range(len(self.ids)):
            prev = NUM_LABELS
            for k in self.y[self.offsets[s] : self.offsets[s + 1]]:
                self.emp_T[prev, k] += 1
                prev = k
        self.F = len(index)
        self.last_bad: str | None = None

    def objective(self, theta: np.ndarray, l2: float) -> tuple[float, np.ndarray]:
        F, L = self.F, NUM_LABELS
        W = theta[: F * L].reshape(F, L)
        T = theta[F * L :].reshape(L + 1, L)
        E = np.asarray(self.X @ W)
        logz, unary, pair = K.batch_expectations(E, self.offsets, T)
        gold = K.gold_scores(E, self.offsets, self.y, T)
        per = logz - gold
        f = float(per.sum() + l2 * (theta @ theta))
        if not math.isfinite(f):
            bad = np.flatnonzero(~np.isfinite(per))
            self.last_bad = self.ids[bad[0]] if len(bad) else None
            return math.inf, np.zeros_like(theta)
        gW = self.XT @ unary - self.emp_W
        gT = pair - self.emp_T
        grad = np.concatenate([np.asarray(gW).ravel(), gT.ravel()]) + 2.0 * l2 * theta
        return f, grad


def nll_and_gradient(
    model: CrfModel,
    batch: Sequence[AnnotatedMessage],
    gaz: Gazetteers | None = None,
    features: Sequence[Features] | None = None,
) -> tuple[float, np.ndarray]:
    """Regularized negative log-likelihood and its gradient.

    The gradient is laid out like ``model.parameters()``.
    """
    if not batch:
        raise ValueError("nll_and_gradient needs a non-empty batch")
    if features is None:
        features = [message_features(m, gaz) for m in batch]
    data = _Batch(model.feature_index, features, [m.labels for m in batch], [m.id for m in batch])
    f, g = data.objective(model.parameters(), model.config.l2_lambda)
    if not math.isfinite(f):
        raise TrainingError(f"non-finite objective at message {data.last_bad!r}")
    return f, g


def micro_f1(gold: Sequence[Sequence[str]], pred: Sequence[Sequence[str]]) -> float:
    tp = fp = fn = 0
    for g, p in zip(gold, pred):
        gs = {s.key for s in extract_spans(g)}
        ps = {s.key for s in extract_spans(p)}
        tp += len(gs & ps)
        fp += len(ps - gs)
        fn += len(gs - ps)
    return 0.0 if tp == 0 else 2 * tp / (2 * tp + fp + fn)


def train(
    train_corpus: Sequence[AnnotatedMessage],
    dev_corpus: Sequence[AnnotatedMessage] | None = None,
    gaz: Gazetteers | None = None,
    config: TrainConfig | None = None,
    train_features: Sequence[Features] | None = None,
    dev_features: Sequence[Features] | None = None,
    callback: Callable[[dict], None] | None = None,
) -> CrfModel:
    """Fit a CRF by L-BFGS from zero weights.

    Logs one line per iteration with the objective, gradient norm and, when
    a dev corpus is given, dev micro-F1. ``callback`` receives the same
    values as a dict.
    """
    config = config or TrainConfig()
    if not train_corpus:
        raise ValueError("training corpus is empty")
    if train_features is None:
        train_features = [message_features(m, gaz) for m in train_corpus]
    index = build_feature_index(train_corpus, config.prune_threshold, gaz, features=train_features)
    if len(index) == 0:
        raise TrainingError(f"feature index is empty after pruning at threshold {config.prune_threshold}")
    log.info("training on %d messages, %d features", len(train_corpus), len(index))
    data = _Batch(index, train_features, [m.labels for m in train_corpus], [m.id for m in train_corpus])
    base = CrfModel.zeros(index, config)

    dev_enc = None
    if dev_corpus:
        if dev_features is None:
            dev_features = [message_features(m, gaz) for m in dev_corpus]
        dev_enc = [base.encode(f) for f in dev_features]

    def report(it, f, gnorm, theta):
        rec = {"iteration": it, "objective": f, "grad_norm": gnorm}
        if dev_enc is not None:
            pred = decode_batch(base.with_parameters(theta), dev_enc)
            rec["dev_f1"] = micro_f1([m.labels for m in dev_corpus], pred)
            log.info("iter %d objective %.6f grad_norm %.4g dev_f1 %.4f", it, f, gnorm, rec["dev_f1"])
        else:
            log.info("iter %d objective %.6f grad_norm %.4g", it, f, gnorm)
        if callback is not None:
            callback(rec)

    try:
        res = minimize(
            lambda th: data.objective(th, config.l2_lambda),
            base.parameters(),
            history=config.lbfgs_history,
            max_iter=config.max_iterations,
            rel_tol=config.convergence_tol,
            callback=report,
        )
    except FloatingPointError:
        raise TrainingError(f"non-finite objective at message {data.last_bad!r}") from None
    if res.message == "line search failed" and data.last_bad is not None:
        raise TrainingError(f"non-finite objective at message {data.last_bad!r}")
    log.info("stopped after %d iterations: %s", res.iterations, res.message)
    return base.with_parameters(res.x)


# ------------------------------------------------------------ persistence


def _payload(model: CrfModel) -> dict:
    cfg = asdict(model.config)
    if math.isinf(cfg["prune_threshold"]):
        cfg["prune_threshold"] = None
    return {
        "version": MODEL_VERSION,
        "labels": list(model.labels),
        "features": list(model.feature_index.features),
        "feature_counts": list(model.feature_index.counts),
        "emission_weights": [float(v) for v in model.emission_weights.ravel()],
        "transition_weights": [[float(v) for v in row] for row in model.transition_weights],
        "config": cfg,
    }


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False, allow_nan=False)


def dumps_model(model: CrfModel) -> str:
    body = _payload(model)
    body["crc32"] = zlib.crc32(_canonical(body).encode("utf-8"))
    return _canonical(body) + "\n"


def save_model(model: CrfModel, sink: str | os.PathLike | IO[str]) -> None:
    text = dumps_model(model)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sink.write(text)


def loads_model(text: str) -> CrfModel:
    try:
        body = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"corrupted model file (checksum cannot be verified): {exc}") from None
    if not isinstance(body, dict) or "crc32" not in body:
        raise ModelFormatError("corrupted model file: missing crc32")
    crc = body.pop("crc32")
    if zlib.crc32(_canonical(body).encode("utf-8")) != crc:
        raise ModelFormatError("corrupted model file: crc32 mismatch")
    if body.get("version") != MODEL_VERSION:
        raise ModelFormatError(f"unsupported model version {body.get('version')!r}, expected {MODEL_VERSION}")
    try:
        cfg = dict(body["config"])
        if cfg.get("prune_threshold") is None:
            cfg["prune_threshold"] = math.inf
        config = TrainConfig(**cfg)
        index = FeatureIndex(tuple(body["features"]), tuple(body["feature_counts"]), config.prune_threshold)
        W = np.array(body["emission_weights"], dtype=np.float64).reshape(len(index), NUM_LABELS)
        T = np.array(body["transition_weights"], dtype=np.float64)
        return CrfModel(index, W, T, tuple(body["labels"]), config)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model file: {exc}") from None


def load_model(source: str | os.PathLike | IO[str]) -> CrfModel:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return loads_model(fh.read())
    return loads_model(source.read())


def model_size_bytes(model: CrfModel) -> int:
    return len(dumps_model(model).encode("utf-8"))


__all__ = [
    "TrainConfig",
    "CrfModel",
    "TrainingError",
    "ModelFormatError",
    "bio_mask",
    "sequence_score",
    "log_partition",
    "forward_backward",
    "viterbi_decode",
    "decode_batch",
    "nll_and_gradient",
    "micro_f1",
    "train",
    "save_model",
    "load_model",
    "dumps_model",
    "loads_model",
    "model_size_bytes",
]
