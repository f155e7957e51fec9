"""Brute-force references used by the CRF tests.

Everything here enumerates all labelings explicitly and shares no code with
the compiled kernels.
"""

import itertools

import numpy as np

from payner.crf import CrfModel, TrainConfig
from payner.features import FeatureIndex
from payner.schema import LABELS, is_valid_bio

L = len(LABELS)


def all_labelings(n: int) -> np.ndarray:
    """(L**n, n) array of every label-index sequence, lexicographic."""
    grids = np.indices((L,) * n).reshape(n, -1).T
    return grids


def emissions_by_loop(model: CrfModel, features) -> np.ndarray:
    E = np.zeros((len(features), L))
    for i, feats in enumerate(features):
        for f in feats:
            j = model.feature_index.get(f)
            if j is not None:
                for y in range(L):
                    E[i, y] += model.emission_weights[j, y]
    return E


def path_scores(E: np.ndarray, T: np.ndarray, paths: np.ndarray) -> np.ndarray:
    n = E.shape[0]
    s = T[L, paths[:, 0]] + E[0, paths[:, 0]]
    for i in range(1, n):
        s = s + T[paths[:, i - 1], paths[:, i]] + E[i, paths[:, i]]
    return s


def score_by_loop(E, T, labels) -> float:
    total, prev = 0.0, L
    for i, y in enumerate(labels):
        total += T[prev, y] + E[i, y]
        prev = y
    return total


def brute_logz(E, T) -> float:
    s = path_scores(E, T, all_labelings(E.shape[0]))
    m = s.max()
    return float(m + np.log(np.exp(s - m).sum()))


def brute_marginals(E, T):
    n = E.shape[0]
    paths = all_labelings(n)
    s = path_scores(E, T, paths)
    p = np.exp(s - s.max())
    p /= p.sum()
    unary = np.zeros((n, L))
    for i in range(n):
        unary[i] = np.bincount(paths[:, i], weights=p, minlength=L)
    pair = np.zeros((max(n - 1, 0), L, L))
    for i in range(1, n):
        pair[i - 1] = np.bincount(paths[:, i - 1] * L + paths[:, i], weights=p, minlength=L * L).reshape(L, L)
    return unary, pair


_VALID_CACHE = {}


def valid_mask(n: int) -> np.ndarray:
    if n not in _VALID_CACHE:
        paths = all_labelings(n)
        _VALID_CACHE[n] = np.array([is_valid_bio([LABELS[k] for k in row]) for row in paths])
    return _VALID_CACHE[n]


def brute_viterbi(E, T, enforce_bio: bool):
    """Best labeling; among exact ties the lexicographically smallest wins."""
    paths = all_labelings(E.shape[0])
    s = path_scores(E, T, paths)
    if enforce_bio:
        s = np.where(valid_mask(E.shape[0]), s, -np.inf)
    k = int(np.argmax(s))  # first maximum = lexicographically smallest path
    return [LABELS[j] for j in paths[k]], float(s[k])


def random_model(rng: np.random.Generator, n_features: int = 6, scale: float = 1.0) -> CrfModel:
    names = tuple(sorted(f"f{k}" for k in range(n_features)))
    index = FeatureIndex(names, (1,) * n_features, 1)
    W = rng.normal(0.0, scale, size=(n_features, L))
    T = rng.normal(0.0, scale, size=(L + 1, L))
    return CrfModel(index, W, T, config=TrainConfig(prune_threshold=1))


def random_features(rng: np.random.Generator, model: CrfModel, n: int, unknown: bool = True):
    names = list(model.feature_index.features)
    out = []
    for _ in range(n):
        k = rng.integers(0, len(names) + 1)
        feats = list(rng.choice(names, size=k, replace=False))
        if unknown and rng.random() < 0.3:
            feats.append("never-indexed")
        out.append(feats)
    return out


def rel_err(a, b) -> float:
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def product_labelings(n: int):
    return itertools.product(range(L), repeat=n)
