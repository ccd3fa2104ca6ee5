"""Skip-gram with negative sampling over statement token sequences.

The update loop is the one hot kernel in this package: it runs per
(center, context) pair and does not vectorize without changing SGD
semantics. A numba @njit kernel carries it by default; set
VULSPG_NO_NUMBA=1 to force the pure-numpy fallback (same schedule, same
update order). benchmarks/bench_sgns.py compares the two.
"""

from __future__ import annotations

import os

import numpy as np

from vulspg.errors import ConfigError
from vulspg.embed.vocab import PAD, Vocabulary

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def deco(fn):
            return fn

        return deco


def numba_enabled() -> bool:
    if os.environ.get("VULSPG_NO_NUMBA", "") not in ("", "0"):
        return False
    return NUMBA_AVAILABLE


def _sgns_pairs_numpy(w_in, w_out, centers, contexts, negatives, lr):
    """Reference kernel: sequential SGD over precomputed pairs."""
    n_pairs = centers.shape[0]
    k = negatives.shape[1]
    for i in range(n_pairs):
        c = centers[i]
        o = contexts[i]
        v = w_in[c]
        vdelta = np.zeros_like(v)
        for t in range(k + 1):
            if t == 0:
                target, label = o, 1.0
            else:
                target = negatives[i, t - 1]
                if target == o:
                    continue
                label = 0.0
            u = w_out[target]
            x = float(np.dot(v, u))
            if x > 20.0:
                x = 20.0
            elif x < -20.0:
                x = -20.0
            g = (label - 1.0 / (1.0 + np.exp(-x))) * lr
            vdelta += g * u
            w_out[target] += g * v
        w_in[c] += vdelta


@njit(cache=True)
def _sgns_pairs_numba(w_in, w_out, centers, contexts, negatives, lr):  # pragma: no cover
    n_pairs = centers.shape[0]
    k = negatives.shape[1]
    dim = w_in.shape[1]
    vdelta = np.zeros(dim)
    for i in range(n_pairs):
        c = centers[i]
        o = contexts[i]
        for d in range(dim):
            vdelta[d] = 0.0
        for t in range(k + 1):
            if t == 0:
                target = o
                label = 1.0
            else:
                target = negatives[i, t - 1]
                if target == o:
                    continue
                label = 0.0
            x = 0.0
            for d in range(dim):
                x += w_in[c, d] * w_out[target, d]
            if x > 20.0:
                x = 20.0
            elif x < -20.0:
                x = -20.0
            g = (label - 1.0 / (1.0 + np.exp(-x))) * lr
            for d in range(dim):
                vdelta[d] += g * w_out[target, d]
            for d in range(dim):
                w_out[target, d] += g * w_in[c, d]
        for d in range(dim):
            w_in[c, d] += vdelta[d]


def build_schedule(
    encoded: list[list[int]],
    vocab_size: int,
    window: int,
    negatives: int,
    epochs: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Precompute (centers, contexts, negatives) for the whole run so the
    numba and numpy kernels consume an identical stream."""
    centers: list[int] = []
    contexts: list[int] = []
    for _ in range(epochs):
        for sent in encoded:
            n = len(sent)
            for i in range(n):
                lo = max(0, i - window)
                hi = min(n, i + window + 1)
                for j in range(lo, hi):
                    if j == i:
                        continue
                    centers.append(sent[i])
                    contexts.append(sent[j])
    centers_arr = np.asarray(centers, dtype=np.int64)
    contexts_arr = np.asarray(contexts, dtype=np.int64)

    counts = np.zeros(vocab_size, dtype=np.float64)
    for sent in encoded:
        for idx in sent:
            counts[idx] += 1.0
    noise = counts ** 0.75
    noise[PAD] = 0.0
    total = noise.sum()
    if total <= 0:
        raise ConfigError("cannot build a noise distribution from an empty corpus")
    noise /= total
    negs = rng.choice(vocab_size, size=(len(centers_arr), negatives), p=noise).astype(np.int64)
    return centers_arr, contexts_arr, negs


def train_skipgram(
    sentences: list[list[str]],
    vocab: Vocabulary | None = None,
    c: int = 64,
    window: int = 5,
    negatives: int = 5,
    epochs: int = 5,
    seed: int = 0,
    lr: float = 0.025,
) -> tuple[Vocabulary, np.ndarray]:
    """Train token embeddings; returns (vocabulary, |V| x c table).

    The PAD row is forced to zero; the UNK row keeps its seeded random
    initial value and serves every out-of-vocabulary token downstream.
    """
    sentences = [s for s in sentences if s]
    if not sentences:
        raise ConfigError("skip-gram training requires a non-empty corpus")
    if vocab is None:
        vocab = Vocabulary.build(sentences)
    rng = np.random.default_rng(seed)
    size = len(vocab)
    w_in = (rng.random((size, c)) - 0.5) / c
    w_out = np.zeros((size, c))
    encoded = [vocab.encode(s) for s in sentences]
    centers, contexts, negs = build_schedule(encoded, size, window, negatives, epochs, rng)
    kernel = _sgns_pairs_numba if numba_enabled() else _sgns_pairs_numpy
    kernel(w_in, w_out, centers, contexts, negs, lr)
    w_in[PAD, :] = 0.0
    return vocab, w_in
