"""Skip-gram word embeddings with negative sampling, plus document pooling.

Training is single-threaded and deterministic: all randomness (window
shrinking, negative draws, optional subsampling) comes from a 64-bit linear
congruential generator seeded from ``EmbeddingConfig.seed``, so identical
inputs give byte-identical tables.
"""
from __future__ import annotations

import math
import struct
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from lingaug import ConfigError, DataError
from lingaug.textproc import CleanDocument

_TABLE_SIZE = 1_000_000
_BINARY_MAGIC = b"W2VB"
MIN_LR = 1e-4


@dataclass(frozen=True)
class EmbeddingConfig:
    window: int = 7
    dim: int = 300
    epochs: int = 16
    negative: int = 5
    min_count: int = 5
    initial_lr: float = 0.025
    seed: int = 1
    subsample_t: float | None = None

    def __post_init__(self):
        for name in ("window", "dim", "negative", "min_count"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"embedding {name} must be a positive integer, got {value!r}")
        if not isinstance(self.epochs, int) or self.epochs < 0:
            raise ConfigError(f"embedding epochs must be a non-negative integer, got {self.epochs!r}")
        if not self.initial_lr > 0:
            raise ConfigError("embedding initial_lr must be positive")
        if self.subsample_t is not None and not self.subsample_t > 0:
            raise ConfigError("embedding subsample_t must be positive when set")


@dataclass(frozen=True)
class Vocab:
    tokens: tuple[str, ...]
    counts: tuple[int, ...]
    index: dict[str, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.tokens)

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.tokens, self.counts))


def _token_lists(corpus: Iterable[CleanDocument | Sequence[str]]) -> list[Sequence[str]]:
    return [doc.tokens if isinstance(doc, CleanDocument) else doc for doc in corpus]


def build_vocab(corpus: Iterable[CleanDocument | Sequence[str]], min_count: int = 5) -> Vocab:
    """Count tokens and keep those seen ``min_count`` times or more.

    Index order is descending count, ties broken lexicographically.
    """
    counter: Counter[str] = Counter()
    for tokens in _token_lists(corpus):
        counter.update(tokens)
    kept = sorted(((t, c) for t, c in counter.items() if c >= min_count), key=lambda tc: (-tc[1], tc[0]))
    if not kept:
        raise DataError(f"no token occurs at least min_count={min_count} times")
    tokens = tuple(t for t, _ in kept)
    return Vocab(tokens, tuple(c for _, c in kept), {t: i for i, t in enumerate(tokens)})


@dataclass
class EmbeddingTable:
    tokens: list[str]
    vectors: np.ndarray  # (vocab_size, dim) float32
    counts: list[int] | None = None
    epoch_losses: list[float] = field(default_factory=list)

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.tokens):
            raise DataError("embedding table shape does not match its vocabulary")
        self.index = {t: i for i, t in enumerate(self.tokens)}

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def __getitem__(self, token: str) -> np.ndarray:
        return self.vectors[self.index[token]]

    def save_text(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"{len(self.tokens)} {self.dim}\n")
            for tok, vec in zip(self.tokens, self.vectors):
                fh.write(tok + " " + " ".join(f"{float(v):.9g}" for v in vec) + "\n")

    def save_binary(self, path: str | Path) -> None:
        """``b"W2VB"``, uint32 vocab size, uint32 dim, then per token a uint32
        byte length, the UTF-8 bytes and ``dim`` float32 values, all little-endian."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        data = self.vectors.astype("<f4", copy=False)
        with path.open("wb") as fh:
            fh.write(_BINARY_MAGIC + struct.pack("<II", len(self.tokens), self.dim))
            for tok, vec in zip(self.tokens, data):
                raw = tok.encode("utf-8")
                fh.write(struct.pack("<I", len(raw)) + raw + vec.tobytes())

    @classmethod
    def load(cls, path: str | Path) -> "EmbeddingTable":
        path = Path(path)
        with path.open("rb") as fh:
            head = fh.read(4)
        return cls.load_binary(path) if head == _BINARY_MAGIC else cls.load_text(path)

    @classmethod
    def load_text(cls, path: str | Path) -> "EmbeddingTable":
        path = Path(path)
        with path.open(encoding="utf-8") as fh:
            header = fh.readline().split()
            try:
                size, dim = int(header[0]), int(header[1])
            except (IndexError, ValueError):
                raise DataError(f"{path}:1: expected 'vocab_size dim' header") from None
            tokens, rows = [], []
            for lineno, line in enumerate(fh, start=2):
                parts = line.rstrip("\n").split(" ")
                if len(parts) != dim + 1:
                    raise DataError(f"{path}:{lineno}: expected token and {dim} values")
                tokens.append(parts[0])
                try:
                    rows.append([float(x) for x in parts[1:]])
                except ValueError:
                    raise DataError(f"{path}:{lineno}: non-numeric vector entry") from None
        if len(tokens) != size:
            raise DataError(f"{path}: header says {size} tokens, found {len(tokens)}")
        vectors = np.asarray(rows, dtype=np.float32).reshape(size, dim)
        return cls(tokens, vectors)

    @classmethod
    def load_binary(cls, path: str | Path) -> "EmbeddingTable":
        path = Path(path)
        buf = path.read_bytes()
        if buf[:4] != _BINARY_MAGIC or len(buf) < 12:
            raise DataError(f"{path}: not a binary embedding table")
        size, dim = struct.unpack_from("<II", buf, 4)
        pos, tokens, rows = 12, [], []
        try:
            for _ in range(size):
                (n,) = struct.unpack_from("<I", buf, pos)
                pos += 4
                tokens.append(buf[pos:pos + n].decode("utf-8"))
                pos += n
                rows.append(np.frombuffer(buf, dtype="<f4", count=dim, offset=pos))
                pos += 4 * dim
        except (struct.error, ValueError, UnicodeDecodeError) as exc:
            raise DataError(f"{path}: truncated or corrupt binary table ({exc})") from None
        vectors = np.vstack(rows).astype(np.float32) if rows else np.zeros((0, dim), np.float32)
        return cls(tokens, vectors)


# --- training kernel ---------------------------------------------------------

@njit(cache=True)
def _lcg(state):
    return state * np.uint64(25214903917) + np.uint64(11)


@njit(cache=True)
def _neg_log_sigmoid(x):
    if x > 0:
        return math.log1p(math.exp(-x))
    return -x + math.log1p(math.exp(x))


@njit(cache=True, fastmath=True)
def _sgns_epochs(ids, offsets, w_in, w_out, table, keep_prob, window, negative,
                 epochs, lr0, lr_min, seed, epoch_loss):
    dim = w_in.shape[1]
    n_sent = offsets.shape[0] - 1
    total = ids.shape[0] * epochs + 1
    state = np.uint64(seed) * np.uint64(2654435761) + np.uint64(1)
    neu = np.zeros(dim, dtype=np.float64)
    buf = np.empty(ids.shape[0], dtype=np.int64)
    seen = 0
    subsample = keep_prob.shape[0] > 0
    for epoch in range(epochs):
        loss_sum = 0.0
        n_pairs = 0
        for s in range(n_sent):
            # optionally drop frequent words, then train on what remains
            m = 0
            for p in range(offsets[s], offsets[s + 1]):
                w = ids[p]
                if subsample:
                    state = _lcg(state)
                    if keep_prob[w] < (state & np.uint64(0xFFFF)) / 65536.0:
                        continue
                buf[m] = w
                m += 1
            for pos in range(m):
                lr = lr0 - (lr0 - lr_min) * (seen / total)
                seen += 1
                center = buf[pos]
                state = _lcg(state)
                span = window - np.int64((state >> np.uint64(16)) % np.uint64(window))
                lo = max(0, pos - span)
                hi = min(m, pos + span + 1)
                for cpos in range(lo, hi):
                    if cpos == pos:
                        continue
                    context = buf[cpos]
                    neu[:] = 0.0
                    pair_loss = 0.0
                    for d in range(negative + 1):
                        if d == 0:
                            target = context
                            label = 1.0
                        else:
                            state = _lcg(state)
                            target = table[np.int64((state >> np.uint64(16)) % np.uint64(table.shape[0]))]
                            if target == context:
                                continue
                            label = 0.0
                        f = 0.0
                        for k in range(dim):
                            f += w_in[center, k] * w_out[target, k]
                        if label == 1.0:
                            pair_loss += _neg_log_sigmoid(f)
                        else:
                            pair_loss += _neg_log_sigmoid(-f)
                        sig = 1.0 / (1.0 + math.exp(-f)) if f > -30.0 else 0.0
                        g = (label - sig) * lr
                        for k in range(dim):
                            neu[k] += g * w_out[target, k]
                            w_out[target, k] += g * w_in[center, k]
                    for k in range(dim):
                        w_in[center, k] += neu[k]
                    loss_sum += pair_loss
                    n_pairs += 1
        epoch_loss[epoch] = loss_sum / n_pairs if n_pairs > 0 else 0.0


def _unigram_table(counts: Sequence[int], power: float = 0.75, size: int = _TABLE_SIZE) -> np.ndarray:
    weights = np.asarray(counts, dtype=np.float64) ** power
    cdf = np.cumsum(weights / weights.sum())
    points = (np.arange(size, dtype=np.float64) + 0.5) / size
    return np.minimum(np.searchsorted(cdf, points), len(counts) - 1).astype(np.int64)


def init_vectors(vocab_size: int, dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    bound = 0.5 / dim
    return rng.uniform(-bound, bound, size=(vocab_size, dim)).astype(np.float32)


def train(corpus: Iterable[CleanDocument | Sequence[str]], cfg: EmbeddingConfig | None = None) -> EmbeddingTable:
    """Train skip-gram embeddings with negative sampling on ``corpus``.

    For each center word, the effective window is drawn uniformly from
    ``[1, cfg.window]``; every (center, context) pair is pushed towards
    ``sigma(v_center . u_context) = 1`` and away from ``cfg.negative``
    negatives drawn from the unigram distribution raised to the 3/4 power.
    The learning rate falls linearly from ``initial_lr`` to 1e-4. Output
    vectors start at zero, input vectors uniformly in ``±0.5/dim``.
    """
    cfg = cfg or EmbeddingConfig()
    sentences = _token_lists(corpus)
    vocab = build_vocab(sentences, cfg.min_count)
    ids, offsets = [], [0]
    for tokens in sentences:
        ids.extend(vocab.index[t] for t in tokens if t in vocab.index)
        offsets.append(len(ids))
    ids_arr = np.asarray(ids, dtype=np.int64)
    offsets_arr = np.asarray(offsets, dtype=np.int64)

    w_in = init_vectors(len(vocab), cfg.dim, cfg.seed)
    w_out = np.zeros_like(w_in)
    counts = np.asarray(vocab.counts, dtype=np.float64)
    if cfg.subsample_t is not None:
        freq = counts / counts.sum()
        keep = np.minimum(1.0, np.sqrt(cfg.subsample_t / freq) + cfg.subsample_t / freq)
    else:
        keep = np.zeros(0, dtype=np.float64)
    losses = np.zeros(cfg.epochs, dtype=np.float64)
    if cfg.epochs and len(ids_arr):
        _sgns_epochs(ids_arr, offsets_arr, w_in, w_out, _unigram_table(vocab.counts), keep,
                     cfg.window, cfg.negative, cfg.epochs, cfg.initial_lr, MIN_LR,
                     cfg.seed & 0xFFFFFFFF, losses)
    return EmbeddingTable(list(vocab.tokens), w_in, list(vocab.counts), [float(x) for x in losses])


def embed_doc(doc: CleanDocument | Sequence[str], table: EmbeddingTable) -> np.ndarray:
    """Mean of the in-vocabulary token vectors; zeros when none are known."""
    tokens = doc.tokens if isinstance(doc, CleanDocument) else doc
    rows = [table.index[t] for t in tokens if t in table.index]
    if not rows:
        return np.zeros(table.dim, dtype=np.float64)
    return table.vectors[rows].astype(np.float64).mean(axis=0)


def embed_docs(docs: Iterable[CleanDocument | Sequence[str]], table: EmbeddingTable) -> np.ndarray:
    out = [embed_doc(d, table) for d in docs]
    return np.vstack(out) if out else np.zeros((0, table.dim))
