import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lingaug import ConfigError, DataError
from lingaug.embeddings import (
    EmbeddingConfig,
    EmbeddingTable,
    build_vocab,
    embed_doc,
    init_vectors,
    train,
    _unigram_table,
)
from lingaug.textproc import CleanDocument


def test_build_vocab():
    assert build_vocab([["a", "a", "b"]], min_count=2).as_dict() == {"a": 2}
    v = build_vocab([["b", "a", "a"], ["c"]], min_count=1)
    assert v.tokens == ("a", "b", "c") and v.counts == (2, 1, 1)
    with pytest.raises(DataError):
        build_vocab([["a", "b"]], min_count=2)


def test_config_validation():
    with pytest.raises(ConfigError):
        EmbeddingConfig(dim=0)
    with pytest.raises(ConfigError):
        EmbeddingConfig(epochs=-1)
    with pytest.raises(ConfigError):
        EmbeddingConfig(window=0)


def small_corpus(seed=0, n=400):
    rng = random.Random(seed)
    topics = [[f"a{i}" for i in range(5)], [f"b{i}" for i in range(5)]]
    return [[rng.choice(t) for _ in range(6)] for t in (rng.choice(topics) for _ in range(n))]


def test_zero_epochs_is_initialization():
    corpus = small_corpus()
    cfg = EmbeddingConfig(dim=8, epochs=0, min_count=1, seed=11)
    table = train(corpus, cfg)
    assert np.array_equal(table.vectors, init_vectors(10, 8, 11))
    assert np.all(np.abs(table.vectors) <= 0.5 / 8)


def test_deterministic_and_seed_sensitive(tmp_path):
    cfg = EmbeddingConfig(dim=16, epochs=2, min_count=1, seed=5)
    a, b = train(small_corpus(), cfg), train(small_corpus(), cfg)
    a.save_text(tmp_path / "a.txt")
    b.save_text(tmp_path / "b.txt")
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()
    c = train(small_corpus(), EmbeddingConfig(dim=16, epochs=2, min_count=1, seed=6))
    assert not np.array_equal(a.vectors, c.vectors)


def test_loss_decreases_and_finite():
    table = train(small_corpus(n=2000), EmbeddingConfig(dim=20, epochs=6, min_count=1, seed=2))
    losses = table.epoch_losses
    assert np.all(np.isfinite(table.vectors))
    for prev, cur in zip(losses, losses[1:]):
        assert cur <= prev * 1.05
    assert losses[-1] < losses[0]


def test_subsampling_runs():
    table = train(small_corpus(), EmbeddingConfig(dim=8, epochs=2, min_count=1, seed=1, subsample_t=1e-2))
    assert np.all(np.isfinite(table.vectors))


def test_unigram_table_follows_three_quarter_power():
    table = _unigram_table([16, 1], size=100_000)
    share = np.mean(table == 0)
    assert share == pytest.approx(8 / 9, abs=1e-3)


def test_embed_doc():
    t = EmbeddingTable(["a", "b"], np.array([[1, 0], [0, 1]], dtype=np.float32))
    assert np.array_equal(embed_doc(["a"], t), [1, 0])
    assert np.array_equal(embed_doc(CleanDocument.from_text("x", "a b"), t), [0.5, 0.5])
    assert np.array_equal(embed_doc(["zz", "yy"], t), [0, 0])
    assert np.array_equal(embed_doc([], t), [0, 0])


@given(st.lists(st.sampled_from(["a", "b", "c", "oov"]), max_size=10), st.randoms(use_true_random=False))
def test_embed_doc_permutation_invariant(tokens, rnd):
    t = EmbeddingTable(["a", "b", "c"], np.arange(9, dtype=np.float32).reshape(3, 3) / 7)
    shuffled = list(tokens)
    rnd.shuffle(shuffled)
    assert np.allclose(embed_doc(tokens, t), embed_doc(shuffled, t), rtol=0, atol=1e-12)


def test_serialization_roundtrip(tmp_path):
    table = train(small_corpus(), EmbeddingConfig(dim=7, epochs=1, min_count=1, seed=3))
    table.save_text(tmp_path / "t.txt")
    table.save_binary(tmp_path / "t.bin")
    for loaded in (EmbeddingTable.load(tmp_path / "t.txt"), EmbeddingTable.load(tmp_path / "t.bin")):
        assert loaded.tokens == table.tokens
        assert np.array_equal(loaded.vectors, table.vectors)
    header = (tmp_path / "t.txt").read_text().splitlines()[0]
    assert header == f"{len(table)} 7"
    raw = (tmp_path / "t.bin").read_bytes()
    assert raw[:4] == b"W2VB" and int.from_bytes(raw[8:12], "little") == 7


def test_unicode_tokens_roundtrip(tmp_path):
    t = EmbeddingTable(["öldür", "arabı"], np.array([[0.25, -1.5], [3e-8, 2]], dtype=np.float32))
    t.save_binary(tmp_path / "u.bin")
    t.save_text(tmp_path / "u.txt")
    for path in ("u.bin", "u.txt"):
        back = EmbeddingTable.load(tmp_path / path)
        assert back.tokens == t.tokens and np.array_equal(back.vectors, t.vectors)


def test_corrupt_tables(tmp_path):
    (tmp_path / "bad.txt").write_text("2 3\na 1 2 3\n", encoding="utf-8")
    with pytest.raises(DataError):
        EmbeddingTable.load(tmp_path / "bad.txt")
    (tmp_path / "bad.bin").write_bytes(b"W2VB" + (5).to_bytes(4, "little") + (3).to_bytes(4, "little") + b"\x01")
    with pytest.raises(DataError):
        EmbeddingTable.load(tmp_path / "bad.bin")
