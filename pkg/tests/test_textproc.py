import unicodedata

import pytest
from hypothesis import assume, given, settings, strategies as st

from lingaug import ConfigError, DataError
from lingaug.textproc import (
    CleanDocument,
    JsonlSource,
    Lang,
    NormalizerConfig,
    RawDocument,
    clean,
    clean_text,
    load_lexicon,
    match_token,
    normalize,
)


def test_clean_spec_example():
    doc = clean(RawDocument("1", "Check this <b>out</b> @user http://x.co 😀!", Lang.EN))
    assert doc.text == "check this out !"
    assert doc.tokens == ("check", "this", "out", "!")


def test_turkish_casing():
    assert clean(RawDocument("1", "ISIRGAN", Lang.TR)).text == "ısırgan"
    assert clean_text("İSTANBUL", Lang.TR) == "istanbul"
    assert clean_text("ISTANBUL", Lang.EN) == "istanbul"


def test_empty():
    doc = clean(RawDocument("1", "", Lang.EN))
    assert doc.text == "" and doc.tokens == ()


@pytest.mark.parametrize("raw, expected", [
    ("see WWW.Example.com now", "see now"),
    ("HTTPS://A.B/c?d=1 x", "x"),
    ("@user: hello", ": hello"),
    ("mail a@b.com", "mail a@b.com"),
    ("😀@user hi", "hi"),
    ("a<br/>b <i>c</i>", "ab c"),
    ("☀️ güneş", "güneş"),
    ("  spaced \t\n out  ", "spaced out"),
])
def test_clean_rules(raw, expected):
    assert clean_text(raw, Lang.EN) == expected


def test_punctuation_kept():
    assert clean_text("Harika!!! Değil mi?..", Lang.TR) == "harika!!! değil mi?.."


_PUNCT = "!?.,;:'\"()-…"
_word = st.text(alphabet=st.sampled_from("abcIİıiğüşöçXYZ" + _PUNCT), min_size=1, max_size=8)
_removable = st.sampled_from(["<b>", "</i>", "<a href='x'>", "http://t.co/a1", "https://x.y/z",
                              "www.site.org", "@user", "@u_1", "😀", "🔥", "✂", "🚀"])


@settings(max_examples=300, deadline=None)
@given(st.lists(st.one_of(_word, _removable), max_size=12), st.sampled_from(list(Lang)))
def test_punctuation_preserved_outside_removed_spans(parts, lang):
    kept = [p for p in parts if not _removable_like(p)]
    assume(all(not p.lower().startswith("www.") for p in kept))
    out = clean_text(" ".join(parts), lang)
    for ch in _PUNCT:
        assert out.count(ch) == sum(p.count(ch) for p in kept)


def _removable_like(p):
    return p.startswith(("<", "http", "www.", "@")) or not any(c.isalnum() or c in _PUNCT for c in p)


@settings(max_examples=500, deadline=None)
@given(st.lists(st.sampled_from(list("aIİ @<>/:.w hpt😀🔥\u200d\ufe0f!_1\t\n") + [
    "http://", "www.", "@x", "<b>"])).map("".join), st.sampled_from(list(Lang)))
def test_clean_idempotent(text, lang):
    once = clean(RawDocument("d", text, lang))
    twice = clean(RawDocument("d", once.text, lang))
    assert twice == once
    assert all(not any(c.isspace() for c in t) for t in once.tokens)


@given(st.text(max_size=40))
def test_clean_idempotent_any_text(text):
    once = clean_text(text, Lang.TR)
    assert clean_text(once, Lang.TR) == once


@pytest.mark.parametrize("token, bare", [
    ("arabı!", "arabı"), ("...", ""), ("can't", "can't"), ("«hakemi»", "hakemi"), ("(x)", "x"), ("", ""),
])
def test_match_token(token, bare):
    assert match_token(token) == bare


def test_normalize_examples():
    cfg = NormalizerConfig(squeeze_runs=True)
    doc = CleanDocument.from_text("1", "çoooook iyi")
    assert normalize(doc, cfg).text == "çok iyi"
    doc = CleanDocument.from_text("1", "slm")
    assert normalize(doc, NormalizerConfig(replacements={"slm": "selam"})).text == "selam"


@given(st.text(max_size=30))
def test_normalize_disabled_is_identity(text):
    doc = CleanDocument.from_text("x", clean_text(text))
    assert normalize(doc, NormalizerConfig(enabled=False)) is doc


def test_squeeze_keeps_double_letters_and_digits():
    cfg = NormalizerConfig()
    assert normalize(CleanDocument.from_text("1", "saat 1000 harikaaaa"), cfg).text == "saat 1000 harika"


def test_lexicon_loading(tmp_path):
    p = tmp_path / "lex.tsv"
    p.write_text("# comment\nslm\tselam\n\nmrb\tmerhaba  # trailing\n", encoding="utf-8")
    assert load_lexicon(p) == {"slm": "selam", "mrb": "merhaba"}


def test_malformed_lexicon_names_line(tmp_path):
    p = tmp_path / "lex.tsv"
    p.write_text("slm\tselam\nbroken line\n", encoding="utf-8")
    with pytest.raises(ConfigError, match=r"lex\.tsv:2"):
        load_lexicon(p)


def test_replacement_must_be_single_token():
    with pytest.raises(ConfigError):
        NormalizerConfig(replacements={"a": "b c"})


def test_jsonl_source_rejects_duplicates(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text('{"id": "a", "text": "x"}\n{"id": "a", "text": "y"}\n', encoding="utf-8")
    with pytest.raises(DataError, match=r"c\.jsonl:2"):
        list(JsonlSource(p).open())


def test_deterministic_output_bytes():
    raw = "Ünlü ÇİÇEK <p>bahçede</p> @ali 🌸 http://x.y güzel!"
    outs = {clean_text(raw, Lang.TR).encode("utf-8") for _ in range(5)}
    assert len(outs) == 1
    assert unicodedata.is_normalized("NFC", clean_text(raw, Lang.TR))
