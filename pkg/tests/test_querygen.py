import pytest
from hypothesis import given, strategies as st

from lingaug import ConfigError, DataError
from lingaug.morphology import Entity, accusative_plural, accusative_singular
from lingaug.querygen import (
    Query,
    QueryPattern as QP,
    generate_english,
    generate_turkish,
    read_queries,
)
from lingaug.io import write_jsonl


def test_turkish_worked_example():
    qs = generate_turkish(["öldür"], [Entity("arap")])
    assert {(q.ow, q.entity_form) for q in qs} == {("öldür", "arabı"), ("öldür", "arapları")}
    assert all(q.pattern is QP.TURKISH_SUFFIXED and q.source_entity == "arap" for q in qs)
    assert [q.id for q in qs] == sorted(q.id for q in qs)
    assert qs[0].id == "TURKISH_SUFFIXED|öldür|arabı"


def synthetic_entities(n):
    syll = ["ka", "le", "mo", "bu", "ti", "ra", "se"]
    lemmas = [a + b + c for a in syll for b in syll for c in syll]
    return [Entity(lemma) for lemma in lemmas[:n]]


def test_turkish_cardinality():
    swears = [f"küfür{c}" for c in "abcdefghijklmno"]
    assert len(generate_turkish(swears, synthetic_entities(100))) == 3000


def test_turkish_dedup_and_bare_forms():
    qs = generate_turkish(["öldür", "öldür"], [Entity("arap"), Entity("arap")])
    assert len(qs) == 2
    qs = generate_turkish(["öldür"], [Entity("arap")], include_bare=True)
    assert {q.entity_form for q in qs} == {"arap", "arabı", "araplar", "arapları"}


@pytest.mark.parametrize("swears, entities", [(["x"], []), ([], [Entity("arap")])])
def test_turkish_empty_lists(swears, entities):
    with pytest.raises(DataError):
        generate_turkish(swears, entities)


def test_english_examples():
    qs = generate_english(["stupid"], ["you"], ["people"], {QP.STRICT_ORDER})
    assert qs == [Query(QP.STRICT_ORDER, "stupid", "you", "people")]
    assert qs[0].id == "STRICT_ORDER|stupid|you|people"
    qs = generate_english(["a", "b"], ["p"], ["e"], {QP.OW_ONLY})
    assert [q.id for q in qs] == ["OW_ONLY|a", "OW_ONLY|b"]
    qs = generate_english(["o1", "o2", "o3"], ["p1", "p2"], ["e1", "e2", "e3", "e4"], {QP.LOOSE_ORDER, QP.STRICT_ORDER})
    assert len(qs) == 48


def test_english_errors():
    with pytest.raises(DataError):
        generate_english(["a"], [], ["e"], {QP.LOOSE_ORDER})
    with pytest.raises(ConfigError):
        generate_english(["a"], ["p"], ["e"], set())
    # OW_ONLY ignores the other lists entirely
    assert len(generate_english(["a"], [], [], {QP.OW_ONLY})) == 1


def test_query_invariants():
    with pytest.raises(DataError):
        Query(QP.LOOSE_ORDER, "a", None, "e")
    with pytest.raises(DataError):
        Query(QP.OW_ONLY, "a", "p")
    with pytest.raises(DataError):
        Query(QP.NO_PRONOUN, "Upper", None, "e")
    with pytest.raises(DataError):
        Query(QP.OW_ONLY, "two words")


words = st.lists(st.text(alphabet="abcçğ", min_size=1, max_size=4), min_size=1, max_size=5, unique=True)


@given(words, words, words, st.randoms(use_true_random=False))
def test_order_independent(ows, ps, es, rnd):
    kinds = set(QP) - {QP.TURKISH_SUFFIXED}
    a = generate_english(ows, ps, es, kinds)
    shuffled = [list(x) for x in (ows, ps, es)]
    for x in shuffled:
        rnd.shuffle(x)
    assert generate_english(*shuffled, kinds) == a
    assert all(q.ow and (q.entity_form is None or q.entity_form) for q in a)


def test_turkish_forms_reproducible(tmp_path):
    ents = synthetic_entities(20) + [Entity("arap"), Entity("köpek")]
    qs = generate_turkish(["öldür", "defol"], ents)
    by_lemma = {e.lemma: e for e in ents}
    for q in qs:
        e = by_lemma[q.source_entity]
        assert q.entity_form in (accusative_singular(e).text, accusative_plural(e).text)
    write_jsonl(tmp_path / "q.jsonl", (q.to_record() for q in reversed(qs)))
    assert read_queries(tmp_path / "q.jsonl") == qs


def test_pattern_parse():
    assert QP.parse("loose") is QP.LOOSE_ORDER
    assert QP.parse("no-pronoun") is QP.NO_PRONOUN
    with pytest.raises(ConfigError):
        QP.parse("fuzzy")
