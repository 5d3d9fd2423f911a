from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from lingaug import ConfigError, DataError
from lingaug.evaluation import (
    ConfusionMatrix,
    confusion,
    parse_json,
    render,
    report,
    swap_classes,
)

# expected values from hand arithmetic, kept as exact fractions
HAND = [
    ((86, 14, 10, 90), dict(recall_off=F(86, 100), recall_not=F(90, 100), recall_macro=F(88, 100),
                            precision_off=F(86, 96), precision_not=F(90, 104),
                            f1_off=F(172, 196), f1_not=F(180, 204),
                            f1_macro=(F(172, 196) + F(180, 204)) / 2, accuracy=F(176, 200))),
    ((3, 1, 2, 4), dict(recall_off=F(3, 4), recall_not=F(4, 6), recall_macro=(F(3, 4) + F(4, 6)) / 2,
                        precision_off=F(3, 5), precision_not=F(4, 5), f1_off=F(6, 9), f1_not=F(8, 11),
                        f1_macro=(F(6, 9) + F(8, 11)) / 2, accuracy=F(7, 10))),
    ((5, 0, 0, 5), dict(recall_off=1, recall_not=1, recall_macro=1, precision_off=1, precision_not=1,
                        f1_off=1, f1_not=1, f1_macro=1, accuracy=1)),
]


@pytest.mark.parametrize("counts, expected", HAND)
def test_report_hand_values(counts, expected):
    r = report(ConfusionMatrix(*counts))
    for name, value in expected.items():
        assert abs(getattr(r, name) - float(value)) <= 1e-12, name
    assert r.flags == ()


def test_confusion_examples():
    assert confusion(["OFF"], ["OFF"]) == ConfusionMatrix(1, 0, 0, 0)
    assert confusion(["NOT"], ["OFF"]) == ConfusionMatrix(0, 1, 0, 0)
    assert confusion(["OFF", "NOT", "OFF", "NOT"], ["OFF", "OFF", "NOT", "NOT"]) == ConfusionMatrix(1, 1, 1, 1)
    with pytest.raises(DataError):
        confusion(["OFF"], ["OFF", "NOT"])
    with pytest.raises(DataError):
        confusion(["maybe"], ["OFF"])
    with pytest.raises(DataError):
        confusion([], [])


def test_degenerate_no_offensive_gold():
    r = report(ConfusionMatrix(tp=0, fn=0, fp=2, tn=8))
    assert r.recall_off == 0.0 and "recall_off_undefined" in r.flags
    assert "macro_over_present_classes" in r.flags
    assert r.recall_macro == r.recall_not == 0.8


labels = st.lists(st.tuples(st.sampled_from(["OFF", "NOT"]), st.sampled_from(["OFF", "NOT"])), min_size=1, max_size=60)


@given(labels, st.randoms(use_true_random=False))
def test_permutation_invariance(pairs, rnd):
    shuffled = list(pairs)
    rnd.shuffle(shuffled)
    a = report(confusion(*zip(*pairs)))
    b = report(confusion(*zip(*shuffled)))
    assert a == b


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_swap_and_complement(tp, fn, fp, tn):
    if tp + fn + fp + tn == 0:
        return
    m = ConfusionMatrix(tp, fn, fp, tn)
    r, s = report(m), report(swap_classes(m))
    assert (s.recall_off, s.recall_not) == (r.recall_not, r.recall_off)
    assert (s.precision_off, s.precision_not) == (r.precision_not, r.precision_off)
    assert s.recall_macro == pytest.approx(r.recall_macro, abs=1e-15)
    assert s.f1_macro == pytest.approx(r.f1_macro, abs=1e-15)
    if tp + fn:
        assert r.recall_off + fn / (tp + fn) == pytest.approx(1.0, abs=1e-15)
        if fp + tn:
            assert r.recall_macro == pytest.approx((r.recall_off + r.recall_not) / 2, abs=1e-15)


def test_render_formats():
    r = report(ConfusionMatrix(8631, 1369, 500, 9500), "BERT-CNN-BiLSTM", "ours")
    assert r.recall_off == 0.8631
    text = render([r], "text")
    assert "86.31" in text and "Recall_avg" in text
    csv_out = render([r], "csv").splitlines()
    assert csv_out[0] == "Model,Dataset,Recall,Recall_avg,F1_avg"
    assert csv_out[1].startswith("BERT-CNN-BiLSTM,ours,86.31,")
    assert parse_json(render([r], "json")) == [r]
    with pytest.raises(DataError):
        render([], "text")
    with pytest.raises(ConfigError):
        render([r], "xml")


def test_degenerate_report_json_roundtrip():
    r = report(ConfusionMatrix(0, 0, 1, 1), "m", "d")
    assert parse_json(render([r], "json")) == [r]
