"""Confusion-matrix metrics and result tables with OFF as the positive class."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from lingaug import LABELS, OFF, ConfigError, DataError
from lingaug.io import read_jsonl, require

FORMATS = ("text", "csv", "json")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fn: int
    fp: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fn, self.fp, self.tn) < 0:
            raise DataError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fn + self.fp + self.tn


def confusion(preds: Sequence[str], golds: Sequence[str]) -> ConfusionMatrix:
    if len(preds) != len(golds):
        raise DataError(f"{len(preds)} predictions for {len(golds)} gold labels")
    if not preds:
        raise DataError("no predictions to score")
    tp = fn = fp = tn = 0
    for i, (p, g) in enumerate(zip(preds, golds)):
        if p not in LABELS or g not in LABELS:
            raise DataError(f"item {i}: labels must be OFF or NOT (pred={p!r}, gold={g!r})")
        if g == OFF:
            tp, fn = (tp + 1, fn) if p == OFF else (tp, fn + 1)
        else:
            fp, tn = (fp + 1, tn) if p == OFF else (fp, tn + 1)
    return ConfusionMatrix(tp, fn, fp, tn)


def _ratio(num: int, den: int, flag: str, flags: list[str]) -> float:
    if den == 0:
        flags.append(flag)
        return 0.0
    return num / den


def _f1(p: float, r: float) -> float:
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


@dataclass(frozen=True)
class EvalReport:
    recall_off: float
    recall_not: float
    recall_macro: float
    precision_off: float
    precision_not: float
    f1_off: float
    f1_not: float
    f1_macro: float
    accuracy: float
    matrix: ConfusionMatrix
    model_name: str = ""
    dataset_name: str = ""
    flags: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["flags"] = list(self.flags)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        d = dict(d)
        d["matrix"] = ConfusionMatrix(**d["matrix"])
        d["flags"] = tuple(d.get("flags", ()))
        return cls(**d)


def report(m: ConfusionMatrix, model_name: str = "", dataset_name: str = "") -> EvalReport:
    """Per-class and macro recall, precision and F1.

    A zero denominator yields 0.0 and a flag. When a class is absent from the
    gold labels, the macro averages use only the class that is present.
    """
    if m.total < 1:
        raise DataError("empty confusion matrix")
    flags: list[str] = []
    recall_off = _ratio(m.tp, m.tp + m.fn, "recall_off_undefined", flags)
    recall_not = _ratio(m.tn, m.tn + m.fp, "recall_not_undefined", flags)
    precision_off = _ratio(m.tp, m.tp + m.fp, "precision_off_undefined", flags)
    precision_not = _ratio(m.tn, m.tn + m.fn, "precision_not_undefined", flags)
    f1_off = _f1(precision_off, recall_off)
    f1_not = _f1(precision_not, recall_not)

    defined = []
    if m.tp + m.fn:
        defined.append((recall_off, f1_off))
    if m.tn + m.fp:
        defined.append((recall_not, f1_not))
    if len(defined) < 2:
        flags.append("macro_over_present_classes")
    recall_macro = sum(r for r, _ in defined) / len(defined)
    f1_macro = sum(f for _, f in defined) / len(defined)
    return EvalReport(
        recall_off, recall_not, recall_macro,
        precision_off, precision_not,
        f1_off, f1_not, f1_macro,
        (m.tp + m.tn) / m.total, m, model_name, dataset_name, tuple(flags),
    )


def swap_classes(m: ConfusionMatrix) -> ConfusionMatrix:
    """The same matrix with NOT as the positive class."""
    return ConfusionMatrix(tp=m.tn, fn=m.fp, fp=m.fn, tn=m.tp)


# --- rendering ---------------------------------------------------------------

COLUMNS = ("Recall", "Recall_avg", "F1_avg")


def percent(x: float) -> str:
    return f"{100 * x:.2f}"


def _row(r: EvalReport) -> list[str]:
    return [r.model_name, r.dataset_name, percent(r.recall_off), percent(r.recall_macro), percent(r.f1_macro)]


def render(reports: Sequence[EvalReport], fmt: str = "text") -> str:
    """Render one row per (model, dataset) in percent with two decimals.

    ``json`` carries the full reports and round-trips through :func:`parse_json`.
    """
    if not reports:
        raise DataError("no reports to render")
    if fmt not in FORMATS:
        raise ConfigError(f"unknown report format {fmt!r} (expected one of {', '.join(FORMATS)})")
    header = ["Model", "Dataset", *COLUMNS]
    rows = [_row(r) for r in reports]
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    widths = [max(len(str(row[i])) for row in [header, *rows]) for i in range(len(header))]
    lines = []
    for n, row in enumerate([header, *rows]):
        cells = [c.ljust(w) if i < 2 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))]
        lines.append("  ".join(cells).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def parse_json(text: str) -> list[EvalReport]:
    return [EvalReport.from_dict(d) for d in json.loads(text)]


def read_predictions(path: str | Path) -> tuple[list[str], list[str]]:
    """Read ``{"id","pred","gold"}`` lines into parallel label lists."""
    preds, golds = [], []
    for lineno, rec in read_jsonl(path):
        where = f"{path}:{lineno}"
        p, g = require(rec, "pred", str, where), require(rec, "gold", str, where)
        if p not in LABELS or g not in LABELS:
            raise DataError(f"{where}: labels must be OFF or NOT")
        preds.append(p)
        golds.append(g)
    return preds, golds
