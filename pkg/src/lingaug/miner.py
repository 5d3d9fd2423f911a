"""Token-pattern matching of cleaned documents against a query set."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from lingaug import OFF, ConfigError, DataError
from lingaug.dataset import LabeledDataset, dedup_key
from lingaug.io import read_jsonl, require, write_jsonl
from lingaug.querygen import Query, QueryPattern
from lingaug.textproc import CleanDocument, Lang, match_token


class TurkishMode(str, Enum):
    BIGRAM = "BIGRAM"
    COMPOUND = "COMPOUND"
    WINDOW = "WINDOW"


@dataclass(frozen=True)
class MatchConfig:
    """How TURKISH_SUFFIXED queries match; the modes are OR-combined.

    Case folding and punctuation stripping always apply.
    """

    turkish_modes: frozenset[TurkishMode] = field(
        default_factory=lambda: frozenset({TurkishMode.BIGRAM, TurkishMode.COMPOUND}))
    window: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "turkish_modes", frozenset(self.turkish_modes))
        if not self.turkish_modes:
            raise ConfigError("at least one Turkish match mode is required")
        if TurkishMode.WINDOW in self.turkish_modes:
            if self.window is None or self.window < 2:
                raise ConfigError("WINDOW mode needs an integer window k >= 2")

    @classmethod
    def parse(cls, spec: str | Iterable[str]) -> "MatchConfig":
        """Parse ``"bigram,compound"`` or ``["bigram", "window:3"]``."""
        items = spec.split(",") if isinstance(spec, str) else list(spec)
        modes, window = set(), None
        for item in items:
            name, _, arg = str(item).strip().partition(":")
            try:
                mode = TurkishMode(name.upper())
            except ValueError:
                raise ConfigError(f"unknown match mode {item!r}") from None
            if mode is TurkishMode.WINDOW:
                try:
                    window = int(arg)
                except ValueError:
                    raise ConfigError(f"window mode needs a size, e.g. 'window:3' (got {item!r})") from None
            modes.add(mode)
        return cls(frozenset(modes), window)

    def describe(self) -> list[str]:
        out = []
        for m in sorted(self.turkish_modes, key=lambda m: m.value):
            out.append(f"window:{self.window}" if m is TurkishMode.WINDOW else m.value.lower())
        return out


def match_tokens(doc: CleanDocument) -> list[str]:
    return [t for t in (match_token(tok) for tok in doc.tokens) if t]


def _has_bigram(tokens: Sequence[str], first: str, second: str) -> bool:
    return any(tokens[i] == first and tokens[i + 1] == second for i in range(len(tokens) - 1))


def _within_window(tokens: Sequence[str], a: str, b: str, k: int) -> bool:
    pos_a = [i for i, t in enumerate(tokens) if t == a]
    pos_b = [i for i, t in enumerate(tokens) if t == b]
    return any(i != j and abs(i - j) < k for i in pos_a for j in pos_b)


def match_terms(tokens: Sequence[str], q: Query, cfg: MatchConfig) -> bool:
    """Match already-stripped tokens; see :func:`match`."""
    kind = q.pattern
    if kind is QueryPattern.OW_ONLY:
        return q.ow in tokens
    if kind is QueryPattern.NO_PRONOUN:
        return q.ow in tokens and q.entity_form in tokens
    if kind is QueryPattern.LOOSE_ORDER:
        return q.ow in tokens and _has_bigram(tokens, q.pronoun, q.entity_form)
    if kind is QueryPattern.STRICT_ORDER:
        return any(
            tokens[i] == q.ow and tokens[i + 1] == q.pronoun and tokens[i + 2] == q.entity_form
            for i in range(len(tokens) - 2)
        )
    # TURKISH_SUFFIXED
    modes = cfg.turkish_modes
    if TurkishMode.COMPOUND in modes and q.ow + q.entity_form in tokens:
        return True
    if TurkishMode.BIGRAM in modes and _has_bigram(tokens, q.ow, q.entity_form):
        return True
    if TurkishMode.WINDOW in modes and _within_window(tokens, q.ow, q.entity_form, cfg.window):
        return True
    return False


def match(doc: CleanDocument, q: Query, cfg: MatchConfig | None = None) -> bool:
    """True when ``doc`` satisfies ``q``.

    STRICT_ORDER needs the contiguous trigram ``ow p e``; LOOSE_ORDER needs
    the bigram ``p e`` plus ``ow`` anywhere; NO_PRONOUN needs ``ow`` and
    ``e`` anywhere; OW_ONLY needs ``ow``. Turkish queries match as a bigram,
    a fused token (``swear+form``) or within a k-token window per ``cfg``.
    """
    return match_terms(match_tokens(doc), q, cfg or MatchConfig())


@dataclass(frozen=True)
class MinedRecord:
    doc: CleanDocument
    query_id: str
    pattern: QueryPattern
    label: str = OFF

    def to_record(self) -> dict:
        return {"id": self.doc.id, "text": self.doc.text, "query": self.query_id,
                "pattern": self.pattern.value, "label": self.label}


def _anchors(q: Query, cfg: MatchConfig) -> list[str]:
    # tokens at least one of which must be present for q to match
    if q.pattern is QueryPattern.TURKISH_SUFFIXED:
        anchors = []
        if cfg.turkish_modes & {TurkishMode.BIGRAM, TurkishMode.WINDOW}:
            anchors.append(q.ow)
        if TurkishMode.COMPOUND in cfg.turkish_modes:
            anchors.append(q.ow + q.entity_form)
        return anchors
    return [q.ow]


def mine(corpus: Iterable[CleanDocument], queries: Sequence[Query],
         cfg: MatchConfig | None = None) -> list[MinedRecord]:
    """Label every document matching some query as OFF.

    Each document is attributed to its first matching query in id order and
    appears at most once; the output is sorted by document id.
    """
    if not queries:
        raise DataError("query set is empty")
    cfg = cfg or MatchConfig()
    ordered = sorted({q.id: q for q in queries}.values(), key=lambda q: q.id)
    rank = {q.id: i for i, q in enumerate(ordered)}
    index: dict[str, list[Query]] = defaultdict(list)
    for q in ordered:
        for anchor in _anchors(q, cfg):
            index[anchor].append(q)

    records = []
    for doc in corpus:
        tokens = match_tokens(doc)
        candidates = {q.id: q for tok in set(tokens) for q in index.get(tok, ())}
        for qid in sorted(candidates, key=rank.__getitem__):
            q = candidates[qid]
            if match_terms(tokens, q, cfg):
                records.append(MinedRecord(doc, q.id, q.pattern))
                break
    records.sort(key=lambda r: r.doc.id)
    return records


def dedup(records: Iterable[MinedRecord], against: Iterable[LabeledDataset] = ()) -> list[MinedRecord]:
    """Drop records colliding with ``against`` or with an earlier record."""
    seen: set[str] = set()
    for ds in against:
        seen |= ds.keys()
    out = []
    for rec in records:
        key = dedup_key(rec.doc.text)
        if key in seen:
            continue
        seen.add(key)
        out.append(rec)
    return out


def write_mined(path: str | Path, records: Iterable[MinedRecord]) -> int:
    return write_jsonl(path, (r.to_record() for r in records))


def read_mined(path: str | Path, lang: Lang = Lang.TR) -> list[MinedRecord]:
    out = []
    for lineno, rec in read_jsonl(path):
        where = f"{path}:{lineno}"
        try:
            pattern = QueryPattern(require(rec, "pattern", str, where))
        except ValueError:
            raise DataError(f"{where}: unknown pattern {rec.get('pattern')!r}") from None
        if rec.get("label", OFF) != OFF:
            raise DataError(f"{where}: mined records must carry label OFF")
        doc = CleanDocument.from_text(require(rec, "id", str, where), require(rec, "text", str, where), lang)
        out.append(MinedRecord(doc, require(rec, "query", str, where), pattern))
    return out
