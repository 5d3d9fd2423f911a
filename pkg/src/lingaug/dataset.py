"""Labeled datasets and the normalized-text dedup key."""
from __future__ import annotations

import hashlib
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from lingaug import LABELS, NOT, OFF, DataError
from lingaug.io import read_jsonl, require, write_jsonl
from lingaug.textproc import CleanDocument, Lang, clean_text

_WS_RE = re.compile(r"\s+")


def dedup_key(text: str) -> str:
    """Hash of the text lowercased, punctuation-free and whitespace-collapsed."""
    text = "".join(ch for ch in text.lower() if not unicodedata.category(ch).startswith("P"))
    text = _WS_RE.sub(" ", text).strip()
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Example:
    doc: CleanDocument
    label: str
    source: str

    def __post_init__(self):
        if self.label not in LABELS:
            raise DataError(f"example {self.doc.id!r}: label must be OFF or NOT, got {self.label!r}")

    def to_record(self) -> dict:
        return {"id": self.doc.id, "text": self.doc.text, "label": self.label, "source": self.source}


@dataclass
class LabeledDataset:
    name: str
    examples: list[Example] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.examples)

    def counts(self) -> tuple[int, int]:
        """``(off_count, not_count)``."""
        c = Counter(ex.label for ex in self.examples)
        return c[OFF], c[NOT]

    def keys(self) -> set[str]:
        return {dedup_key(ex.doc.text) for ex in self.examples}

    def docs(self) -> list[CleanDocument]:
        return [ex.doc for ex in self.examples]

    def labels(self) -> list[str]:
        return [ex.label for ex in self.examples]

    def save(self, path: str | Path) -> int:
        return write_jsonl(path, (ex.to_record() for ex in self.examples))


def read_dataset(path: str | Path, lang: Lang = Lang.TR, name: str | None = None,
                 clean: bool = False) -> LabeledDataset:
    """Load ``{"id","text","label","source"?}`` records.

    With ``clean=True`` the text is passed through the cleaning rules first,
    for datasets that arrive as raw tweets.
    """
    path = Path(path)
    examples = []
    seen: set[str] = set()
    for lineno, rec in read_jsonl(path):
        where = f"{path}:{lineno}"
        doc_id = require(rec, "id", str, where)
        if not doc_id or doc_id in seen:
            raise DataError(f"{where}: empty or duplicate id {doc_id!r}")
        seen.add(doc_id)
        text = require(rec, "text", str, where)
        if clean:
            text = clean_text(text, lang)
        label = rec.get("label")
        if label not in LABELS:
            raise DataError(f"{where}: label must be OFF or NOT, got {label!r}")
        source = rec.get("source") or path.stem
        examples.append(Example(CleanDocument.from_text(doc_id, text, lang), label, str(source)))
    return LabeledDataset(name or path.stem, examples)
