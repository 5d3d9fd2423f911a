"""Dataset merging, class balancing with mined records, and annotation checks."""
from __future__ import annotations

import csv
import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from lingaug import LABELS, OFF, DataError
from lingaug.dataset import Example, LabeledDataset, dedup_key
from lingaug.miner import MinedRecord

logger = logging.getLogger(__name__)

ANNOTATION_HEADER = ["id", "text", "annotator_a", "annotator_b"]


@dataclass(frozen=True)
class MergeStats:
    duplicates: int = 0
    label_conflicts: int = 0


def merge(datasets: Sequence[LabeledDataset], name: str = "merged") -> tuple[LabeledDataset, MergeStats]:
    """Concatenate datasets, dropping repeated texts (first occurrence wins)."""
    if not datasets:
        raise DataError("merge needs at least one dataset")
    first_label: dict[str, str] = {}
    out, dups, conflicts = [], 0, 0
    for ds in datasets:
        for ex in ds.examples:
            key = dedup_key(ex.doc.text)
            if key in first_label:
                dups += 1
                if first_label[key] != ex.label:
                    conflicts += 1
                continue
            first_label[key] = ex.label
            out.append(ex)
    if conflicts:
        logger.warning("merge: %d duplicate text(s) carried conflicting labels; kept the first", conflicts)
    return LabeledDataset(name, out), MergeStats(dups, conflicts)


@dataclass
class BalanceReport:
    before: tuple[int, int]
    added: int
    after: tuple[int, int]
    per_query_added: dict[str, int] = field(default_factory=dict)
    exhausted: bool = False

    @property
    def deficit(self) -> int:
        off, not_ = self.before
        return max(0, not_ - off)

    def to_dict(self) -> dict:
        return {
            "before": {"OFF": self.before[0], "NOT": self.before[1]},
            "deficit": self.deficit,
            "added": self.added,
            "after": {"OFF": self.after[0], "NOT": self.after[1]},
            "exhausted": self.exhausted,
            "per_query_added": dict(sorted(self.per_query_added.items())),
        }


def round_robin(pool: Sequence[MinedRecord], k: int, seed: int) -> list[MinedRecord]:
    """Pick ``k`` records cycling over query groups in sorted id order.

    Each group is shuffled with ``seed`` first, so no prolific query can
    crowd out the others.
    """
    groups: dict[str, list[MinedRecord]] = defaultdict(list)
    for rec in pool:
        groups[rec.query_id].append(rec)
    rng = random.Random(seed)
    queues = []
    for qid in sorted(groups):
        members = groups[qid]
        rng.shuffle(members)
        queues.append(members)
    picked: list[MinedRecord] = []
    depth = 0
    while len(picked) < k and queues:
        queues = [q for q in queues if depth < len(q)]
        for q in queues:
            if len(picked) == k:
                break
            picked.append(q[depth])
        depth += 1
    return picked


def balance(base: LabeledDataset, pool: Sequence[MinedRecord], seed: int = 0,
            name: str | None = None) -> tuple[LabeledDataset, BalanceReport]:
    """Add mined OFF records until OFF matches NOT, or the pool runs out.

    The pool must already be deduplicated against ``base`` and any test set.
    """
    off, not_ = base.counts()
    deficit = max(0, not_ - off)
    chosen = round_robin(pool, min(deficit, len(pool)), seed)
    per_query: dict[str, int] = defaultdict(int)
    added = []
    for rec in chosen:
        per_query[rec.query_id] += 1
        added.append(Example(rec.doc, OFF, "mined"))
    out = LabeledDataset(name or f"{base.name}+mined", list(base.examples) + added)
    report = BalanceReport(
        before=(off, not_),
        added=len(added),
        after=(off + len(added), not_),
        per_query_added=dict(per_query),
        exhausted=len(pool) < deficit,
    )
    return out, report


def sample_for_annotation(pool: Sequence[MinedRecord], n: int, seed: int = 0) -> list[dict[str, str]]:
    """Uniform sample of ``n`` records as annotation rows with blank label columns."""
    if n < 0 or n > len(pool):
        raise DataError(f"cannot sample {n} records from a pool of {len(pool)}")
    picked = random.Random(seed).sample(range(len(pool)), n)
    return [{"id": pool[i].doc.id, "text": pool[i].doc.text, "annotator_a": "", "annotator_b": ""}
            for i in picked]


def write_annotation_file(path: str | Path, rows: Sequence[dict[str, str]]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=ANNOTATION_HEADER, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


@dataclass(frozen=True)
class AgreementStats:
    n: int
    both_off: int
    both_not: int
    disagree: int

    @property
    def agreement(self) -> float:
        return (self.both_off + self.both_not) / self.n if self.n else 0.0

    def fraction(self, count: int) -> float:
        return count / self.n if self.n else 0.0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "both_off": self.both_off,
            "both_not": self.both_not,
            "disagree": self.disagree,
            "both_off_fraction": self.fraction(self.both_off),
            "both_not_fraction": self.fraction(self.both_not),
            "disagree_fraction": self.fraction(self.disagree),
            "agreement": self.agreement,
        }


def agreement_from_rows(rows: Sequence[dict[str, str]], where: str = "annotation") -> AgreementStats:
    both_off = both_not = disagree = 0
    for rownum, row in enumerate(rows, start=2):  # row 1 is the header
        a = (row.get("annotator_a") or "").strip().upper()
        b = (row.get("annotator_b") or "").strip().upper()
        if a not in LABELS or b not in LABELS:
            raise DataError(f"{where}:{rownum}: both annotator labels must be OFF or NOT (got {a!r}, {b!r})")
        if a != b:
            disagree += 1
        elif a == OFF:
            both_off += 1
        else:
            both_not += 1
    return AgreementStats(len(rows), both_off, both_not, disagree)


def agreement(path: str | Path) -> AgreementStats:
    """Tally a filled annotation CSV (``id,text,annotator_a,annotator_b``)."""
    path = Path(path)
    try:
        with path.open(encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            missing = set(ANNOTATION_HEADER) - set(reader.fieldnames or ())
            if missing:
                raise DataError(f"{path}:1: header lacks {sorted(missing)}")
            rows = list(reader)
    except OSError as exc:
        raise DataError(f"{path}: cannot open ({exc.strerror})") from exc
    return agreement_from_rows(rows, str(path))
