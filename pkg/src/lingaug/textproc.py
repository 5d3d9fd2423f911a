"""Cleaning, language-aware lowercasing, tokenization and light normalization.

Cleaning removes HTML tags, URLs, usernames and emoji but keeps punctuation,
which carries signal for downstream models. Normalization is a separate,
optional pass (run-squeezing plus a replacement lexicon) meant for the
statistical-embedding path only.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Protocol

from lingaug import ConfigError, DataError
from lingaug.io import read_jsonl, require


class Lang(str, Enum):
    TR = "TR"
    EN = "EN"

    @classmethod
    def parse(cls, value: "str | Lang") -> "Lang":
        try:
            return cls(str(value.value if isinstance(value, Lang) else value).upper())
        except ValueError:
            raise ConfigError(f"unknown language {value!r} (expected TR or EN)") from None


@dataclass(frozen=True)
class RawDocument:
    id: str
    text: str
    lang: Lang = Lang.TR


@dataclass(frozen=True)
class CleanDocument:
    id: str
    text: str
    tokens: tuple[str, ...]
    lang: Lang = Lang.TR

    @classmethod
    def from_text(cls, id: str, text: str, lang: Lang = Lang.TR) -> "CleanDocument":
        return cls(id, text, tuple(text.split(" ")) if text else (), lang)

    def to_record(self) -> dict:
        return {"id": self.id, "text": self.text, "tokens": list(self.tokens)}


EMOJI_RANGES: tuple[tuple[int, int], ...] = (
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0x2600, 0x26FF),
    (0x2700, 0x27BF),
    # presentation selectors and joiners left behind by multi-codepoint emoji
    (0xFE0E, 0xFE0F),
    (0x200D, 0x200D),
)

_HTML_RE = re.compile(r"<[^>]*>")
_URL_RE = re.compile(r"(?<!\S)(?:https?://|www\.)\S*", re.IGNORECASE)
_USER_RE = re.compile(r"(?<!\S)@\w+")
_WS_RE = re.compile(r"\s+")


def _emoji_class(ranges: Iterable[tuple[int, int]]) -> re.Pattern:
    parts = []
    for lo, hi in ranges:
        parts.append(re.escape(chr(lo)) if lo == hi else f"{re.escape(chr(lo))}-{re.escape(chr(hi))}")
    return re.compile("[" + "".join(parts) + "]")


_EMOJI_RE = _emoji_class(EMOJI_RANGES)


def lower(text: str, lang: Lang) -> str:
    if lang is Lang.TR:
        text = text.replace("I", "ı").replace("İ", "i")
    return text.lower()


def _clean_once(text: str, lang: Lang, emoji_re: re.Pattern) -> str:
    text = _HTML_RE.sub("", text)
    text = _URL_RE.sub("", text)
    text = _USER_RE.sub("", text)
    text = emoji_re.sub("", text)
    text = lower(text, lang)
    return _WS_RE.sub(" ", text).strip()


def clean_text(text: str, lang: Lang = Lang.TR, emoji_ranges: Iterable[tuple[int, int]] | None = None) -> str:
    emoji_re = _EMOJI_RE if emoji_ranges is None else _emoji_class(emoji_ranges)
    # Deleting an emoji can expose a new URL or @-token ("😀@user"), so the
    # pass is repeated until it stops changing anything.
    prev, text = None, _clean_once(text, lang, emoji_re)
    while text != prev:
        prev, text = text, _clean_once(text, lang, emoji_re)
    return text


def clean(doc: RawDocument, emoji_ranges: Iterable[tuple[int, int]] | None = None) -> CleanDocument:
    """Strip markup, URLs, usernames and emoji, lowercase, and tokenize on spaces.

    >>> clean(RawDocument("1", "Check this <b>out</b> @user http://x.co 😀!", Lang.EN)).text
    'check this out !'
    """
    return CleanDocument.from_text(doc.id, clean_text(doc.text, doc.lang, emoji_ranges), doc.lang)


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def match_token(token: str) -> str:
    """Strip leading and trailing punctuation; interior punctuation is kept."""
    start, end = 0, len(token)
    while start < end and _is_punct(token[start]):
        start += 1
    while end > start and _is_punct(token[end - 1]):
        end -= 1
    return token[start:end]


# --- normalization -----------------------------------------------------------

_RUN_RE = re.compile(r"([^\W\d_])\1{2,}")


@dataclass(frozen=True)
class NormalizerConfig:
    enabled: bool = True
    squeeze_runs: bool = True
    replacements: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for key, value in self.replacements.items():
            if not key or not value or _WS_RE.search(key) or _WS_RE.search(value):
                raise ConfigError(f"replacement {key!r} -> {value!r} must map a single token to a single token")


def load_lexicon(path: str | Path) -> dict[str, str]:
    """Read a ``from<TAB>to`` replacement lexicon (``#`` comments allowed)."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot open lexicon ({exc.strerror})") from exc
    table: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0].rstrip("\r\n")
        if not body.strip():
            continue
        parts = body.strip().split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1] or any(_WS_RE.search(p) for p in parts):
            raise ConfigError(f"{path}:{lineno}: expected 'from<TAB>to', got {line!r}")
        table[parts[0]] = parts[1]
    return table


def squeeze(token: str) -> str:
    return _RUN_RE.sub(r"\1", token)


def normalize(doc: CleanDocument, cfg: NormalizerConfig) -> CleanDocument:
    if not cfg.enabled:
        return doc
    tokens = []
    for tok in doc.tokens:
        if cfg.squeeze_runs:
            tok = squeeze(tok)
        tokens.append(cfg.replacements.get(tok, tok))
    return replace(doc, text=" ".join(tokens), tokens=tuple(tokens))


# --- corpus sources ----------------------------------------------------------

class DocumentSource(Protocol):
    """Anything that can be opened into a stream of raw documents."""

    def open(self) -> Iterator[RawDocument]: ...


@dataclass(frozen=True)
class JsonlSource:
    """Corpus file with one ``{"id": ..., "text": ...}`` object per line."""

    path: Path
    lang: Lang = Lang.TR

    def open(self) -> Iterator[RawDocument]:
        seen: set[str] = set()
        for lineno, rec in read_jsonl(self.path):
            where = f"{self.path}:{lineno}"
            doc_id = require(rec, "id", str, where)
            if not doc_id:
                raise DataError(f"{where}: empty id")
            if doc_id in seen:
                raise DataError(f"{where}: duplicate id {doc_id!r}")
            seen.add(doc_id)
            yield RawDocument(doc_id, require(rec, "text", str, where), self.lang)


def read_clean_corpus(path: str | Path, lang: Lang = Lang.TR) -> Iterator[CleanDocument]:
    """Read cleaned-corpus JSON-lines; ``tokens`` is recomputed when absent."""
    for lineno, rec in read_jsonl(path):
        where = f"{path}:{lineno}"
        doc_id = require(rec, "id", str, where)
        text = require(rec, "text", str, where)
        tokens = rec.get("tokens")
        if tokens is None:
            yield CleanDocument.from_text(doc_id, text, lang)
        elif isinstance(tokens, list) and all(isinstance(t, str) for t in tokens):
            yield CleanDocument(doc_id, text, tuple(tokens), lang)
        else:
            raise DataError(f"{where}: 'tokens' must be a list of strings")
