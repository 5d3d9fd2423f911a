"""Query-set construction from offensive-word, pronoun and entity lists.

Two families are produced:

* Turkish suffixed queries pair a swear word with an inflected entity
  (``öldür arabı``), one query per accusative form.
* English OW/P/E queries arrange an offensive word (OW), pronoun (P) and
  entity (E) under one of four pattern kinds that differ in how strictly
  term order and adjacency are enforced at match time.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable

from lingaug import ConfigError, DataError
from lingaug.io import read_jsonl, require
from lingaug.morphology import (
    Entity,
    MorphologyError,
    accusative_plural,
    accusative_singular,
    plural,
)


class QueryPattern(str, Enum):
    TURKISH_SUFFIXED = "TURKISH_SUFFIXED"
    LOOSE_ORDER = "LOOSE_ORDER"
    STRICT_ORDER = "STRICT_ORDER"
    NO_PRONOUN = "NO_PRONOUN"
    OW_ONLY = "OW_ONLY"

    @classmethod
    def parse(cls, value: str) -> "QueryPattern":
        key = value.strip().upper().replace("-", "_")
        aliases = {"LOOSE": "LOOSE_ORDER", "STRICT": "STRICT_ORDER", "TURKISH": "TURKISH_SUFFIXED"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ConfigError(f"unknown query pattern {value!r}") from None


_NEEDS_ENTITY = {QueryPattern.TURKISH_SUFFIXED, QueryPattern.LOOSE_ORDER,
                 QueryPattern.STRICT_ORDER, QueryPattern.NO_PRONOUN}
_NEEDS_PRONOUN = {QueryPattern.LOOSE_ORDER, QueryPattern.STRICT_ORDER}


def _check_term(term: str) -> None:
    if not term or any(ch.isspace() for ch in term) or term != term.lower():
        raise DataError(f"query term {term!r} must be a nonempty lowercase token")


@dataclass(frozen=True)
class Query:
    pattern: QueryPattern
    ow: str
    pronoun: str | None = None
    entity_form: str | None = None
    source_entity: str | None = None

    def __post_init__(self):
        _check_term(self.ow)
        if self.pattern in _NEEDS_ENTITY:
            if self.entity_form is None:
                raise DataError(f"{self.pattern.value} query needs an entity form")
            _check_term(self.entity_form)
        elif self.entity_form is not None:
            raise DataError(f"{self.pattern.value} query takes no entity form")
        if self.pattern in _NEEDS_PRONOUN:
            if self.pronoun is None:
                raise DataError(f"{self.pattern.value} query needs a pronoun")
            _check_term(self.pronoun)
        elif self.pronoun is not None:
            raise DataError(f"{self.pattern.value} query takes no pronoun")

    @property
    def id(self) -> str:
        parts = [self.pattern.value, self.ow, self.pronoun, self.entity_form]
        return "|".join(p for p in parts if p)

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "pattern": self.pattern.value,
            "ow": self.ow,
            "pronoun": self.pronoun,
            "entity_form": self.entity_form,
            "source_entity": self.source_entity,
        }

    @classmethod
    def from_record(cls, rec: dict, where: str = "query") -> "Query":
        try:
            pattern = QueryPattern(require(rec, "pattern", str, where))
        except ValueError:
            raise DataError(f"{where}: unknown pattern {rec.get('pattern')!r}") from None
        try:
            return cls(pattern, require(rec, "ow", str, where), rec.get("pronoun"),
                       rec.get("entity_form"), rec.get("source_entity"))
        except DataError as exc:
            raise DataError(f"{where}: {exc}") from None


def _finalize(queries: Iterable[Query]) -> list[Query]:
    unique: dict[str, Query] = {}
    for q in queries:
        unique.setdefault(q.id, q)
    return [unique[k] for k in sorted(unique)]


def generate_turkish(swears: list[str], entities: list[Entity], include_bare: bool = False) -> list[Query]:
    """One query per (swear, accusative form); 2·|S|·|E| before deduplication.

    With ``include_bare`` the lemma and bare plural are emitted as well.
    """
    if not swears:
        raise DataError("swear list is empty")
    if not entities:
        raise DataError("entity list is empty")
    queries = []
    for entity in entities:
        try:
            forms = [accusative_singular(entity).text, accusative_plural(entity).text]
            if include_bare:
                forms += [entity.lemma, plural(entity).text]
        except MorphologyError as exc:
            raise MorphologyError(f"entity {entity.lemma!r}: {exc}") from None
        for swear in swears:
            for form in forms:
                queries.append(Query(QueryPattern.TURKISH_SUFFIXED, swear, None, form, entity.lemma))
    return _finalize(queries)


def generate_english(
    ows: list[str],
    pronouns: list[str],
    entities: list[str],
    kinds: Iterable[QueryPattern],
) -> list[Query]:
    kinds = set(kinds)
    if not kinds:
        raise ConfigError("no query kinds requested")
    if QueryPattern.TURKISH_SUFFIXED in kinds:
        raise ConfigError("TURKISH_SUFFIXED queries come from generate_turkish")
    if not ows:
        raise DataError("offensive-word list is empty")
    if kinds & _NEEDS_PRONOUN and not pronouns:
        raise DataError("pronoun list is empty but LOOSE/STRICT queries were requested")
    if kinds & _NEEDS_ENTITY and not entities:
        raise DataError("entity list is empty but entity-bearing queries were requested")
    queries = []
    for ow in ows:
        if QueryPattern.OW_ONLY in kinds:
            queries.append(Query(QueryPattern.OW_ONLY, ow))
        for e in entities:
            if QueryPattern.NO_PRONOUN in kinds:
                queries.append(Query(QueryPattern.NO_PRONOUN, ow, None, e))
            for p in pronouns:
                for kind in (QueryPattern.LOOSE_ORDER, QueryPattern.STRICT_ORDER):
                    if kind in kinds:
                        queries.append(Query(kind, ow, p, e))
    return _finalize(queries)


def read_queries(path: str | Path) -> list[Query]:
    return _finalize(Query.from_record(rec, f"{path}:{lineno}") for lineno, rec in read_jsonl(path))
