"""Rule-based Turkish nominal inflection for entity surface forms.

Covers the accusative singular, the plural and the accusative plural, which
is what query generation needs to target an entity as a direct object.
Harmony follows the stem's last vowel; stem-final p/ç/t/k voice to b/c/d/ğ
before a vowel-initial suffix on polysyllabic stems.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from lingaug import DataError
from lingaug.io import read_jsonl

VOWELS = frozenset("aeıioöuüâîû")
BACK_VOWELS = frozenset("aıouâû")

# last stem vowel -> fourfold (high) suffix vowel
_HIGH_VOWEL = {
    "a": "ı", "ı": "ı", "â": "ı",
    "e": "i", "i": "i", "î": "i",
    "o": "u", "u": "u", "û": "u",
    "ö": "ü", "ü": "ü",
}
_VOICED = {"p": "b", "ç": "c", "t": "d", "k": "ğ"}


class MorphologyError(DataError):
    pass


class Form(str, Enum):
    LEMMA = "LEMMA"
    ACC_SG = "ACC_SG"
    PL = "PL"
    ACC_PL = "ACC_PL"
    MANUAL = "MANUAL"


@dataclass(frozen=True)
class Entity:
    """A target noun.

    ``voicing_exception`` blocks final-stop voicing (devlet -> devleti);
    ``force_voicing`` makes a monosyllabic stem voice anyway (kap -> kabı).
    """

    lemma: str
    voicing_exception: bool = False
    extra_forms: tuple[str, ...] = ()
    force_voicing: bool = False

    def __post_init__(self):
        if not self.lemma or not any(ch in VOWELS for ch in self.lemma):
            raise MorphologyError(f"entity {self.lemma!r} has no Turkish vowel")
        if self.lemma != self.lemma.replace("I", "ı").replace("İ", "i").lower():
            raise MorphologyError(f"entity {self.lemma!r} is not lowercased")
        if any(ch.isspace() for ch in self.lemma):
            raise MorphologyError(f"entity {self.lemma!r} must be a single token")
        object.__setattr__(self, "extra_forms", tuple(self.extra_forms))


@dataclass(frozen=True)
class SurfaceForm:
    text: str
    form: Form


def last_vowel(word: str) -> str:
    for ch in reversed(word):
        if ch in VOWELS:
            return ch
    raise MorphologyError(f"{word!r} has no Turkish vowel")


def syllable_count(word: str) -> int:
    return sum(ch in VOWELS for ch in word)


def _voice(stem: str) -> str:
    final = stem[-1]
    if final == "k" and len(stem) > 1 and stem[-2] == "n":
        return stem[:-1] + "g"  # ahenk -> ahengi, renk -> rengi
    return stem[:-1] + _VOICED[final]


def accusative_singular(e: Entity) -> SurfaceForm:
    stem = e.lemma
    vowel = _HIGH_VOWEL[last_vowel(stem)]
    if stem[-1] in VOWELS:
        return SurfaceForm(stem + "y" + vowel, Form.ACC_SG)
    if stem[-1] in _VOICED and not e.voicing_exception:
        if syllable_count(stem) >= 2 or e.force_voicing:
            stem = _voice(stem)
    return SurfaceForm(stem + vowel, Form.ACC_SG)


def plural(e: Entity) -> SurfaceForm:
    suffix = "lar" if last_vowel(e.lemma) in BACK_VOWELS else "ler"
    return SurfaceForm(e.lemma + suffix, Form.PL)


def accusative_plural(e: Entity) -> SurfaceForm:
    pl = plural(e).text
    return SurfaceForm(pl + ("ı" if pl.endswith("lar") else "i"), Form.ACC_PL)


def all_forms(e: Entity) -> list[SurfaceForm]:
    """Lemma, ACC_SG, PL, ACC_PL, then any manual forms; first spelling wins."""
    candidates = [
        SurfaceForm(e.lemma, Form.LEMMA),
        accusative_singular(e),
        plural(e),
        accusative_plural(e),
        *(SurfaceForm(text, Form.MANUAL) for text in e.extra_forms),
    ]
    seen: set[str] = set()
    out = []
    for sf in candidates:
        if sf.text and sf.text not in seen:
            seen.add(sf.text)
            out.append(sf)
    return out


def read_entities(path: str | Path) -> list[Entity]:
    """Entity list file: ``{"lemma", "voicing_exception"?, "extra_forms"?, "force_voicing"?}``."""
    entities = []
    for lineno, rec in read_jsonl(path):
        where = f"{path}:{lineno}"
        lemma = rec.get("lemma")
        if not isinstance(lemma, str):
            raise DataError(f"{where}: field 'lemma' missing or not a string")
        extra = rec.get("extra_forms", [])
        if not isinstance(extra, list) or not all(isinstance(x, str) for x in extra):
            raise DataError(f"{where}: 'extra_forms' must be a list of strings")
        try:
            entities.append(Entity(
                lemma,
                voicing_exception=bool(rec.get("voicing_exception", False)),
                extra_forms=tuple(extra),
                force_voicing=bool(rec.get("force_voicing", False)),
            ))
        except MorphologyError as exc:
            raise MorphologyError(f"{where}: {exc}") from None
    return entities
