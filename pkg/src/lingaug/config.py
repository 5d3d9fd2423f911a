"""Pipeline configuration loaded from a YAML file.

Schema (paths are relative to the config file)::

    lang: TR                  # TR or EN
    seed: 13
    paths:
      train: train.jsonl      # labeled base set {"id","text","label"}
      test: test.jsonl        # held-out labeled set
      corpus: unlabeled.jsonl # unlabeled corpus {"id","text"} to mine
      swears: swears.txt      # swear / offensive-word list
      entities: entities.jsonl  # TR entity file; EN: one entity per line
      pronouns: pronouns.txt  # EN only
      lexicon: lexicon.tsv    # optional normalization lexicon
    queries: {include_bare: false, kinds: [loose, strict]}
    match: {modes: [bigram, compound]}        # or [window:3], ...
    normalize: {enabled: true, squeeze_runs: true}
    embedding: {window: 7, dim: 300, epochs: 16, negative: 5, min_count: 5,
                initial_lr: 0.025, subsample_t: null}
    svm: {lambda: 1.0, max_iters: 10000, tol: 1.0e-8}
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import yaml

from lingaug import ConfigError
from lingaug.embeddings import EmbeddingConfig
from lingaug.miner import MatchConfig
from lingaug.querygen import QueryPattern
from lingaug.textproc import Lang, NormalizerConfig, load_lexicon

PATH_KEYS = ("train", "test", "corpus", "swears", "entities", "pronouns", "lexicon")
_SECTIONS = {"lang", "seed", "paths", "queries", "match", "normalize", "embedding", "svm"}


@dataclass
class SvmConfig:
    lam: float = 1.0
    max_iters: int = 10_000
    tol: float = 1e-8


@dataclass
class PipelineConfig:
    lang: Lang = Lang.TR
    seed: int = 0
    base_dir: Path = field(default_factory=Path.cwd)
    paths: dict[str, Path] = field(default_factory=dict)
    include_bare: bool = False
    kinds: tuple[QueryPattern, ...] = (QueryPattern.LOOSE_ORDER, QueryPattern.STRICT_ORDER)
    match: MatchConfig = field(default_factory=MatchConfig)
    normalizer: NormalizerConfig = field(default_factory=NormalizerConfig)
    embedding: EmbeddingConfig = field(default_factory=EmbeddingConfig)
    svm: SvmConfig = field(default_factory=SvmConfig)

    def path(self, key: str) -> Path:
        if key not in self.paths:
            raise ConfigError(f"config has no paths.{key}")
        return self.paths[key]

    def params(self) -> dict[str, Any]:
        """Effective settings as plain data, for manifests."""
        return {
            "lang": self.lang.value,
            "seed": self.seed,
            "include_bare": self.include_bare,
            "kinds": [k.value for k in self.kinds],
            "match": self.match.describe(),
            "normalize": {"enabled": self.normalizer.enabled, "squeeze_runs": self.normalizer.squeeze_runs,
                          "replacements": len(self.normalizer.replacements)},
            "embedding": asdict(self.embedding),
            "svm": asdict(self.svm),
        }


def _section(raw: dict, name: str) -> dict:
    value = raw.get(name) or {}
    if not isinstance(value, dict):
        raise ConfigError(f"config section {name!r} must be a mapping")
    return value


def from_mapping(raw: dict[str, Any], base_dir: Path, seed: int | None = None,
                 lang: str | None = None, check_paths: bool = True) -> PipelineConfig:
    unknown = set(raw) - _SECTIONS
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    cfg_seed = raw.get("seed", 0) if seed is None else seed
    if not isinstance(cfg_seed, int):
        raise ConfigError(f"seed must be an integer, got {cfg_seed!r}")

    paths = {}
    for key, value in _section(raw, "paths").items():
        if key not in PATH_KEYS:
            raise ConfigError(f"unknown path key paths.{key}")
        if value is None:
            continue
        p = (base_dir / str(value)).resolve()
        if check_paths and not p.exists():
            raise ConfigError(f"paths.{key}: {p} does not exist")
        paths[key] = p

    q = _section(raw, "queries")
    kinds = tuple(QueryPattern.parse(k) for k in q.get("kinds", ["loose", "strict"]))

    m = _section(raw, "match")
    match = MatchConfig.parse(m.get("modes", ["bigram", "compound"]))

    n = _section(raw, "normalize")
    replacements = load_lexicon(paths["lexicon"]) if "lexicon" in paths else {}
    normalizer = NormalizerConfig(bool(n.get("enabled", True)), bool(n.get("squeeze_runs", True)), replacements)

    e = dict(_section(raw, "embedding"))
    e.setdefault("seed", cfg_seed)
    try:
        embedding = EmbeddingConfig(**e)
    except TypeError as exc:
        raise ConfigError(f"embedding: {exc}") from None

    s = _section(raw, "svm")
    extra = set(s) - {"lambda", "max_iters", "tol"}
    if extra:
        raise ConfigError(f"unknown svm key(s): {', '.join(sorted(extra))}")
    svm = SvmConfig(float(s.get("lambda", 1.0)), int(s.get("max_iters", 10_000)), float(s.get("tol", 1e-8)))

    return PipelineConfig(
        lang=Lang.parse(lang or raw.get("lang", "TR")),
        seed=cfg_seed,
        base_dir=base_dir,
        paths=paths,
        include_bare=bool(q.get("include_bare", False)),
        kinds=kinds,
        match=match,
        normalizer=normalizer,
        embedding=embedding,
        svm=svm,
    )


def load_config(path: str | Path | None, seed: int | None = None, lang: str | None = None) -> PipelineConfig:
    """Load a YAML config; ``seed`` and ``lang`` override file values."""
    if path is None:
        return from_mapping({}, Path.cwd(), seed, lang)
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from None
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = f":{mark.line + 1}" if mark is not None else ""
        raise ConfigError(f"{path}{line}: invalid YAML") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return from_mapping(raw, path.resolve().parent, seed, lang)
