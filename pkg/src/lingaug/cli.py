"""Command-line entry point: ``lingaug <subcommand> ...``.

Exit codes: 0 on success, 1 for usage or configuration errors, 2 for data
and validation errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from lingaug import ConfigError, DataError, __version__
from lingaug import stages
from lingaug.config import PipelineConfig, load_config
from lingaug.embeddings import EmbeddingConfig
from lingaug.miner import MatchConfig
from lingaug.querygen import QueryPattern
from lingaug.textproc import NormalizerConfig, load_lexicon

log = logging.getLogger("lingaug")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=Path, help="YAML pipeline config")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--lang", choices=["TR", "EN", "tr", "en"], help="override the config language")
    return p


def _normalize_flags(p: argparse.ArgumentParser, default: bool) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--normalize", dest="normalize", action="store_true", default=default,
                   help="apply run-squeezing and the replacement lexicon" + (" (default)" if default else ""))
    g.add_argument("--no-normalize", dest="normalize", action="store_false")
    p.add_argument("--lexicon", type=Path, help="from<TAB>to replacement lexicon")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="lingaug", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lingaug {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("clean", parents=[common], help="clean and tokenize a JSON-lines corpus")
    p.add_argument("-i", "--input", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, required=True)
    _normalize_flags(p, default=False)

    p = sub.add_parser("gen-queries", parents=[common], help="build the query set")
    p.add_argument("--swears", "--ows", dest="swears", type=Path, required=True,
                   help="swear / offensive-word list")
    p.add_argument("--entities", type=Path, required=True,
                   help="TR: entity JSON-lines; EN: entity word list")
    p.add_argument("--pronouns", type=Path, help="pronoun list (EN)")
    p.add_argument("--kinds", help="EN pattern kinds, e.g. loose,strict,no_pronoun,ow_only")
    p.add_argument("--include-bare", action="store_true", help="TR: also emit lemma and bare plural")
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("mine", parents=[common], help="match a cleaned corpus against queries")
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--queries", type=Path, required=True)
    p.add_argument("--modes", help="Turkish match modes, e.g. bigram,compound or window:3")
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("dedup", parents=[common], help="drop mined records seen elsewhere")
    p.add_argument("-i", "--input", type=Path, required=True)
    p.add_argument("--against", type=Path, nargs="*", default=[], help="labeled datasets to check against")
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("balance", parents=[common], help="add mined OFF records until classes are equal")
    p.add_argument("--base", type=Path, required=True)
    p.add_argument("--pool", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.add_argument("--no-plot", action="store_true")

    p = sub.add_parser("sample-annotate", parents=[common], help="sample mined records for two annotators")
    p.add_argument("--pool", type=Path, required=True)
    p.add_argument("-n", type=int, default=100)
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("agreement", parents=[common], help="tally a filled annotation file")
    p.add_argument("-i", "--input", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("train-embed", parents=[common], help="train skip-gram embeddings")
    p.add_argument("--corpus", type=Path, nargs="+", required=True)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.add_argument("--binary", action="store_true", help="write the binary float32 format")
    for name in ("window", "dim", "epochs", "negative", "min-count"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--initial-lr", type=float)
    p.add_argument("--subsample-t", type=float)
    _normalize_flags(p, default=True)

    p = sub.add_parser("embed", parents=[common], help="write pooled document vectors")
    p.add_argument("--table", type=Path, required=True)
    p.add_argument("-i", "--input", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, required=True)
    _normalize_flags(p, default=True)

    p = sub.add_parser("train-svm", parents=[common], help="train the squared-hinge linear classifier")
    p.add_argument("--table", type=Path, required=True)
    p.add_argument("--train", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--tol", type=float)
    _normalize_flags(p, default=True)

    p = sub.add_parser("predict", parents=[common], help="label documents with a trained model")
    p.add_argument("--table", type=Path, required=True)
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("-i", "--input", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, required=True)
    _normalize_flags(p, default=True)

    p = sub.add_parser("evaluate", parents=[common], help="score predictions and render reports")
    p.add_argument("-p", "--predictions", nargs="+", required=True,
                   help="prediction files, optionally as MODEL:DATASET=path")
    p.add_argument("-o", "--output", type=Path, required=True, help="output prefix for .txt/.csv/.json/.png")
    p.add_argument("--no-plot", action="store_true")

    p = sub.add_parser("pipeline", parents=[common], help="run every stage end to end")
    p.add_argument("--out-dir", type=Path, required=True)
    p.add_argument("--no-plot", action="store_true")
    return parser


def _config(args) -> PipelineConfig:
    cfg = load_config(args.config, args.seed, args.lang)
    if getattr(args, "lexicon", None) is not None:
        cfg.normalizer = NormalizerConfig(cfg.normalizer.enabled, cfg.normalizer.squeeze_runs,
                                          load_lexicon(args.lexicon))
    return cfg


def _prediction_spec(item: str) -> tuple[str, str, Path]:
    if "=" in item:
        name, path = item.split("=", 1)
        model, _, dataset = name.partition(":")
        return model, dataset, Path(path)
    path = Path(item)
    return "Word2Vec-SVM", path.stem, path


def run(args) -> object:
    cfg = _config(args)
    cmd = args.command
    normalizer = cfg.normalizer if getattr(args, "normalize", False) else None
    if cmd == "clean":
        return stages.run_clean(args.input, args.output, cfg.lang, normalizer)
    if cmd == "gen-queries":
        if args.kinds:
            cfg.kinds = tuple(QueryPattern.parse(k) for k in args.kinds.split(","))
        cfg.include_bare = cfg.include_bare or args.include_bare
        return stages.run_gen_queries(cfg, args.output, args.swears, args.entities, args.pronouns)
    if cmd == "mine":
        if args.modes:
            cfg.match = MatchConfig.parse(args.modes)
        return stages.run_mine(cfg, args.corpus, args.queries, args.output)
    if cmd == "dedup":
        return stages.run_dedup(cfg, args.input, args.against, args.output)
    if cmd == "balance":
        return stages.run_balance(cfg, args.base, args.pool, args.output, plot=not args.no_plot)
    if cmd == "sample-annotate":
        return stages.run_sample_annotate(args.pool, args.n, args.output, cfg.seed, cfg.lang)
    if cmd == "agreement":
        return stages.run_agreement(args.input, args.output)
    if cmd == "train-embed":
        overrides = {k: getattr(args, k) for k in ("window", "dim", "epochs", "negative", "min_count",
                                                  "initial_lr", "subsample_t")
                     if getattr(args, k) is not None}
        if overrides:
            cfg.embedding = EmbeddingConfig(**{**cfg.embedding.__dict__, **overrides})
        return stages.run_train_embed(cfg, args.corpus, args.output, args.binary, args.normalize)
    if cmd == "embed":
        return stages.run_embed(cfg, args.table, args.input, args.output, args.normalize)
    if cmd == "train-svm":
        for attr, value in (("lam", args.lam), ("max_iters", args.max_iters), ("tol", args.tol)):
            if value is not None:
                setattr(cfg.svm, attr, value)
        return stages.run_train_svm(cfg, args.table, args.train, args.output, args.normalize)
    if cmd == "predict":
        return stages.run_predict(cfg, args.table, args.model, args.input, args.output, args.normalize)
    if cmd == "evaluate":
        reports = stages.run_evaluate([_prediction_spec(p) for p in args.predictions], args.output,
                                      plot=not args.no_plot)
        from lingaug.evaluation import render
        sys.stdout.write(render(reports, "text"))
        return None
    if cmd == "pipeline":
        if args.config is None:
            raise ConfigError("pipeline needs --config")
        summary = stages.run_pipeline(cfg, args.out_dir, plot=not args.no_plot)
        sys.stdout.write((args.out_dir / "report.txt").read_text(encoding="utf-8"))
        return {"stages": len(summary)}
    raise ConfigError(f"unknown command {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        result = run(args)
    except ConfigError as exc:
        print(f"lingaug: configuration error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"lingaug: data error: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, dict):
        print(json.dumps(result, ensure_ascii=False, default=str))
    return 0


if __name__ == "__main__":
    sys.exit(main())
