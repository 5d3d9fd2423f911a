"""File-level pipeline stages.

Each ``run_*`` function reads the inputs of one stage, writes its outputs
and a sibling manifest, and returns a small dict of counts. The CLI
subcommands and the end-to-end ``pipeline`` are thin wrappers over these.
"""
from __future__ import annotations

import json
import logging
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

import numpy as np

from lingaug import DataError
from lingaug import augment, embeddings, evaluation, miner, querygen, svm
from lingaug.config import PipelineConfig
from lingaug.dataset import LabeledDataset, dedup_key, read_dataset
from lingaug.io import read_jsonl, read_wordlist, require, write_jsonl
from lingaug.manifest import write_manifest
from lingaug.morphology import read_entities
from lingaug.textproc import (
    CleanDocument,
    JsonlSource,
    Lang,
    NormalizerConfig,
    clean,
    normalize,
    read_clean_corpus,
)

log = logging.getLogger(__name__)


def _features(docs: Sequence[CleanDocument], normalizer: NormalizerConfig | None) -> list[CleanDocument]:
    if normalizer is None:
        return list(docs)
    return [normalize(d, normalizer) for d in docs]


def run_clean(src: Path, out: Path, lang: Lang, normalizer: NormalizerConfig | None = None) -> dict:
    """Clean a corpus or labeled file; fields other than id/text are kept."""
    extras = {}
    for lineno, rec in read_jsonl(src):
        extras[require(rec, "id", str, f"{src}:{lineno}")] = {
            k: v for k, v in rec.items() if k not in ("id", "text", "tokens")}
    records, empty = [], 0
    for raw in JsonlSource(Path(src), lang).open():
        doc = clean(raw)
        if normalizer is not None:
            doc = normalize(doc, normalizer)
        empty += not doc.tokens
        records.append({**doc.to_record(), **extras[doc.id]})
    n = write_jsonl(out, records)
    counts = {"documents": n, "empty_after_cleaning": empty}
    write_manifest(out, "clean", {"lang": lang.value, "normalize": normalizer is not None}, None,
                   inputs=[src], counts=counts)
    return counts


def run_gen_queries(cfg: PipelineConfig, out: Path, swears: Path, entities: Path,
                    pronouns: Path | None = None) -> dict:
    if cfg.lang is Lang.TR:
        queries = querygen.generate_turkish(read_wordlist(swears), read_entities(entities), cfg.include_bare)
        inputs = [swears, entities]
    else:
        plist = read_wordlist(pronouns) if pronouns is not None else []
        queries = querygen.generate_english(read_wordlist(swears), plist, read_wordlist(entities), cfg.kinds)
        inputs = [p for p in (swears, pronouns, entities) if p is not None]
    n = write_jsonl(out, (q.to_record() for q in queries))
    counts = {"queries": n}
    write_manifest(out, "gen-queries", cfg.params(), cfg.seed, inputs=inputs, counts=counts)
    return counts


def run_mine(cfg: PipelineConfig, corpus: Path, queries: Path, out: Path) -> dict:
    qs = querygen.read_queries(queries)
    docs = list(read_clean_corpus(corpus, cfg.lang))
    records = miner.mine(docs, qs, cfg.match)
    n = miner.write_mined(out, records)
    counts = {"documents": len(docs), "queries": len(qs), "mined": n}
    write_manifest(out, "mine", cfg.params(), cfg.seed, inputs=[corpus, queries], counts=counts)
    return counts


def run_dedup(cfg: PipelineConfig, mined: Path, against: Sequence[Path], out: Path) -> dict:
    records = miner.read_mined(mined, cfg.lang)
    datasets = [read_dataset(p, cfg.lang) for p in against]
    kept = miner.dedup(records, datasets)
    n = miner.write_mined(out, kept)
    counts = {"input": len(records), "kept": n, "removed": len(records) - n}
    write_manifest(out, "dedup", cfg.params(), cfg.seed, inputs=[mined, *against], counts=counts)
    return counts


def run_balance(cfg: PipelineConfig, base: Path, pool: Path, out: Path, plot: bool = True) -> dict:
    dataset = read_dataset(base, cfg.lang)
    records = miner.read_mined(pool, cfg.lang)
    balanced, report = augment.balance(dataset, records, cfg.seed)
    balanced.save(out)
    report_path = out.with_name(out.stem + ".balance.json")
    report_path.write_text(json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    outputs = [report_path]
    if plot:
        from lingaug.plotting import plot_balance
        outputs.append(plot_balance(report, out.with_name(out.stem + ".balance.png")))
    counts = {k: v for k, v in report.to_dict().items() if k != "per_query_added"}
    write_manifest(out, "balance", cfg.params(), cfg.seed, inputs=[base, pool], outputs=outputs, counts=counts)
    if report.exhausted:
        log.warning("balance: pool of %d records could not cover a deficit of %d", len(records), report.deficit)
    return counts


def run_sample_annotate(pool: Path, n: int, out: Path, seed: int, lang: Lang = Lang.TR) -> dict:
    records = miner.read_mined(pool, lang)
    rows = augment.sample_for_annotation(records, n, seed)
    augment.write_annotation_file(out, rows)
    counts = {"pool": len(records), "sampled": len(rows)}
    write_manifest(out, "sample-annotate", {"n": n}, seed, inputs=[pool], counts=counts)
    return counts


def run_agreement(src: Path, out: Path | None = None) -> dict:
    stats = augment.agreement(src).to_dict()
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(stats, indent=2) + "\n", encoding="utf-8")
        write_manifest(out, "agreement", {}, None, inputs=[src], counts=stats)
    return stats


def _read_docs(path: Path, lang: Lang) -> list[CleanDocument]:
    return list(read_clean_corpus(path, lang))


def run_train_embed(cfg: PipelineConfig, corpus: Sequence[Path], out: Path, binary: bool = False,
                    use_normalizer: bool = True) -> dict:
    docs = [d for p in corpus for d in _read_docs(p, cfg.lang)]
    docs = _features(docs, cfg.normalizer if use_normalizer else None)
    table = embeddings.train(docs, cfg.embedding)
    if binary:
        table.save_binary(out)
    else:
        table.save_text(out)
    counts = {"documents": len(docs), "vocab": len(table), "dim": table.dim,
              "epoch_losses": table.epoch_losses}
    write_manifest(out, "train-embed", cfg.params(), cfg.embedding.seed, inputs=list(corpus), counts=counts)
    return counts


def run_embed(cfg: PipelineConfig, table_path: Path, src: Path, out: Path, use_normalizer: bool = True) -> dict:
    table = embeddings.EmbeddingTable.load(table_path)
    docs = _features(_read_docs(src, cfg.lang), cfg.normalizer if use_normalizer else None)
    n = write_jsonl(out, ({"id": d.id, "vector": embeddings.embed_doc(d, table).tolist()} for d in docs))
    counts = {"documents": n, "dim": table.dim}
    write_manifest(out, "embed", cfg.params(), None, inputs=[table_path, src], counts=counts)
    return counts


def _labeled_features(cfg: PipelineConfig, table: embeddings.EmbeddingTable, dataset: LabeledDataset,
                      use_normalizer: bool) -> np.ndarray:
    docs = _features(dataset.docs(), cfg.normalizer if use_normalizer else None)
    return embeddings.embed_docs(docs, table)


def run_train_svm(cfg: PipelineConfig, table_path: Path, train_path: Path, out: Path,
                  use_normalizer: bool = True) -> dict:
    table = embeddings.EmbeddingTable.load(table_path)
    dataset = read_dataset(train_path, cfg.lang)
    X = _labeled_features(cfg, table, dataset, use_normalizer)
    trace: list[float] = []
    model = svm.train(svm.TrainSet.from_labels(X, dataset.labels()), cfg.svm.lam, cfg.svm.max_iters,
                      cfg.svm.tol, trace=trace)
    model.save(out)
    off, not_ = dataset.counts()
    counts = {"examples": len(dataset), "OFF": off, "NOT": not_, "iterations": len(trace) - 1,
              "final_objective": trace[-1]}
    write_manifest(out, "train-svm", cfg.params(), cfg.seed, inputs=[table_path, train_path], counts=counts)
    return counts


def run_predict(cfg: PipelineConfig, table_path: Path, model_path: Path, src: Path, out: Path,
                use_normalizer: bool = True) -> dict:
    table = embeddings.EmbeddingTable.load(table_path)
    model = svm.LinearModel.load(model_path)
    golds = {}
    for lineno, rec in read_jsonl(src):
        if "label" in rec:
            golds[require(rec, "id", str, f"{src}:{lineno}")] = rec["label"]
    docs = _features(_read_docs(src, cfg.lang), cfg.normalizer if use_normalizer else None)
    preds = svm.predict_batch(model, embeddings.embed_docs(docs, table)) if docs else []
    rows = []
    for d, p in zip(docs, preds):
        row = {"id": d.id, "pred": p}
        if d.id in golds:
            row["gold"] = golds[d.id]
        rows.append(row)
    n = write_jsonl(out, rows)
    counts = {"documents": n, "OFF": preds.count("OFF"), "NOT": preds.count("NOT")}
    write_manifest(out, "predict", cfg.params(), None, inputs=[table_path, model_path, src], counts=counts)
    return counts


def run_evaluate(predictions: Sequence[tuple[str, str, Path]], out_prefix: Path, plot: bool = True) -> list:
    """Score ``(model_name, dataset_name, predictions_path)`` triples.

    Writes ``<prefix>.txt``, ``.csv``, ``.json`` and (optionally) ``.png``.
    """
    reports = []
    for model_name, dataset_name, path in predictions:
        preds, golds = evaluation.read_predictions(path)
        reports.append(evaluation.report(evaluation.confusion(preds, golds), model_name, dataset_name))
    out_prefix.parent.mkdir(parents=True, exist_ok=True)
    outputs = []
    for fmt, ext in (("text", ".txt"), ("csv", ".csv"), ("json", ".json")):
        p = out_prefix.with_name(out_prefix.name + ext)
        p.write_text(evaluation.render(reports, fmt), encoding="utf-8")
        outputs.append(p)
    if plot:
        from lingaug.plotting import plot_reports
        outputs.append(plot_reports(reports, out_prefix.with_name(out_prefix.name + ".png")))
    counts = {f"{r.model_name}/{r.dataset_name}": asdict(r.matrix) for r in reports}
    write_manifest(outputs[2], "evaluate", {"models": [[m, d] for m, d, _ in predictions]}, None,
                   inputs=[p for _, _, p in predictions], outputs=outputs, counts=counts)
    return reports


def assert_no_leakage(train_path: Path, test_path: Path, lang: Lang) -> None:
    test_keys = read_dataset(test_path, lang).keys()
    for ex in read_dataset(train_path, lang).examples:
        if dedup_key(ex.doc.text) in test_keys:
            raise DataError(f"{train_path}: example {ex.doc.id!r} duplicates a held-out test text")


def run_pipeline(cfg: PipelineConfig, out_dir: Path, plot: bool = True) -> dict:
    """clean -> gen-queries -> mine -> dedup -> balance -> train-embed -> train-svm -> evaluate.

    Both the unbalanced base and the balanced set go through the model
    stages so the report compares them side by side.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    lang = cfg.lang
    summary: dict = {}
    clean_dir = out_dir / "clean"
    for key in ("train", "test", "corpus"):
        summary[f"clean.{key}"] = run_clean(cfg.path(key), clean_dir / f"{key}.jsonl", lang)

    queries = out_dir / "queries.jsonl"
    summary["gen-queries"] = run_gen_queries(cfg, queries, cfg.path("swears"), cfg.path("entities"),
                                             cfg.paths.get("pronouns"))
    mined = out_dir / "mined.jsonl"
    summary["mine"] = run_mine(cfg, clean_dir / "corpus.jsonl", queries, mined)
    pool = out_dir / "mined.dedup.jsonl"
    summary["dedup"] = run_dedup(cfg, mined, [clean_dir / "train.jsonl", clean_dir / "test.jsonl"], pool)
    balanced = out_dir / "balanced.jsonl"
    summary["balance"] = run_balance(cfg, clean_dir / "train.jsonl", pool, balanced, plot=plot)
    assert_no_leakage(balanced, clean_dir / "test.jsonl", lang)

    evaluations = []
    for variant, train_path in (("base", clean_dir / "train.jsonl"), ("balanced", balanced)):
        table = out_dir / "embeddings" / f"{variant}.txt"
        model = out_dir / "models" / f"{variant}.json"
        preds = out_dir / "predictions" / f"{variant}.jsonl"
        summary[f"train-embed.{variant}"] = run_train_embed(cfg, [train_path], table)
        summary[f"train-svm.{variant}"] = run_train_svm(cfg, table, train_path, model)
        summary[f"predict.{variant}"] = run_predict(cfg, table, model, clean_dir / "test.jsonl", preds)
        evaluations.append(("Word2Vec-SVM", variant, preds))
    reports = run_evaluate(evaluations, out_dir / "report", plot=plot)
    summary["evaluate"] = {f"{r.model_name}/{r.dataset_name}": r.to_dict() for r in reports}
    (out_dir / "summary.json").write_text(json.dumps(summary, indent=2, ensure_ascii=False) + "\n",
                                          encoding="utf-8")
    return summary
