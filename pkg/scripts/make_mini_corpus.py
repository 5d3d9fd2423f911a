#!/usr/bin/env python3
"""Regenerate the bundled mini-corpus under src/lingaug/data/mini/.

The corpus is synthetic Turkish-like tweet text: an imbalanced labeled base
(about 80% NOT), a held-out test split, and an unlabeled pool in which some
documents contain swear + inflected-entity phrases the miner can find.

Usage:
  python scripts/make_mini_corpus.py [--seed 2024] [--out src/lingaug/data/mini]
"""
import argparse
import json
import random
from pathlib import Path

NEUTRAL = (
    "bugün hava çok güzel maç izledik yarın okula gidiyorum kahve içtik film harika akşam "
    "yemek arkadaşlarla tatil deniz kitap okudum teşekkürler herkese iyi geceler sabah erken "
    "kalktım yürüyüş yaptık müzik dinliyorum konser bilet aldım proje bitti sınav kolay geçti "
    "hafta sonu piknik çay demledim annem aradı bahar geldi çiçekler açtı yağmur yağıyor "
    "güneş doğdu trafik sıkışık otobüs geç kaldı yeni telefon aldım oyun oynadık"
).split()
INSULTS = "rezil salak lanet berbat iğrenç pislik alçak yalancı".split()
SWEARS = ["öldür", "defol", "geber", "kahrolsun"]
ENTITIES = [
    ("hakem", "hakemi", "hakemleri"),
    ("komşu", "komşuyu", "komşuları"),
    ("politikacı", "politikacıyı", "politikacıları"),
    ("patron", "patronu", "patronları"),
    ("arap", "arabı", "arapları"),
    ("göçmen", "göçmeni", "göçmenleri"),
]
NOISE = ["@kullanici{}", "http://t.co/{}", "😀", "🔥", "<br>", "www.ornek{}.com", "😡"]
SLANG = ["slm", "mrb", "tmm", "çoooook", "harikaaaa"]


def noisy(rng, words):
    words = list(words)
    for _ in range(rng.randint(0, 2)):
        tok = rng.choice(NOISE).format(rng.randint(1, 999))
        words.insert(rng.randint(0, len(words)), tok)
    if rng.random() < 0.3:
        words.insert(rng.randint(0, len(words)), rng.choice(SLANG))
    if rng.random() < 0.2:
        i = rng.randrange(len(words))
        words[i] = words[i].upper()
    text = " ".join(words)
    if rng.random() < 0.4:
        text += rng.choice(["!", "!!", ".", "?", " ..."])
    return text


def neutral_doc(rng, mention_entity=False):
    words = rng.sample(NEUTRAL, rng.randint(5, 10))
    if mention_entity:
        words.insert(rng.randint(0, len(words)), rng.choice(rng.choice(ENTITIES)))
    return words


def offensive_doc(rng):
    # mostly ordinary words with one or two insults; entity optional
    words = rng.sample(NEUTRAL, rng.randint(4, 8))
    for _ in range(rng.randint(1, 2)):
        words.insert(rng.randint(0, len(words)), rng.choice(INSULTS + SWEARS))
    if rng.random() < 0.5:
        words.insert(rng.randint(0, len(words)), rng.choice(rng.choice(ENTITIES)))
    return words


def mined_doc(rng):
    swear = rng.choice(SWEARS)
    _, acc_sg, acc_pl = rng.choice(ENTITIES)
    form = rng.choice([acc_sg, acc_pl])
    phrase = [swear + form] if rng.random() < 0.1 else [swear, form]
    words = rng.sample(NEUTRAL, rng.randint(3, 7))
    if rng.random() < 0.7:
        words.insert(rng.randint(0, len(words)), rng.choice(INSULTS))
    i = rng.randint(0, len(words))
    return words[:i] + phrase + words[i:]


def decoy_doc(rng):
    # swear or entity alone: must not be mined
    words = rng.sample(NEUTRAL, rng.randint(4, 8))
    if rng.random() < 0.5:
        words.insert(rng.randint(0, len(words)), rng.choice(SWEARS))
    else:
        words.insert(rng.randint(0, len(words)), rng.choice(ENTITIES)[1])
    return words


def write(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "src/lingaug/data/mini")
    args = parser.parse_args()
    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)

    train = []
    for i in range(200):
        train.append({"id": f"tr{i:04d}", "text": noisy(rng, neutral_doc(rng, rng.random() < 0.25)), "label": "NOT"})
    for i in range(200, 250):
        train.append({"id": f"tr{i:04d}", "text": noisy(rng, offensive_doc(rng)), "label": "OFF"})
    rng.shuffle(train)

    test = []
    for i in range(60):
        test.append({"id": f"te{i:04d}", "text": noisy(rng, neutral_doc(rng, rng.random() < 0.25)), "label": "NOT"})
    for i in range(60, 100):
        test.append({"id": f"te{i:04d}", "text": noisy(rng, offensive_doc(rng)), "label": "OFF"})

    corpus = []
    for i in range(170):
        corpus.append({"id": f"un{i:04d}", "text": noisy(rng, mined_doc(rng))})
    for i in range(170, 210):
        corpus.append({"id": f"un{i:04d}", "text": noisy(rng, decoy_doc(rng))})
    for i in range(210, 240):
        corpus.append({"id": f"un{i:04d}", "text": noisy(rng, neutral_doc(rng))})
    # exact repeats of base texts that contain a query phrase, for dedup to catch
    for i, src in enumerate(rng.sample(corpus[:170], 5)):
        dup = {"id": f"tr{250 + i:04d}", "text": src["text"], "label": "OFF"}
        train.append(dup)
    rng.shuffle(corpus)

    write(args.out / "train.jsonl", train)
    write(args.out / "test.jsonl", test)
    write(args.out / "unlabeled.jsonl", corpus)
    (args.out / "swears.txt").write_text("# swear words (verbs of harm and dismissal)\n" + "\n".join(SWEARS) + "\n",
                                          encoding="utf-8")
    entities = [{"lemma": lemma} for lemma, _, _ in ENTITIES]
    write(args.out / "entities.jsonl", entities)
    (args.out / "lexicon.tsv").write_text("# slang\tstandard\nslm\tselam\nmrb\tmerhaba\ntmm\ttamam\n",
                                           encoding="utf-8")
    print(f"train={len(train)} test={len(test)} unlabeled={len(corpus)} -> {args.out}")


if __name__ == "__main__":
    main()
