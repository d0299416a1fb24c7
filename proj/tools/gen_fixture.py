#!/usr/bin/env python3
"""Generate the bundled synthetic fixture corpus and its golden values.

Two windows built around artificial-sweetener news coverage:

  A  1984-1986  16 documents, exactly 60 stems occurring more than ten times;
                "diet" confined to one document next to "calorie".
  B  2004-2006   8 documents, 48 stems above the cutoff; "diet" spread evenly
                with the core vocabulary; "aspartame-infused", "splenda" and
                "sucralose" never occur in A.

Golden report values (threshold, edges, isolates, ...) are computed here with
an independent numpy implementation of the preprocessing and graph rules, so
the C++ pipeline is checked against a second route rather than against itself.

Usage: gen_fixture.py [output_dir]   (default: data/fixture next to this repo)
"""

import json
import random
import re
import shutil
import sys
from datetime import date, timedelta
from pathlib import Path

import numpy as np

SEED = 19842005
MIN_OCCURRENCES = 10

ROOT = Path(__file__).resolve().parent.parent
STOPWORDS = {
    line.strip()
    for line in (ROOT / "data" / "uspto_stopwords.txt").read_text().splitlines()
    if line.strip() and not line.startswith("#")
}

FILLER = [
    "the", "of", "and", "to", "a", "in", "that", "was", "with", "for", "by", "on", "from", "is",
    "it", "its", "this", "these", "which", "were", "are", "be", "been", "have", "has", "had",
    "at", "as", "an", "or", "not", "would", "could", "should", "will", "when", "where", "while",
    "who", "there", "their", "they", "than", "then", "such", "some", "into", "also", "because",
    "each", "other", "another", "all", "since", "those",
]

# Generic newspaper words; each stays at or below the cutoff within a window.
RARE = """
city week year people percent spokesman plan group country street morning office family
letter reporter editor county village meeting question answer reason result member
parent child teacher school student lawyer judge court president senator congress
governor mayor police officer doctor nurse hospital patient clinic farmer farm kitchen
recipe cook chef dinner breakfast lunch menu table restaurant coffee weight obesity
exercise gym runner athlete team coach game season winter summer spring autumn
january february march april june july august october november december monday
tuesday friday weekend holiday travel airport hotel river mountain garden flower
tree window door house apartment building bridge road highway truck train plane
ticket budget tax dollar bank loan interest profit loss contract worker union strike
factory plant machine computer television radio newspaper magazine book author
interview statement comment opinion view critic supporter opponent critic debate vote
election campaign party leader minister embassy border treaty army soldier war peace
""".split()
RARE = sorted(set(RARE))

# Window A topics; profiles give relative weight per document (16 docs).
SAFETY = ["aspartame", "seizure", "brain", "damage", "safety", "cancer", "rat", "test", "scientist",
          "research", "health", "risk", "evidence", "neurologist", "headache", "tumor", "dose",
          "experiment", "laboratory", "symptom"]
ADMIN = ["food", "administration", "approved", "study", "fda", "petition", "hearing", "approval",
         "commissioner", "agency", "government", "board", "searle", "official",
         "label", "warning", "review", "panel"]
MARKET = ["product", "market", "drink", "soda", "sale", "consumer", "price", "industry", "beverage",
          "cola", "bottler", "brand", "sweetener", "sugar", "million", "share", "advertising",
          "supermarket"]
DIET_A = ["diet", "calorie"]
# Single-document words that fall below the threshold and are dropped as isolates.
ISOLATE_A = [("cyclamate", 5), ("saccharin", 11)]

PROFILE_A = {
    "safety": [6, 6, 5, 6, 5, 4, 5, 4, 3, 1, 0, 0, 0, 0, 0, 0],
    "admin": [2, 3, 3, 3, 2, 3, 3, 3, 3, 2, 2, 3, 2, 2, 2, 0],
    "market": [0, 0, 0, 0, 0, 0, 0, 1, 3, 5, 6, 5, 6, 5, 5, 0],
    "diet": [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
}

# Window B (8 docs).
CORE_B = ["diet", "food", "sugar", "sweetener", "product", "aspartame", "calorie", "drink", "splenda",
          "aspartame-infused", "sucralose"]
HEALTH_B = ["health", "cancer", "brain", "study", "research", "scientist", "risk", "evidence", "tumor",
            "headache", "symptom", "dose", "safety", "rat", "experiment", "laboratory", "fda", "warning"]
MARKET_B = ["market", "soda", "sale", "consumer", "price", "industry", "beverage", "cola", "bottler",
            "brand", "million", "share", "advertising", "supermarket", "label", "agency", "government",
            "official", "review"]
PROFILE_B = {
    "core": [1, 1, 1, 1, 1, 1, 1, 1],
    "health": [1, 1, 1, 1, 0, 0, 0, 0],
    "market": [0, 0, 0, 0, 1, 1, 1, 1],
}


def stem_plural(token: str) -> str:
    if len(token) >= 4 and token.endswith("s") and not token.endswith("ss"):
        return token[:-1]
    return token


def distribute(rng: random.Random, total: int, profile: list) -> list:
    weights = [float(w) for w in profile]
    counts = [0] * len(profile)
    support = [i for i, w in enumerate(weights) if w > 0]
    for i in support:  # every supported document gets at least one occurrence
        counts[i] += 1
    for _ in range(total - len(support)):
        counts[rng.choices(range(len(profile)), weights=weights)[0]] += 1
    return counts


def surface(rng: random.Random, stem: str) -> str:
    if "-" not in stem and len(stem) >= 3 and rng.random() < 0.3:
        return stem + "s"
    return stem


def render(rng: random.Random, words: list) -> str:
    rng.shuffle(words)
    sentences, i = [], 0
    while i < len(words):
        n = rng.randint(8, 14)
        chunk = words[i:i + n]
        i += n
        if rng.random() < 0.2:
            chunk.insert(rng.randint(0, len(chunk)), str(rng.randint(1960, 2006)))
        text = " ".join(chunk)
        text = text[0].upper() + text[1:]
        sentences.append(text + ".")
    paragraphs = [" ".join(sentences[j:j + 5]) for j in range(0, len(sentences), 5)]
    return "\n\n".join(paragraphs) + "\n"


def decorate(word: str) -> str:
    if word.startswith("fda"):
        return word.upper()
    if word.startswith("searle"):
        return "Searle" + word[6:]
    if word == "aspartame-infused":
        return "“aspartame-infused”"
    if word.startswith("splenda"):
        return "Splenda" + word[7:]
    return word


def build_window(rng, n_docs, topics, rare_per_doc):
    """topics: list of (words, profile, (lo, hi) total range)."""
    docs = [[] for _ in range(n_docs)]
    for words, profile, (lo, hi) in topics:
        for w in words:
            counts = distribute(rng, rng.randint(lo, hi), profile)
            for d, c in enumerate(counts):
                docs[d].extend(decorate(surface(rng, w)) for _ in range(c))
    rare_used = {w: 0 for w in RARE}
    for d in range(n_docs):
        for _ in range(rare_per_doc):
            choices = [w for w in RARE if rare_used[w] < 9]
            w = rng.choice(choices)
            rare_used[w] += 1
            docs[d].append(surface(rng, w))
        content = len(docs[d])
        docs[d].extend(rng.choice(FILLER) for _ in range(int(content * 0.8)))
    return [render(rng, d) for d in docs]


def random_dates(rng, n, start, end):
    span = (end - start).days
    return sorted(start + timedelta(days=rng.randint(0, span)) for _ in range(n))


# ---------------------------------------------------------------------------
# Independent oracle

TOKEN = re.compile(r"[A-Za-z0-9]+(?:-[A-Za-z0-9]+)*")


def preprocess(text: str) -> dict:
    counts = {}
    for raw in TOKEN.findall(text):
        if not re.search(r"[A-Za-z]", raw):
            continue
        low = raw.lower()
        stem = stem_plural(low)
        if stem in STOPWORDS or low in STOPWORDS:
            continue
        counts[stem] = counts.get(stem, 0) + 1
    return counts


def oracle(texts: list) -> dict:
    per_doc = [preprocess(t) for t in texts]
    window = {}
    for c in per_doc:
        for k, v in c.items():
            window[k] = window.get(k, 0) + v
    ranked = sorted(window.items(), key=lambda kv: (-kv[1], kv[0]))
    included = [k for k, v in ranked if v > MIN_OCCURRENCES][:100]
    m = np.array([[c.get(w, 0) for c in per_doc] for w in included], dtype=np.float64)
    norms = (m * m).sum(axis=1)
    cos = (m @ m.T) / np.sqrt(np.outer(norms, norms))
    np.fill_diagonal(cos, 1.0)
    cos = np.clip(cos, 0.0, 1.0)
    lower = cos[np.tril_indices(len(included), k=-1)]
    threshold = float(lower.mean())
    edges = [(included[i], included[j]) for i in range(len(included)) for j in range(i)
             if cos[i, j] >= threshold]
    connected = {w for e in edges for w in e}
    return {
        "documents": len(texts),
        "vocabulary": len(included),
        "matrix_rows": len(included),
        "matrix_cols": len(texts),
        "derived_threshold": threshold,
        "edges": len(edges),
        "nodes": len(connected),
        "isolates_removed": len(included) - len(connected),
        "top5": included[:5],
        "all_stems": sorted(window),
        "diet_neighbors": sorted({a if b == "diet" else b for a, b in edges if "diet" in (a, b)}),
    }


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "data" / "fixture"
    corpus_dir = out / "corpus"
    if corpus_dir.exists():
        shutil.rmtree(corpus_dir)
    corpus_dir.mkdir(parents=True)
    rng = random.Random(SEED)

    texts_a = build_window(rng, 16, [
        (SAFETY, PROFILE_A["safety"], (14, 34)),
        (ADMIN, PROFILE_A["admin"], (13, 30)),
        (MARKET, PROFILE_A["market"], (13, 30)),
        (DIET_A, PROFILE_A["diet"], (12, 14)),
    ] + [([w], [1 if i == d else 0 for i in range(16)], (11, 13)) for w, d in ISOLATE_A], rare_per_doc=40)
    texts_b = build_window(rng, 8, [
        (CORE_B, PROFILE_B["core"], (16, 30)),
        (HEALTH_B, PROFILE_B["health"], (12, 22)),
        (MARKET_B, PROFILE_B["market"], (12, 22)),
    ], rare_per_doc=30)

    dates_a = random_dates(rng, 16, date(1984, 1, 1), date(1986, 12, 31))
    dates_b = random_dates(rng, 8, date(2004, 1, 1), date(2006, 12, 31))
    for i, (d, t) in enumerate(zip(dates_a, texts_a)):
        (corpus_dir / f"{d.isoformat()}_a{i + 1:02d}.txt").write_text(t, encoding="utf-8")
    for i, (d, t) in enumerate(zip(dates_b, texts_b)):
        (corpus_dir / f"{d.isoformat()}_b{i + 1:02d}.txt").write_text(t, encoding="utf-8")

    golden_a, golden_b = oracle(texts_a), oracle(texts_b)
    assert golden_a["vocabulary"] == 60, golden_a["vocabulary"]
    assert golden_b["vocabulary"] == 48, golden_b["vocabulary"]
    assert golden_a["diet_neighbors"] == ["calorie"], golden_a["diet_neighbors"]
    assert golden_a["isolates_removed"] >= 2, golden_a["isolates_removed"]
    for planted in ("aspartame-infused", "splenda", "sucralose"):
        assert planted not in golden_a["all_stems"], planted
    for g in (golden_a, golden_b):
        del g["all_stems"]

    config = {
        "input_dir": "corpus",
        "min_occurrences": MIN_OCCURRENCES,
        "vocab_cap": 100,
        "seed": 42,
        "windows": [
            {"label": "A", "start": "1984-01-01", "end": "1986-12-31"},
            {"label": "B", "start": "2004-01-01", "end": "2006-12-31"},
        ],
    }
    (out / "config.json").write_text(json.dumps(config, indent=2) + "\n")
    golden = {"generator_seed": SEED, "min_occurrences": MIN_OCCURRENCES, "A": golden_a, "B": golden_b}
    (out / "golden.json").write_text(json.dumps(golden, indent=2) + "\n")
    print(json.dumps(golden, indent=2))


if __name__ == "__main__":
    main()
