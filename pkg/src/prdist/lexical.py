"""Word-level diversity baselines: Distinct-N and Self-BLEU.

Tokenization is deliberately coarse (whitespace split, lowercased),
matching the word-level granularity these metrics are usually quoted at.
Self-BLEU scores each document against the multiset union of all other
documents, with uniform n-gram weights, add-one smoothing on every
n-gram precision, and the standard brevity penalty against the closest
reference length.  Higher Self-BLEU means lower corpus diversity.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import InvalidValue, TooFewDocs

DEFAULT_MAX_N = 4
SELF_BLEU_AUTO_SAMPLE = 1000


@dataclass
class TokenizedCorpus:
    """Documents as token lists, plus the corpus id they came from."""

    docs: list  # list of list-of-str
    source: str = ""

    def __post_init__(self):
        if not self.docs:
            raise InvalidValue("tokenized corpus must contain at least one document")

    def __len__(self):
        return len(self.docs)


@dataclass
class LexicalScores:
    """Distinct-n fractions and Self-BLEU for one corpus."""

    distinct_n: dict
    self_bleu: float
    n_docs: int
    sampled: int | None = None

    def to_dict(self):
        return {
            "distinct": {str(n): v for n, v in sorted(self.distinct_n.items())},
            "self_bleu": self.self_bleu,
            "n_docs": self.n_docs,
            "sampled": self.sampled,
        }


def tokenize(texts, source=""):
    """Whitespace-split and lowercase a list of raw strings."""
    return TokenizedCorpus(docs=[t.lower().split() for t in texts], source=source)


def tokenize_corpus(corpus):
    """TokenizedCorpus from a dataio.TextCorpus."""
    return tokenize(corpus.texts, source=corpus.source_path)


def _ngrams(tokens, n):
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


def distinct_n(corpus, n):
    """Distinct n-grams over total n-gram occurrences, across the corpus.

    Documents shorter than n contribute nothing; a corpus with no
    n-grams at all scores 0.
    """
    if n < 1:
        raise InvalidValue(f"n must be >= 1, got {n}")
    seen = set()
    total = 0
    for doc in corpus.docs:
        grams = _ngrams(doc, n)
        total += len(grams)
        seen.update(grams)
    return len(seen) / total if total else 0.0


def _closest_ref_length(lengths, skip, c):
    """Reference length closest to candidate length c, excluding index skip.

    Ties prefer the shorter reference, per the usual BLEU convention.
    """
    diffs = np.abs(lengths - c).astype(np.float64)
    diffs[skip] = np.inf
    return int(lengths[diffs == diffs.min()].min())


def self_bleu(corpus, max_n=DEFAULT_MAX_N, sample=None, seed=0):
    """Mean sentence-BLEU of each document against all other documents.

    Uniform weights 1/max_n over n-gram orders 1..max_n; clipped n-gram
    precision against the multiset union of the other documents (counts
    clipped at the per-gram maximum across references); add-one
    smoothing on every precision; brevity penalty exp(1 - r/c) when the
    candidate is shorter than the closest reference.  With `sample`
    given (or more than 1000 documents), a seeded uniform subsample of
    documents is evaluated; references always remain all other docs.
    """
    docs = corpus.docs
    n_docs = len(docs)
    if n_docs < 2:
        raise TooFewDocs(f"self_bleu needs at least 2 documents, got {n_docs}")
    if max_n < 1:
        raise InvalidValue(f"max_n must be >= 1, got {max_n}")

    if sample is None and n_docs > SELF_BLEU_AUTO_SAMPLE:
        sample = SELF_BLEU_AUTO_SAMPLE
    if sample is not None and sample < n_docs:
        rng = np.random.default_rng(seed)
        eval_idx = np.sort(rng.choice(n_docs, size=sample, replace=False))
    else:
        eval_idx = np.arange(n_docs)

    # Per order n: total count of each gram per doc, plus the two largest
    # per-doc counts so the max over "all docs but one" is O(1) per gram.
    counts = [[Counter(_ngrams(doc, n)) for doc in docs] for n in range(1, max_n + 1)]
    top2 = []
    for per_doc in counts:
        best = {}
        for j, cnt in enumerate(per_doc):
            for gram, c in cnt.items():
                m1, j1, m2 = best.get(gram, (0, -1, 0))
                if c > m1:
                    best[gram] = (c, j, m1)
                elif c > m2:
                    best[gram] = (m1, j1, c)
        top2.append(best)

    lengths = np.array([len(doc) for doc in docs])
    weight = 1.0 / max_n
    scores = []
    for i in eval_idx:
        c_len = lengths[i]
        if c_len == 0:
            scores.append(0.0)
            continue
        log_sum = 0.0
        for order in range(max_n):
            cand = counts[order][i]
            total = sum(cand.values())
            clipped = 0
            for gram, c in cand.items():
                m1, j1, m2 = top2[order][gram]
                clipped += min(c, m2 if j1 == i else m1)
            log_sum += weight * np.log((clipped + 1.0) / (total + 1.0))
        r_len = _closest_ref_length(lengths, i, c_len)
        bp = 1.0 if c_len >= r_len else np.exp(1.0 - r_len / c_len)
        scores.append(float(bp * np.exp(log_sum)))
    return float(np.mean(scores))


def lexical_scores(corpus, ns=(1, 2, 3, 4), max_n=DEFAULT_MAX_N, sample=None, seed=0):
    """Distinct-n for each n in `ns` plus Self-BLEU, bundled."""
    n_docs = len(corpus.docs)
    effective_sample = sample
    if effective_sample is None and n_docs > SELF_BLEU_AUTO_SAMPLE:
        effective_sample = SELF_BLEU_AUTO_SAMPLE
    return LexicalScores(
        distinct_n={n: distinct_n(corpus, n) for n in ns},
        self_bleu=self_bleu(corpus, max_n=max_n, sample=sample, seed=seed),
        n_docs=n_docs,
        sampled=min(effective_sample, n_docs) if effective_sample is not None else None,
    )
