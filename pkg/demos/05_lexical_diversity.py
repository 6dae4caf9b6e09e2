"""Word-level diversity baselines next to the distributional metrics.

Distinct-n counts distinct n-grams per occurrence; Self-BLEU scores each
document against the rest (high = repetitive).  They see surface forms
only, so they complement embedding-space Recall rather than replace it.
The last block correlates the metrics across a family of corpora of
varying repetitiveness.
"""

import numpy as np

from prdist import TokenizedCorpus, distinct_n, lexical_scores, pearson, self_bleu

rng = np.random.default_rng(11)
VOCAB = [f"word{i}" for i in range(50)]


def corpus_with_repetition(rho, n_docs=40):
    """rho = probability a doc is a copy of doc 0 instead of fresh text."""
    base = [VOCAB[j] for j in rng.integers(0, 50, size=10)]
    docs = []
    for _ in range(n_docs):
        if rng.uniform() < rho:
            docs.append(list(base))
        else:
            docs.append([VOCAB[j] for j in rng.integers(0, 50, size=10)])
    return TokenizedCorpus(docs=docs)


# --- the two ends of the spectrum -----------------------------------------
diverse = corpus_with_repetition(0.0)
repetitive = corpus_with_repetition(0.95)
for name, corpus in (("diverse", diverse), ("repetitive", repetitive)):
    scores = lexical_scores(corpus)
    print(f"{name:10s}  distinct-4={scores.distinct_n[4]:.3f}  "
          f"self-BLEU={scores.self_bleu:.3f}")

# --- correlation across a repetition gradient ------------------------------
rhos = np.linspace(0.0, 0.9, 10)
d4 = []
sb = []
for rho in rhos:
    c = corpus_with_repetition(float(rho))
    d4.append(distinct_n(c, 4))
    sb.append(self_bleu(c, max_n=4))
print(f"\npearson(distinct-4, self-BLEU) = {pearson(d4, sb):.3f}  "
      "(strongly negative: the metrics agree on what diversity is)")
