"""Embed a text corpus with the last hidden layer of a causal LM.

Each record maps to one vector: either the last layer's hidden state at
the final non-padding token (final_token pooling, the default) or the
mean of last-layer states over non-padding tokens.  Texts are truncated
on the right to max_tokens; batches are padded on the right to the fixed
max_tokens width so results do not depend on how records share batches.
Identical texts are embedded once and share one vector, so duplicated
records always yield bit-identical rows.
"""

from dataclasses import dataclass

import numpy as np

from .emb1 import read_corpus, write_emb1

DEFAULT_MODEL = "gpt2-large"
POOLINGS = ("final_token", "mean")


@dataclass
class ExtractConfig:
    model_name: str = DEFAULT_MODEL
    pooling: str = "final_token"
    max_tokens: int = 512
    batch_size: int = 8
    device: str = "cpu"

    def __post_init__(self):
        if self.pooling not in POOLINGS:
            raise ValueError(f"pooling must be one of {POOLINGS}, got {self.pooling!r}")
        if self.max_tokens < 1:
            raise ValueError(f"max_tokens must be >= 1, got {self.max_tokens}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")


def _load(config):
    import torch
    from transformers import AutoModel, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(config.model_name)
        model = AutoModel.from_pretrained(config.model_name)
    except Exception as exc:
        raise RuntimeError(f"cannot load model {config.model_name!r}: {exc}") from exc
    if tokenizer.pad_token is None:
        tokenizer.pad_token = tokenizer.eos_token
    tokenizer.padding_side = "right"
    tokenizer.truncation_side = "right"
    model.eval()
    model.to(torch.device(config.device))
    return tokenizer, model


def _embed_batch(texts, tokenizer, model, config):
    import torch

    pad_id = tokenizer.pad_token_id
    encoded = [
        tokenizer(text, truncation=True, max_length=config.max_tokens)["input_ids"]
        for text in texts
    ]
    flagged = [i for i, ids in enumerate(encoded) if len(ids) == 0]
    encoded = [ids if ids else [pad_id] for ids in encoded]
    width = config.max_tokens
    input_ids = torch.full((len(texts), width), pad_id, dtype=torch.long)
    mask = torch.zeros((len(texts), width), dtype=torch.long)
    for i, ids in enumerate(encoded):
        input_ids[i, : len(ids)] = torch.tensor(ids, dtype=torch.long)
        mask[i, : len(ids)] = 1
    device = next(model.parameters()).device
    with torch.no_grad():
        hidden = model(
            input_ids=input_ids.to(device), attention_mask=mask.to(device)
        ).last_hidden_state
    hidden = hidden.cpu()
    if config.pooling == "final_token":
        last = mask.sum(dim=1) - 1
        pooled = hidden[torch.arange(len(texts)), last]
    else:
        m = mask.unsqueeze(-1).to(hidden.dtype)
        pooled = (hidden * m).sum(dim=1) / m.sum(dim=1)
    return pooled.numpy().astype(np.float32), flagged


def extract(corpus_path, config, out_path):
    """Embed every corpus record in order and write an EMB1 file.

    Returns a summary dict: n, d, model, pooling, max_tokens, and the ids
    of records whose text tokenized to nothing (embedded from a single
    padding token).
    """
    ids, texts = read_corpus(corpus_path)

    # embed unique texts once; duplicates share the resulting vector
    unique = {}
    for text in texts:
        unique.setdefault(text, len(unique))
    unique_texts = list(unique)

    tokenizer, model = _load(config)
    vectors = []
    flagged_unique = set()
    for start in range(0, len(unique_texts), config.batch_size):
        batch = unique_texts[start:start + config.batch_size]
        pooled, flagged = _embed_batch(batch, tokenizer, model, config)
        vectors.append(pooled)
        flagged_unique.update(start + i for i in flagged)
    table = np.vstack(vectors)

    rows = table[[unique[text] for text in texts]]
    write_emb1(rows, out_path)
    flagged_ids = [
        rid for rid, text in zip(ids, texts) if unique[text] in flagged_unique
    ]
    return {
        "n": len(ids),
        "d": int(rows.shape[1]),
        "model": config.model_name,
        "pooling": config.pooling,
        "max_tokens": config.max_tokens,
        "flagged_ids": flagged_ids,
        "out": str(out_path),
    }
