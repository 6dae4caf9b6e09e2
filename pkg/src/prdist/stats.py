"""Parameter sweeps, the seed-variance protocol, and Pearson correlation.

A sweep cell (n, k, seed) draws n rows without replacement from each
pool, refits the PCA on the sampled pair, and records Precision/Recall.
The subsample depends only on (mode, seed, n), never on k, so metric
columns are comparable across k for a fixed draw.  The variance modes
pin down which side resamples across seeds:

    vary_output     reference draw fixed, output draw follows the seed
    vary_reference  output draw fixed, reference draw follows the seed
    vary_both       both draws follow the seed
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConstantSeries,
    InvalidValue,
    LengthMismatch,
    PoolTooSmall,
    TooFewSeeds,
)
from .support import evaluate_pair

MODES = ("vary_output", "vary_reference", "vary_both")
# the customary study grids: sample counts up to the plateau, neighbor
# counts 1..30 (callers pick what their pools can supply)
DEFAULT_N_GRID = (100, 250, 500, 1000, 2000, 3000, 4000)
DEFAULT_K_GRID = tuple(range(1, 31))
_FIXED_DRAW_SEED = 0x5EED


@dataclass
class SweepRow:
    n: int
    k: int
    seed: int
    precision: float
    recall: float


@dataclass
class SweepTable:
    """Sweep results ordered by (n, k, seed), plus the fixed parameters."""

    rows: list
    fixed_params: dict = field(default_factory=dict)

    def __post_init__(self):
        keys = [(r.n, r.k, r.seed) for r in self.rows]
        if len(set(keys)) != len(keys):
            raise InvalidValue("sweep rows must have unique (n, k, seed) triples")

    def __len__(self):
        return len(self.rows)


@dataclass
class VarianceReport:
    mode: str
    mean_precision: float
    std_precision: float
    mean_recall: float
    std_recall: float
    n_seeds: int

    def to_dict(self):
        return {
            "mode": self.mode,
            "mean_precision": self.mean_precision,
            "std_precision": self.std_precision,
            "mean_recall": self.mean_recall,
            "std_recall": self.std_recall,
            "n_seeds": self.n_seeds,
        }


def _pool_digest(pool):
    import hashlib

    h = hashlib.sha256(pool.data.tobytes()).digest()
    return int.from_bytes(h[:8], "little")


def _draw(pool, digest, n, seed):
    """Sorted uniform draw without replacement, seeded by (seed, n, data).

    Keying on the pool's content digest makes draws coincide for
    value-identical pools (so comparing a pool against itself yields
    identical samples) while staying independent for distinct pools.
    """
    rng = np.random.default_rng(np.random.SeedSequence((seed, n, digest)))
    idx = np.sort(rng.choice(pool.n_rows, size=n, replace=False))
    from .dataio import EmbeddingMatrix

    return EmbeddingMatrix(data=pool.data[idx], label=f"{pool.label}[{seed}:{n}]")


def sweep(
    reference_pool,
    output_pool,
    n_values,
    k_values,
    seeds,
    mode="vary_both",
    variance_target=None,
):
    """Run the full pipeline over every (n, k, seed) cell.

    Deterministic given the seeds (PCG64 subsampling without
    replacement); the PCA is refit inside every cell on the sampled
    pair.
    """
    if mode not in MODES:
        raise InvalidValue(f"mode must be one of {MODES}, got {mode!r}")
    n_values = sorted(set(int(n) for n in n_values))
    k_values = sorted(set(int(k) for k in k_values))
    seeds = list(dict.fromkeys(int(s) for s in seeds))
    if not n_values or not k_values or not seeds:
        raise InvalidValue("n_values, k_values and seeds must be non-empty")
    n_max = max(n_values)
    if n_max > reference_pool.n_rows or n_max > output_pool.n_rows:
        raise PoolTooSmall(
            f"pools of {reference_pool.n_rows}/{output_pool.n_rows} rows "
            f"cannot supply n={n_max}"
        )
    ref_digest = _pool_digest(reference_pool)
    out_digest = _pool_digest(output_pool)
    rows = []
    for n in n_values:
        for seed in seeds:
            ref_seed = _FIXED_DRAW_SEED if mode == "vary_output" else seed
            out_seed = _FIXED_DRAW_SEED if mode == "vary_reference" else seed
            ref = _draw(reference_pool, ref_digest, n, ref_seed)
            out = _draw(output_pool, out_digest, n, out_seed)
            for k in k_values:
                res = evaluate_pair(ref, out, k=k, variance_target=variance_target)
                rows.append(
                    SweepRow(n=n, k=k, seed=seed, precision=res.precision, recall=res.recall)
                )
    rows.sort(key=lambda r: (r.n, r.k, r.seed))
    return SweepTable(
        rows=rows,
        fixed_params={
            "mode": mode,
            "variance_target": variance_target,
            "ref_pool": reference_pool.label,
            "out_pool": output_pool.label,
        },
    )


def seed_variance(table, mode):
    """Across-seed mean and sample std (ddof=1) of Precision and Recall.

    The table must come from a sweep run in the same mode and hold a
    single (n, k) cell group with at least two seeded rows.
    """
    if mode not in MODES:
        raise InvalidValue(f"mode must be one of {MODES}, got {mode!r}")
    table_mode = table.fixed_params.get("mode")
    if table_mode != mode:
        raise InvalidValue(f"table was swept with mode {table_mode!r}, not {mode!r}")
    cells = {(r.n, r.k) for r in table.rows}
    if len(cells) != 1:
        raise InvalidValue(f"seed variance needs a single (n, k) group, table has {len(cells)}")
    if len(table.rows) < 2:
        raise TooFewSeeds(f"need >= 2 seeded rows, got {len(table.rows)}")
    p = np.array([r.precision for r in table.rows])
    r = np.array([r.recall for r in table.rows])
    return VarianceReport(
        mode=mode,
        mean_precision=float(p.mean()),
        std_precision=float(p.std(ddof=1)),
        mean_recall=float(r.mean()),
        std_recall=float(r.std(ddof=1)),
        n_seeds=len(table.rows),
    )


def pearson(x, y):
    """Sample Pearson correlation of two equal-length, non-constant series."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or len(x) != len(y):
        raise LengthMismatch(f"series lengths differ: {x.shape} vs {y.shape}")
    if len(x) < 2:
        raise LengthMismatch("need at least 2 paired observations")
    xc = x - x.mean()
    yc = y - y.mean()
    sx2 = float((xc * xc).sum())
    sy2 = float((yc * yc).sum())
    if sx2 == 0 or sy2 == 0:
        raise ConstantSeries("correlation is undefined for a constant series")
    # single sqrt of the product keeps self-correlation at exactly 1.0
    return float((xc * yc).sum() / np.sqrt(sx2 * sy2))


def write_sweep_csv(table, fh):
    """CSV rows n,k,seed,precision,recall with 17-significant-digit floats."""
    fh.write("n,k,seed,precision,recall\n")
    for r in table.rows:
        fh.write(f"{r.n},{r.k},{r.seed},{r.precision:.17g},{r.recall:.17g}\n")
