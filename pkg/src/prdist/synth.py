"""Seeded Gaussian-mixture generators used as the synthetic test harness.

The topic-coverage scenarios mirror a two-topic reference corpus compared
against outputs that cover a subset, the same set, or a superset of those
topics, with clusters separated by 20x their standard deviation so
support overlaps are unambiguous.  All sampling uses numpy's PCG64
generator, so draws reproduce bit-for-bit across platforms for a given
seed.
"""

from dataclasses import dataclass

import numpy as np

from .dataio import EmbeddingMatrix
from .errors import InvalidSpec

SCENARIOS = ("Q1_subset", "Q2_matched", "Q3_superset")
DEFAULT_DIMENSION = 16
DEFAULT_SCALE = 1.0
# 40x the within-cluster std: comfortably past the >= 20x contract, and
# far enough that the separation axes dominate the union's variance
SEPARATION_FACTOR = 40.0


@dataclass
class Cluster:
    center: np.ndarray  # (d,)
    scale: np.ndarray   # (d,) per-axis std
    weight: float


@dataclass
class MixtureSpec:
    """A weighted axis-aligned Gaussian mixture in d dimensions."""

    dimension: int
    clusters: list
    seed: int

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidSpec(f"dimension must be >= 1, got {self.dimension}")
        if not self.clusters:
            raise InvalidSpec("mixture needs at least one cluster")
        normalized = []
        for c in self.clusters:
            center = np.asarray(c.center, dtype=np.float64).reshape(-1)
            scale = np.broadcast_to(
                np.asarray(c.scale, dtype=np.float64), (self.dimension,)
            ).copy()
            if center.shape != (self.dimension,):
                raise InvalidSpec(
                    f"cluster center has shape {center.shape}, expected ({self.dimension},)"
                )
            if np.any(scale <= 0):
                raise InvalidSpec("cluster scales must be positive")
            if c.weight < 0:
                raise InvalidSpec("cluster weights must be non-negative")
            normalized.append(Cluster(center=center, scale=scale, weight=float(c.weight)))
        total = sum(c.weight for c in normalized)
        if abs(total - 1.0) > 1e-9:
            raise InvalidSpec(f"cluster weights must sum to 1, got {total!r}")
        self.clusters = normalized

    def to_dict(self):
        return {
            "dimension": self.dimension,
            "seed": self.seed,
            "clusters": [
                {
                    "center": c.center.tolist(),
                    "scale": c.scale.tolist(),
                    "weight": c.weight,
                }
                for c in self.clusters
            ],
        }


def sample_mixture(spec, n, label=""):
    """Draw n points: cluster indices from the weights, then per-axis normals."""
    if n < 1:
        raise InvalidSpec(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(spec.seed)
    weights = np.array([c.weight for c in spec.clusters])
    idx = rng.choice(len(spec.clusters), size=n, p=weights)
    z = rng.standard_normal((n, spec.dimension))
    centers = np.stack([c.center for c in spec.clusters])
    scales = np.stack([c.scale for c in spec.clusters])
    data = centers[idx] + z * scales[idx]
    return EmbeddingMatrix(data=data, label=label)


def _topic_centers(dimension):
    """Four cluster centers pairwise separated by >= 20x the unit scale."""
    sep = SEPARATION_FACTOR * DEFAULT_SCALE
    centers = np.zeros((4, dimension))
    centers[1, 0] = sep
    centers[2, 1] = sep
    centers[3, 2] = sep
    return centers


def scenario_specs(scenario, seed, dimension=DEFAULT_DIMENSION):
    """(reference, output) MixtureSpecs for one topic-coverage scenario.

    The reference always mixes topics {A, B} equally.  Q1_subset outputs
    topic A only; Q2_matched outputs {A, B}; Q3_superset outputs
    {A, B, C, D} equally.
    """
    if scenario not in SCENARIOS:
        raise InvalidSpec(f"scenario must be one of {SCENARIOS}, got {scenario!r}")
    if dimension < 3:
        raise InvalidSpec("scenario geometry needs dimension >= 3")
    rng = np.random.default_rng(seed)
    ref_seed, out_seed = (int(s) for s in rng.integers(2**63, size=2))
    centers = _topic_centers(dimension)

    def mix(idxs, seed_value):
        w = 1.0 / len(idxs)
        return MixtureSpec(
            dimension=dimension,
            clusters=[
                Cluster(center=centers[i], scale=np.full(dimension, DEFAULT_SCALE), weight=w)
                for i in idxs
            ],
            seed=seed_value,
        )

    out_topics = {"Q1_subset": [0], "Q2_matched": [0, 1], "Q3_superset": [0, 1, 2, 3]}
    return mix([0, 1], ref_seed), mix(out_topics[scenario], out_seed)


def agnews_scenario(scenario, n, seed, dimension=DEFAULT_DIMENSION):
    """Sample (reference, output) embedding sets for a coverage scenario."""
    if n < 100:
        raise InvalidSpec(f"scenario sampling needs n >= 100, got {n}")
    ref_spec, out_spec = scenario_specs(scenario, seed, dimension)
    ref = sample_mixture(ref_spec, n, label="ref")
    out = sample_mixture(out_spec, n, label=scenario)
    return ref, out
