"""PCA over the union of a reference and an output embedding set.

The projection is fitted once on the vertical concatenation of both sets
and keeps the smallest number of components whose cumulative explained
variance reaches the requested fraction (default 0.9).  The fit uses an
exact eigendecomposition of the sample covariance (denominator n-1); no
randomized sketching.  Eigenvector sign is fixed so each component's
largest-magnitude entry is positive, which makes fits reproducible
bit-for-bit on identical inputs.
"""

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateData, DimensionMismatch, InvalidValue

DEFAULT_VARIANCE_TARGET = 0.9


@dataclass
class PcaModel:
    """A fitted projection: mean, orthonormal components, per-component variance."""

    mean: np.ndarray               # (d,)
    components: np.ndarray         # (r, d), rows orthonormal
    explained_variance: np.ndarray  # (r,), non-increasing
    variance_target: float
    total_variance: float

    @property
    def n_components(self):
        return self.components.shape[0]

    @property
    def input_dim(self):
        return self.components.shape[1]

    @property
    def explained_ratio(self):
        return float(self.explained_variance.sum() / self.total_variance)

    def fingerprint(self):
        """Hex digest identifying this model's exact numeric content."""
        h = hashlib.sha256()
        h.update(np.float64(self.variance_target).tobytes())
        for arr in (self.mean, self.components, self.explained_variance):
            h.update(np.ascontiguousarray(arr, dtype=np.float64).tobytes())
        return h.hexdigest()

    def to_dict(self):
        return {
            "n_components": self.n_components,
            "input_dim": self.input_dim,
            "variance_target": self.variance_target,
            "total_variance": self.total_variance,
            "explained_variance": self.explained_variance.tolist(),
            "mean": self.mean.tolist(),
            "components": self.components.tolist(),
        }


@dataclass
class ReducedSet:
    """Points after projection, tagged with the model that produced them."""

    points: np.ndarray  # (N, r) float64
    source_label: str = ""
    model_fingerprint: str = ""

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise InvalidValue(f"reduced points must be 2-D, got {pts.ndim}-D")
        if not np.all(np.isfinite(pts)):
            raise InvalidValue("reduced points contain non-finite values")
        self.points = pts

    @property
    def n_points(self):
        return self.points.shape[0]

    @property
    def n_dims(self):
        return self.points.shape[1]


def fit_pca(reference, output, variance_target=DEFAULT_VARIANCE_TARGET):
    """Fit a PCA on the union of two embedding sets.

    Keeps the minimal component count whose cumulative explained-variance
    ratio reaches `variance_target`.  Deterministic: eigenvalues sorted
    non-increasing (ties keep solver order), signs fixed as described in
    the module docstring.

    Raises DimensionMismatch if the sets disagree on width and
    DegenerateData if the union has zero total variance.
    """
    if reference.n_cols != output.n_cols:
        raise DimensionMismatch(
            f"reference has {reference.n_cols} columns, output has {output.n_cols}"
        )
    if not 0.0 < variance_target <= 1.0:
        raise InvalidValue(f"variance_target must be in (0, 1], got {variance_target}")
    union = np.vstack([
        reference.data.astype(np.float64),
        output.data.astype(np.float64),
    ])
    n = union.shape[0]
    if n < 2:
        raise DegenerateData("need at least 2 rows to fit a PCA")
    mean = union.mean(axis=0)
    centered = union - mean
    cov = centered.T @ centered / (n - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(-eigvals, kind="stable")
    eigvals = np.maximum(eigvals[order], 0.0)
    components = eigvecs[:, order].T
    total = float(eigvals.sum())
    if total == 0.0:
        raise DegenerateData("union has zero variance (all rows identical)")
    ratios = np.cumsum(eigvals) / total
    reached = np.nonzero(ratios >= variance_target)[0]
    # rounding can leave ratios[-1] a hair under 1.0 when the target is 1.0
    r = int(reached[0]) + 1 if reached.size else len(eigvals)
    components = components[:r].copy()
    # sign convention: largest-magnitude entry of each component is positive
    pivot = np.argmax(np.abs(components), axis=1)
    flip = components[np.arange(r), pivot] < 0
    components[flip] *= -1.0
    return PcaModel(
        mean=mean,
        components=components,
        explained_variance=eigvals[:r].copy(),
        variance_target=float(variance_target),
        total_variance=total,
    )


def apply_pca(model, matrix):
    """Project an embedding matrix: each row x maps to components @ (x - mean)."""
    if matrix.n_cols != model.input_dim:
        raise DimensionMismatch(
            f"matrix has {matrix.n_cols} columns, model expects {model.input_dim}"
        )
    projected = (matrix.data.astype(np.float64) - model.mean) @ model.components.T
    return ReducedSet(
        points=projected,
        source_label=matrix.label,
        model_fingerprint=model.fingerprint(),
    )


def reduce_pair(reference, output, variance_target=DEFAULT_VARIANCE_TARGET):
    """Fit on the union and project both sets; returns (ref, out, model)."""
    model = fit_pca(reference, output, variance_target)
    return apply_pca(model, reference), apply_pca(model, output), model
