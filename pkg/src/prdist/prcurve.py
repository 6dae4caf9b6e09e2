"""PR trade-off curves, F-gamma scores, and the MAUVE divergence frontier.

Both curve families start from the same discrete object: a pair of
histograms (p_hat, q_hat) over the bins of a k-means quantization of the
union of the two reduced sample sets.

On discrete bins the Pareto-optimal trade-off curve evaluates to

    alpha(lam) = sum_x min(q_hat(x), lam * p_hat(x))
    beta(lam)  = sum_x min(p_hat(x), q_hat(x) / lam)

and its extreme points are alpha_inf = q-mass of p's support and
beta_0 = p-mass of q's support.  The divergence frontier maps each
mixture weight pi to

    alpha(pi) = exp(-c * KL(q_hat || pi*p_hat + (1-pi)*q_hat))
    beta(pi)  = exp(-c * KL(p_hat || pi*p_hat + (1-pi)*q_hat))

and the MAUVE score is the area under that curve.  The scaling constant
c defaults to 1; c = 5 is the convention of the reference MAUVE
implementation and is supported through the same argument.

All randomness lives in quantize()'s seed; every curve evaluation is a
deterministic function of the histogram pair.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyClusterUnrecoverable,
    InvalidGrid,
    InvalidValue,
    TooFewPoints,
)

DEFAULT_LAMBDA_POINTS = 1001
DEFAULT_LAMBDA_RANGE = (1e-4, 1e4)
DEFAULT_PI_POINTS = 501
DEFAULT_PI_MARGIN = 1e-3
DEFAULT_SCALING_C = 1.0
KMEANS_MAX_ITER = 300

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


@dataclass
class HistogramPair:
    """Aligned discrete densities over the bins of one quantization."""

    p_hat: np.ndarray    # (K,) reference mass per bin, sums to 1
    q_hat: np.ndarray    # (K,) output mass per bin, sums to 1
    centroids: np.ndarray  # (K, r)
    kmeans_seed: int = 0

    def __post_init__(self):
        p = np.ascontiguousarray(self.p_hat, dtype=np.float64)
        q = np.ascontiguousarray(self.q_hat, dtype=np.float64)
        if p.shape != q.shape or p.ndim != 1:
            raise InvalidValue("p_hat and q_hat must be 1-D with equal length")
        if len(p) < 2:
            raise InvalidValue("need at least 2 bins")
        if np.any(p < 0) or np.any(q < 0):
            raise InvalidValue("histogram masses must be non-negative")
        for name, v in (("p_hat", p), ("q_hat", q)):
            if abs(v.sum() - 1.0) > 1e-9:
                raise InvalidValue(f"{name} must sum to 1, got {v.sum()!r}")
        self.p_hat = p
        self.q_hat = q
        self.centroids = np.ascontiguousarray(self.centroids, dtype=np.float64)

    @property
    def bins(self):
        return len(self.p_hat)


@dataclass
class PRCurve:
    """Pareto-frontier points (alpha, beta) over an ascending lambda grid."""

    lambdas: np.ndarray
    alphas: np.ndarray
    betas: np.ndarray

    def __len__(self):
        return len(self.lambdas)


@dataclass
class FrontierCurve:
    """Divergence-frontier points over a pi grid, with the area under them.

    endpoint_pi0 / endpoint_pi1 are the closed-form limit points of the
    frontier as pi -> 0+ and pi -> 1- (alpha or beta hits 1 exactly; the
    other coordinate is exp(-c * KL) against the pure opposite histogram,
    which is 0 when that KL diverges).  They participate in the area
    computation but are not grid rows.
    """

    pis: np.ndarray
    alphas: np.ndarray
    betas: np.ndarray
    scaling_c: float
    auc: float
    endpoint_pi0: tuple = (1.0, 1.0)
    endpoint_pi1: tuple = (1.0, 1.0)

    def __len__(self):
        return len(self.pis)


def _points_of(obj, name):
    pts = getattr(obj, "points", obj)
    pts = np.ascontiguousarray(np.asarray(pts, dtype=np.float64))
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise InvalidValue(f"{name} must be a non-empty 2-D point array")
    return pts


def default_n_bins(n_ref, n_out):
    """Cluster count keeping roughly >= 20 points per bin, capped at 500."""
    return max(2, min((n_ref + n_out) // 20, 500))


def _assign(points, centers):
    """Nearest-centroid labels; ties go to the lowest cluster index."""
    labels = np.empty(len(points), dtype=np.int64)
    step = max(1, 2_000_000 // max(1, centers.shape[0] * centers.shape[1]))
    for start in range(0, len(points), step):
        chunk = points[start:start + step]
        d2 = ((chunk[:, None, :] - centers[None, :, :]) ** 2).sum(axis=-1)
        labels[start:start + step] = np.argmin(d2, axis=1)
    return labels


def _plusplus_init(points, n_bins, rng):
    n = len(points)
    centers = np.empty((n_bins, points.shape[1]))
    centers[0] = points[rng.integers(n)]
    closest = ((points - centers[0]) ** 2).sum(axis=1)
    for j in range(1, n_bins):
        total = closest.sum()
        if total > 0:
            idx = rng.choice(n, p=closest / total)
        else:
            idx = rng.integers(n)
        centers[j] = points[idx]
        np.minimum(closest, ((points - centers[j]) ** 2).sum(axis=1), out=closest)
    return centers


def _fix_empty_clusters(points, centers, labels, reseeds, n_bins):
    """Re-seed each empty cluster from the point farthest from its centroid."""
    counts = np.bincount(labels, minlength=len(centers))
    empties = np.nonzero(counts == 0)[0]
    if empties.size == 0:
        return reseeds
    dist_to_own = ((points - centers[labels]) ** 2).sum(axis=1)
    for e in empties:
        reseeds += 1
        if reseeds > n_bins:
            raise EmptyClusterUnrecoverable(
                f"could not fill all {n_bins} clusters after {reseeds - 1} re-seeds"
            )
        far = int(np.argmax(dist_to_own))
        centers[e] = points[far]
        labels[far] = e
        dist_to_own[far] = -1.0
    return reseeds


def quantize(reference, output, n_bins=None, seed=0):
    """Histogram both sets over a k-means clustering of their union.

    k-means++ initialization from `seed` (PCG64), Lloyd iterations until
    assignments stabilize or 300 iterations.  Deterministic given the
    seed.  Returns a HistogramPair of per-cluster assignment frequencies.
    """
    ref_pts = _points_of(reference, "reference")
    out_pts = _points_of(output, "output")
    if ref_pts.shape[1] != out_pts.shape[1]:
        raise InvalidValue("reference and output must share a column count")
    n_ref, n_out = len(ref_pts), len(out_pts)
    if n_bins is None:
        n_bins = default_n_bins(n_ref, n_out)
    if n_bins < 2:
        raise InvalidValue(f"n_bins must be >= 2, got {n_bins}")
    union = np.vstack([ref_pts, out_pts])
    if len(union) < n_bins:
        raise TooFewPoints(f"{len(union)} points cannot fill {n_bins} bins")

    rng = np.random.default_rng(seed)
    centers = _plusplus_init(union, n_bins, rng)
    labels = _assign(union, centers)
    reseeds = _fix_empty_clusters(union, centers, labels, 0, n_bins)
    for _ in range(KMEANS_MAX_ITER):
        sums = np.zeros_like(centers)
        np.add.at(sums, labels, union)
        counts = np.bincount(labels, minlength=n_bins)
        centers = sums / counts[:, None]
        new_labels = _assign(union, centers)
        reseeds = _fix_empty_clusters(union, centers, new_labels, reseeds, n_bins)
        if np.array_equal(new_labels, labels):
            labels = new_labels
            break
        labels = new_labels

    p_hat = np.bincount(labels[:n_ref], minlength=n_bins) / n_ref
    q_hat = np.bincount(labels[n_ref:], minlength=n_bins) / n_out
    return HistogramPair(p_hat=p_hat, q_hat=q_hat, centroids=centers, kmeans_seed=int(seed))


def _check_grid(grid, name, lo=0.0, hi=np.inf, open_ends=False):
    g = np.ascontiguousarray(np.asarray(grid, dtype=np.float64))
    if g.ndim != 1 or g.size == 0:
        raise InvalidGrid(f"{name} must be a non-empty 1-D grid")
    if not np.all(np.isfinite(g)):
        raise InvalidGrid(f"{name} must be finite")
    if np.any(np.diff(g) < 0):
        raise InvalidGrid(f"{name} must be sorted ascending")
    inside = (g > lo) & (g < hi) if open_ends else (g > lo) & (g <= hi)
    if not np.all(inside):
        raise InvalidGrid(f"{name} values must lie in ({lo}, {hi}{')' if open_ends else ']'}")
    return g


def default_lambda_grid(hist=None, n_points=DEFAULT_LAMBDA_POINTS):
    """Log-spaced lambda grid, augmented with the per-bin mass ratios of
    `hist` (both q/p and p/q on shared-support bins) so that the curve's
    extreme points are achieved exactly on the grid."""
    lo, hi = DEFAULT_LAMBDA_RANGE
    grid = np.geomspace(lo, hi, n_points)
    if hist is not None:
        shared = (hist.p_hat > 0) & (hist.q_hat > 0)
        if shared.any():
            ratios = hist.q_hat[shared] / hist.p_hat[shared]
            grid = np.concatenate([grid, ratios, 1.0 / ratios])
    return np.unique(grid)


def pr_curve(hist, lambda_grid=None):
    """Evaluate the Pareto trade-off curve of a histogram pair on a grid."""
    if lambda_grid is None:
        lambda_grid = default_lambda_grid(hist)
    grid = _check_grid(lambda_grid, "lambda grid", lo=0.0)
    p = hist.p_hat[None, :]
    q = hist.q_hat[None, :]
    lam = grid[:, None]
    alphas = np.minimum(q, lam * p).sum(axis=1)
    betas = np.minimum(p, q / lam).sum(axis=1)
    return PRCurve(lambdas=grid, alphas=alphas, betas=betas)


def curve_extrema(hist):
    """(alpha_inf, beta_0): q-mass of p's support and p-mass of q's support."""
    alpha_inf = float(hist.q_hat[hist.p_hat > 0].sum())
    beta_0 = float(hist.p_hat[hist.q_hat > 0].sum())
    return alpha_inf, beta_0


def f_gamma(curve, gamma):
    """Best F-measure over a PR curve: max of (1+g^2)ab / (g^2 a + b).

    gamma = 1/8 leans on precision (quality), gamma = 8 on recall
    (diversity); gamma = 1 is the harmonic mean.  Points where the
    denominator vanishes score 0.
    """
    if gamma <= 0:
        raise InvalidValue(f"gamma must be positive, got {gamma}")
    if len(curve) == 0:
        raise InvalidValue("curve is empty")
    a, b = curve.alphas, curve.betas
    den = gamma * gamma * a + b
    with np.errstate(invalid="ignore", divide="ignore"):
        scores = np.where(den > 0, (1.0 + gamma * gamma) * a * b / den, 0.0)
    return float(scores.max())


def default_pi_grid(n_points=DEFAULT_PI_POINTS, margin=DEFAULT_PI_MARGIN):
    return np.linspace(margin, 1.0 - margin, n_points)


def _kl(a, b):
    """KL(a || b) in nats; +inf when a puts mass where b has none."""
    mask = a > 0
    if np.any(b[mask] == 0):
        return math.inf
    am = a[mask]
    return float(np.sum(am * np.log(am / b[mask])))


def _smooth(v, eps):
    w = v + eps
    return w / w.sum()


def _frontier_auc(alphas, betas, endpoint_pi0, endpoint_pi1):
    """Trapezoidal area of beta against alpha over the extended frontier.

    Returns (auc, degenerate).  When every alpha coincides there is no
    width to integrate over; the constant beta is returned by convention.
    """
    xs = np.concatenate([alphas, [endpoint_pi0[0], endpoint_pi1[0]]])
    ys = np.concatenate([betas, [endpoint_pi0[1], endpoint_pi1[1]]])
    if xs.max() == xs.min():
        return float(np.mean(ys)), True
    order = np.argsort(xs, kind="stable")
    area = float(_trapezoid(ys[order], xs[order]))
    return min(1.0, max(0.0, area)), False


def divergence_frontier(hist, pi_grid=None, scaling_c=DEFAULT_SCALING_C, smoothing=0.0):
    """Evaluate the divergence frontier of a histogram pair.

    For each pi in the grid (strictly inside (0, 1)) the mixture
    pi*p_hat + (1-pi)*q_hat is positive wherever either histogram has
    mass, so no division by zero arises.  `smoothing` > 0 additively
    smooths both histograms (mass eps per bin, renormalized) for
    comparison against implementations that smooth; default is none.
    """
    if scaling_c <= 0:
        raise InvalidValue(f"scaling_c must be positive, got {scaling_c}")
    if pi_grid is None:
        pi_grid = default_pi_grid()
    grid = _check_grid(pi_grid, "pi grid", lo=0.0, hi=1.0, open_ends=True)
    p, q = hist.p_hat, hist.q_hat
    if smoothing > 0.0:
        p, q = _smooth(p, smoothing), _smooth(q, smoothing)
    alphas = np.empty(len(grid))
    betas = np.empty(len(grid))
    diff = p - q
    for i, pi in enumerate(grid):
        # q + pi*(p - q) == pi*p + (1-pi)*q, but stays exactly q when p == q
        mix = q + pi * diff
        alphas[i] = math.exp(-scaling_c * _kl(q, mix))
        betas[i] = math.exp(-scaling_c * _kl(p, mix))
    kl_pq = _kl(p, q)
    kl_qp = _kl(q, p)
    ep0 = (1.0, math.exp(-scaling_c * kl_pq) if math.isfinite(kl_pq) else 0.0)
    ep1 = (math.exp(-scaling_c * kl_qp) if math.isfinite(kl_qp) else 0.0, 1.0)
    auc, _ = _frontier_auc(alphas, betas, ep0, ep1)
    return FrontierCurve(
        pis=grid,
        alphas=alphas,
        betas=betas,
        scaling_c=float(scaling_c),
        auc=auc,
        endpoint_pi0=ep0,
        endpoint_pi1=ep1,
    )


def mauve_score(frontier):
    """Area under the divergence frontier, clamped to [0, 1].

    Degenerate frontiers (all alphas identical, e.g. identical
    histograms) return the constant beta; is_degenerate_frontier()
    reports when that convention applied.
    """
    if len(frontier) < 2:
        raise InvalidValue("frontier needs at least 2 points")
    auc, _ = _frontier_auc(
        frontier.alphas, frontier.betas, frontier.endpoint_pi0, frontier.endpoint_pi1
    )
    return auc


def is_degenerate_frontier(frontier):
    """True when the frontier has no alpha extent (area convention applies)."""
    xs = np.concatenate(
        [frontier.alphas, [frontier.endpoint_pi0[0], frontier.endpoint_pi1[0]]]
    )
    return bool(xs.max() == xs.min())


def write_pr_curve_csv(curve, fh):
    """CSV rows lambda,alpha,beta with 17-significant-digit floats."""
    fh.write("lambda,alpha,beta\n")
    for lam, a, b in zip(curve.lambdas, curve.alphas, curve.betas):
        fh.write(f"{lam:.17g},{a:.17g},{b:.17g}\n")


def write_frontier_csv(frontier, fh):
    """CSV rows pi,alpha,beta with 17-significant-digit floats."""
    fh.write("pi,alpha,beta\n")
    for pi, a, b in zip(frontier.pis, frontier.alphas, frontier.betas):
        fh.write(f"{pi:.17g},{a:.17g},{b:.17g}\n")
