"""k-NN ball support estimation and the Precision/Recall indicator sums.

The estimated support of a point set is the union of closed Euclidean
balls, one per point, each with radius equal to the distance to that
point's k-th nearest neighbor within the same set (self excluded).
Precision is the fraction of output points inside the reference support;
Recall is the fraction of reference points inside the output support.

Distance convention, pinned for reproducibility: the squared distance
between two float64 rows is the numpy-style pairwise-ordered sum of
squared coordinate differences, and the distance is its correctly
rounded square root.  The accelerated kernels below reproduce numpy's
pairwise summation order exactly, so their radii and counts are
bit-identical to the plain-numpy brute-force functions at the bottom of
this module, which exist to verify them.  Counts and radii are per-row
reductions, so results do not depend on the degree of parallelism.

No approximate neighbor index is used: N stays small enough (~1e4) that
exact O(N^2) computation is fast, and exactness is part of the contract.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit, prange

from .errors import DimensionMismatch, InvalidValue, TooFewPoints
from .preprocess import reduce_pair

DEFAULT_K = 4


# --------------------------------------------------------------------------
# Distance kernels.  _sqdist_pairwise replicates numpy's pairwise summation
# (sequential under 8 elements, 8 accumulators up to 128, halving recursion
# above) over the virtual array of squared differences, so the result is
# bit-identical to ((a - b) ** 2).sum() on float64 rows.
# --------------------------------------------------------------------------

@njit(cache=True, inline="always")
def _sqdist_block(a, b, lo, n):
    """Squared distance over a run of at most 128 coordinates."""
    if n < 8:
        res = 0.0
        for k in range(lo, lo + n):
            d = a[k] - b[k]
            res += d * d
        return res
    d0 = a[lo] - b[lo]
    d1 = a[lo + 1] - b[lo + 1]
    d2 = a[lo + 2] - b[lo + 2]
    d3 = a[lo + 3] - b[lo + 3]
    d4 = a[lo + 4] - b[lo + 4]
    d5 = a[lo + 5] - b[lo + 5]
    d6 = a[lo + 6] - b[lo + 6]
    d7 = a[lo + 7] - b[lo + 7]
    r0 = d0 * d0
    r1 = d1 * d1
    r2 = d2 * d2
    r3 = d3 * d3
    r4 = d4 * d4
    r5 = d5 * d5
    r6 = d6 * d6
    r7 = d7 * d7
    i = lo + 8
    end = lo + n - (n % 8)
    while i < end:
        e0 = a[i] - b[i]
        r0 += e0 * e0
        e1 = a[i + 1] - b[i + 1]
        r1 += e1 * e1
        e2 = a[i + 2] - b[i + 2]
        r2 += e2 * e2
        e3 = a[i + 3] - b[i + 3]
        r3 += e3 * e3
        e4 = a[i + 4] - b[i + 4]
        r4 += e4 * e4
        e5 = a[i + 5] - b[i + 5]
        r5 += e5 * e5
        e6 = a[i + 6] - b[i + 6]
        r6 += e6 * e6
        e7 = a[i + 7] - b[i + 7]
        r7 += e7 * e7
        i += 8
    res = ((r0 + r1) + (r2 + r3)) + ((r4 + r5) + (r6 + r7))
    for k in range(i, lo + n):
        d = a[k] - b[k]
        res += d * d
    return res


@njit(cache=True, inline="always")
def _sqdist_tree(a, b, n, frame_lo, frame_n, values):
    """Pairwise-ordered squared distance: halving tree with 128-wide leaves.

    Iterative (explicit stacks passed in as scratch) rather than
    recursive so the compiled kernel stays safe to reload from numba's
    on-disk cache.  Frames with width -1 mark a pending left+right
    combine; splits round the left half down to a multiple of 8,
    mirroring numpy's summation tree.
    """
    if n <= 128:
        return _sqdist_block(a, b, 0, n)
    vp = 0
    frame_lo[0] = 0
    frame_n[0] = n
    sp = 1
    while sp > 0:
        sp -= 1
        flo = frame_lo[sp]
        fn = frame_n[sp]
        if fn == -1:
            right = values[vp - 1]
            left = values[vp - 2]
            vp -= 2
            values[vp] = left + right
            vp += 1
        elif fn <= 128:
            values[vp] = _sqdist_block(a, b, flo, fn)
            vp += 1
        else:
            n2 = (fn // 2) - ((fn // 2) % 8)
            frame_lo[sp] = 0
            frame_n[sp] = -1
            frame_lo[sp + 1] = flo + n2
            frame_n[sp + 1] = fn - n2
            frame_lo[sp + 2] = flo
            frame_n[sp + 2] = n2
            sp += 3
    return values[0]


@njit(cache=True)
def _sqdist_pairwise(a, b, lo, n):
    """Scalar entry point for one pair of rows (allocates its own scratch)."""
    if n <= 128:
        return _sqdist_block(a, b, lo, n)
    frame_lo = np.empty(128, dtype=np.int64)
    frame_n = np.empty(128, dtype=np.int64)
    values = np.empty(128, dtype=np.float64)
    return _sqdist_tree(a[lo:lo + n], b[lo:lo + n], n, frame_lo, frame_n, values)


@njit(cache=True, parallel=True)
def _self_sqdist_matrix(pts):
    """Full squared-distance matrix of a set with +inf on the diagonal."""
    n, r = pts.shape
    out = np.empty((n, n))
    for i in prange(n):
        frame_lo = np.empty(128, dtype=np.int64)
        frame_n = np.empty(128, dtype=np.int64)
        values = np.empty(128, dtype=np.float64)
        out[i, i] = np.inf
        for j in range(i + 1, n):
            v = _sqdist_tree(pts[i], pts[j], r, frame_lo, frame_n, values)
            out[i, j] = v
            out[j, i] = v
    return out


@njit(cache=True, parallel=True)
def _covered_mask(queries, centers, radii):
    """covered[i] = 1 iff some center j has dist(q_i, c_j) <= radii[j]."""
    nq = queries.shape[0]
    nc = centers.shape[0]
    r = queries.shape[1]
    covered = np.zeros(nq, dtype=np.uint8)
    for i in prange(nq):
        frame_lo = np.empty(128, dtype=np.int64)
        frame_n = np.empty(128, dtype=np.int64)
        values = np.empty(128, dtype=np.float64)
        for j in range(nc):
            if math.sqrt(_sqdist_tree(queries[i], centers[j], r, frame_lo, frame_n, values)) <= radii[j]:
                covered[i] = 1
                break
    return covered


def _as_points(x, name="points"):
    pts = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
        raise InvalidValue(f"{name} must be a non-empty 2-D array")
    if not np.all(np.isfinite(pts)):
        raise InvalidValue(f"{name} contain non-finite values")
    return pts


@dataclass
class SupportEstimate:
    """A point set plus the per-point k-NN ball radii that define its support."""

    points: np.ndarray  # (N, r)
    radii: np.ndarray   # (N,)
    k: int

    def __post_init__(self):
        if len(self.radii) != len(self.points):
            raise InvalidValue("radii length must match point count")
        if np.any(self.radii < 0):
            raise InvalidValue("radii must be non-negative")
        if not 1 <= self.k <= len(self.points) - 1:
            raise InvalidValue(f"k={self.k} out of range for {len(self.points)} points")


@dataclass
class PRResult:
    """Scalar Precision/Recall with the counts they were derived from."""

    precision: float
    recall: float
    n_ref: int
    n_out: int
    k: int
    n_out_in_ref_support: int = 0
    n_ref_in_out_support: int = 0
    metadata: dict = field(default_factory=dict)

    def to_dict(self):
        d = {
            "precision": self.precision,
            "recall": self.recall,
            "n_ref": self.n_ref,
            "n_out": self.n_out,
            "k": self.k,
            "n_out_in_ref_support": self.n_out_in_ref_support,
            "n_ref_in_out_support": self.n_ref_in_out_support,
        }
        if self.metadata:
            d["metadata"] = dict(self.metadata)
        return d


def kth_radii(points, k):
    """Distance from each point to its k-th nearest neighbor in the same set.

    Self is excluded; ties resolve by order statistic of the sorted
    distance multiset.  Needs N >= k + 1 points.
    """
    pts = _as_points(points)
    n = pts.shape[0]
    if k < 1:
        raise InvalidValue(f"k must be >= 1, got {k}")
    if n <= k:
        raise TooFewPoints(f"need at least k+1={k + 1} points, got {n}")
    d2 = _self_sqdist_matrix(pts)
    return np.sqrt(np.partition(d2, k - 1, axis=1)[:, k - 1])


def estimate_support(points, k):
    """Build the SupportEstimate (points + k-NN radii) of one set."""
    pts = _as_points(points)
    return SupportEstimate(points=pts, radii=kth_radii(pts, k), k=k)


def count_in_support(queries, support):
    """Number of query points inside the union of the support's closed balls."""
    q = _as_points(queries, "queries")
    if q.shape[1] != support.points.shape[1]:
        raise DimensionMismatch(
            f"queries have {q.shape[1]} columns, support has {support.points.shape[1]}"
        )
    return int(_covered_mask(q, support.points, support.radii).sum())


def precision_recall(reference, output, k=DEFAULT_K, metadata=None):
    """Precision and Recall of `output` against `reference` (both ReducedSet).

    precision = |{output points in Supp_k(reference)}| / n_out
    recall    = |{reference points in Supp_k(output)}| / n_ref
    """
    ref_pts = reference.points
    out_pts = output.points
    if ref_pts.shape[1] != out_pts.shape[1]:
        raise DimensionMismatch(
            f"reference has {ref_pts.shape[1]} columns, output has {out_pts.shape[1]}"
        )
    if ref_pts.shape[0] <= k or out_pts.shape[0] <= k:
        raise TooFewPoints(f"both sets need more than k={k} points")
    ref_support = estimate_support(ref_pts, k)
    out_support = estimate_support(out_pts, k)
    n_ref = ref_pts.shape[0]
    n_out = out_pts.shape[0]
    in_ref = count_in_support(out_pts, ref_support)
    in_out = count_in_support(ref_pts, out_support)
    return PRResult(
        precision=in_ref / n_out,
        recall=in_out / n_ref,
        n_ref=n_ref,
        n_out=n_out,
        k=k,
        n_out_in_ref_support=in_ref,
        n_ref_in_out_support=in_out,
        metadata=dict(metadata or {}),
    )


def evaluate_pair(reference, output, k=DEFAULT_K, variance_target=None, metadata=None):
    """Full pipeline on two embedding matrices: PCA on the union, then P/R."""
    from .preprocess import DEFAULT_VARIANCE_TARGET

    if variance_target is None:
        variance_target = DEFAULT_VARIANCE_TARGET
    ref_red, out_red, model = reduce_pair(reference, output, variance_target)
    meta = dict(metadata or {})
    meta.setdefault("reduced_dim", str(model.n_components))
    return precision_recall(ref_red, out_red, k=k, metadata=meta)


# --------------------------------------------------------------------------
# Brute-force reference implementations.  Deliberately plain: full distance
# vectors, full sorts, no partitioning, no early exit, no numba.  The
# accelerated path above must agree with these exactly.
# --------------------------------------------------------------------------

def kth_radii_brute(points, k):
    """O(N^2) full-sort radii; must equal kth_radii bit-for-bit."""
    pts = _as_points(points)
    n = pts.shape[0]
    if n <= k:
        raise TooFewPoints(f"need at least k+1={k + 1} points, got {n}")
    radii = np.empty(n)
    for i in range(n):
        dists = np.sqrt(((pts - pts[i]) ** 2).sum(axis=1))
        others = np.sort(np.delete(dists, i))
        radii[i] = others[k - 1]
    return radii


def count_in_support_brute(queries, centers, radii):
    """O(M*N) membership count; must equal count_in_support bit-for-bit."""
    q = _as_points(queries, "queries")
    c = _as_points(centers, "centers")
    total = 0
    for i in range(q.shape[0]):
        dists = np.sqrt(((c - q[i]) ** 2).sum(axis=1))
        if bool(np.any(dists <= radii)):
            total += 1
    return total


def precision_recall_brute(ref_points, out_points, k=DEFAULT_K):
    """Brute-force Precision/Recall on raw point arrays; returns (p, r)."""
    ref = _as_points(ref_points, "reference")
    out = _as_points(out_points, "output")
    ref_radii = kth_radii_brute(ref, k)
    out_radii = kth_radii_brute(out, k)
    p = count_in_support_brute(out, ref, ref_radii) / out.shape[0]
    r = count_in_support_brute(ref, out, out_radii) / ref.shape[0]
    return p, r
