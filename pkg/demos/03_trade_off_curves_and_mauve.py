"""Whole-curve views of the quality/diversity trade-off.

Scalar Precision/Recall summarize the two ends of a richer object: the
curve of Pareto-optimal trade-offs between a precision-like and a
recall-like quantity.  This script quantizes two sample sets with
k-means, evaluates that curve and its F-gamma summaries, then the
divergence frontier whose area is the MAUVE score, for three model
archetypes against the same reference.
"""

import numpy as np

from prdist import (
    Cluster,
    MixtureSpec,
    PointSet,
    curve_extrema,
    divergence_frontier,
    emit_plot,
    f_gamma,
    mauve_score,
    pr_curve,
    quantize,
    reduce_pair,
    sample_mixture,
)


def mixture(centers, weights, seed):
    d = 8
    return MixtureSpec(
        dimension=d,
        clusters=[
            Cluster(center=np.r_[c, np.zeros(d - 2)], scale=np.ones(d), weight=w)
            for c, w in zip(centers, weights)
        ],
        seed=seed,
    )


REF = mixture([(0.0, 0.0), (30.0, 0.0)], [0.5, 0.5], seed=1)
MODELS = {
    "collapsed": mixture([(0.0, 0.0)], [1.0], seed=2),
    "matched": mixture([(0.0, 0.0), (30.0, 0.0)], [0.5, 0.5], seed=3),
    "overspread": mixture([(0.0, 0.0), (30.0, 0.0), (0.0, 30.0), (30.0, 30.0)],
                          [0.25, 0.25, 0.25, 0.25], seed=4),
}

curves = []
for name, spec in MODELS.items():
    ref = sample_mixture(REF, 2000, label="ref")
    out = sample_mixture(spec, 2000, label=name)
    red_ref, red_out, _ = reduce_pair(ref, out)
    hist = quantize(red_ref, red_out, seed=0)
    curve = pr_curve(hist)
    frontier = divergence_frontier(hist)
    alpha_inf, beta_0 = curve_extrema(hist)
    print(
        f"{name:10s}  alpha_inf={alpha_inf:.3f} beta_0={beta_0:.3f}  "
        f"F1/8={f_gamma(curve, 1 / 8):.3f} F8={f_gamma(curve, 8):.3f}  "
        f"MAUVE={mauve_score(frontier):.3f}"
    )
    curves.append(PointSet(name, np.stack([curve.alphas, curve.betas], axis=1)))

emit_plot(
    curves,
    kind="curve",
    path="tradeoff_curves.svg",
    title="Pareto trade-off curves per model archetype",
    xlabel="alpha (precision-like)",
    ylabel="beta (recall-like)",
)
print("wrote tradeoff_curves.svg")
