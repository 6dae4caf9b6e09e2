"""prdist: distribution-based Precision and Recall for generative text models.

Compares two empirical distributions in an embedding space: Precision is
the mass of the model's samples inside the estimated support of the
reference distribution, Recall the mass of reference samples inside the
model's estimated support.  Supports are unions of k-nearest-neighbor
balls over PCA-reduced embeddings.  The package also provides the
quantized PR trade-off curve with F-gamma scores, the MAUVE divergence
frontier, lexical diversity baselines (Distinct-n, Self-BLEU), parameter
sweeps with a seed-variance protocol, seeded Gaussian-mixture test
scenarios, and an SVG plot emitter, all behind one CLI (`prdist`).
"""

__version__ = "0.1.0"

from .dataio import (
    EmbeddingMatrix,
    TextCorpus,
    read_embeddings,
    read_text_corpus,
    write_embeddings,
)
from .errors import PrdistError
from .lexical import (
    LexicalScores,
    TokenizedCorpus,
    distinct_n,
    lexical_scores,
    self_bleu,
    tokenize,
    tokenize_corpus,
)
from .preprocess import PcaModel, ReducedSet, apply_pca, fit_pca, reduce_pair
from .prcurve import (
    FrontierCurve,
    HistogramPair,
    PRCurve,
    curve_extrema,
    default_lambda_grid,
    default_pi_grid,
    divergence_frontier,
    f_gamma,
    is_degenerate_frontier,
    mauve_score,
    pr_curve,
    quantize,
)
from .stats import SweepTable, VarianceReport, pearson, seed_variance, sweep
from .support import (
    PRResult,
    SupportEstimate,
    count_in_support,
    estimate_support,
    evaluate_pair,
    kth_radii,
    precision_recall,
)
from .svgplot import PointSet, covariance_ellipse, emit_plot
from .synth import Cluster, MixtureSpec, agnews_scenario, sample_mixture, scenario_specs

__all__ = [
    "__version__",
    "EmbeddingMatrix",
    "TextCorpus",
    "read_embeddings",
    "read_text_corpus",
    "write_embeddings",
    "PrdistError",
    "LexicalScores",
    "TokenizedCorpus",
    "distinct_n",
    "lexical_scores",
    "self_bleu",
    "tokenize",
    "tokenize_corpus",
    "PcaModel",
    "ReducedSet",
    "apply_pca",
    "fit_pca",
    "reduce_pair",
    "FrontierCurve",
    "HistogramPair",
    "PRCurve",
    "curve_extrema",
    "default_lambda_grid",
    "default_pi_grid",
    "divergence_frontier",
    "f_gamma",
    "is_degenerate_frontier",
    "mauve_score",
    "pr_curve",
    "quantize",
    "SweepTable",
    "VarianceReport",
    "pearson",
    "seed_variance",
    "sweep",
    "PRResult",
    "SupportEstimate",
    "count_in_support",
    "estimate_support",
    "evaluate_pair",
    "kth_radii",
    "precision_recall",
    "PointSet",
    "covariance_ellipse",
    "emit_plot",
    "Cluster",
    "MixtureSpec",
    "agnews_scenario",
    "sample_mixture",
    "scenario_specs",
]
