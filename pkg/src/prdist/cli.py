"""Command-line entry point wiring the pipeline end-to-end.

Subcommands: pr, curve, mauve, sweep, variance, lexical, correlate,
synth, plot, pca-dump.  JSON outputs carry a schema_version and echo the
full effective configuration for provenance; every numeric value is
printed with 17 significant decimal digits.  Exit codes: 0 success,
1 usage error, 2 data error.
"""

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .dataio import read_embeddings, read_text_corpus, write_embeddings
from .errors import InvalidValue, MissingFile, PrdistError
from .lexical import DEFAULT_MAX_N, lexical_scores, tokenize_corpus
from .preprocess import DEFAULT_VARIANCE_TARGET, reduce_pair
from .prcurve import (
    DEFAULT_SCALING_C,
    curve_extrema,
    default_lambda_grid,
    divergence_frontier,
    f_gamma,
    is_degenerate_frontier,
    mauve_score,
    pr_curve,
    quantize,
    write_frontier_csv,
    write_pr_curve_csv,
)
from .stats import MODES, pearson, seed_variance, sweep, write_sweep_csv
from .support import DEFAULT_K, evaluate_pair
from .svgplot import PointSet, emit_plot
from .synth import DEFAULT_DIMENSION, SCENARIOS, agnews_scenario, scenario_specs

SCHEMA_VERSION = 1


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt17(v):
    return format(v, ".17g")


def _render_json(obj, indent=0):
    """JSON text with floats at 17 significant digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {_render_json(v, indent + 1)}'
            for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[" + ", ".join(_render_json(v, indent) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _fmt17(obj)
    if isinstance(obj, int):
        return str(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _write_text(text, output):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_json(payload, args):
    doc = {"schema_version": SCHEMA_VERSION, "subcommand": args.subcommand}
    doc.update(payload)
    doc["config"] = _config_of(args)
    _write_text(_render_json(_jsonable(doc)) + "\n", args.output)


def _config_of(args):
    skip = {"func", "subcommand"}
    return {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k not in skip}


def _check_format(args, allowed):
    fmt = getattr(args, "format", None)
    if fmt is not None and fmt not in allowed:
        raise _UsageError(
            f"subcommand {args.subcommand!r} supports formats {sorted(allowed)}, got {fmt!r}"
        )


def _read_pair(args):
    return read_embeddings(args.ref), read_embeddings(args.out)


def _read_csv_columns(path):
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"no such CSV file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise InvalidValue(f"{path}: empty CSV")
        rows = list(reader)
    if not rows:
        raise InvalidValue(f"{path}: CSV has a header but no rows")
    return reader.fieldnames, rows


# ----------------------------------------------------------------- commands

def _cmd_pr(args):
    _check_format(args, {"json"})
    ref, out = _read_pair(args)
    res = evaluate_pair(ref, out, k=args.k, variance_target=args.variance_target)
    payload = res.to_dict()
    payload["reduced_dim"] = int(res.metadata.get("reduced_dim", 0))
    payload.pop("metadata", None)
    _emit_json(payload, args)
    return 0


def _quantized_pair(args):
    ref, out = _read_pair(args)
    ref_red, out_red, model = reduce_pair(ref, out, args.variance_target)
    hist = quantize(ref_red, out_red, n_bins=args.bins, seed=args.seed)
    return hist, model


def _cmd_curve(args):
    _check_format(args, {"json", "csv"})
    hist, model = _quantized_pair(args)
    curve = pr_curve(hist, default_lambda_grid(hist))
    if args.format == "csv":
        buf = io.StringIO()
        write_pr_curve_csv(curve, buf)
        _write_text(buf.getvalue(), args.output)
        return 0
    alpha_inf, beta_0 = curve_extrema(hist)
    payload = {
        "bins": hist.bins,
        "alpha_inf": alpha_inf,
        "beta_0": beta_0,
        "f_gamma": {
            "0.125": f_gamma(curve, 1.0 / 8.0),
            "1": f_gamma(curve, 1.0),
            "8": f_gamma(curve, 8.0),
        },
        "reduced_dim": model.n_components,
        "lambda": curve.lambdas,
        "alpha": curve.alphas,
        "beta": curve.betas,
    }
    _emit_json(payload, args)
    return 0


def _cmd_mauve(args):
    _check_format(args, {"json", "csv"})
    hist, model = _quantized_pair(args)
    frontier = divergence_frontier(hist, scaling_c=args.c, smoothing=args.smoothing)
    if args.format == "csv":
        buf = io.StringIO()
        write_frontier_csv(frontier, buf)
        _write_text(buf.getvalue(), args.output)
        return 0
    payload = {
        "mauve": mauve_score(frontier),
        "degenerate_frontier": is_degenerate_frontier(frontier),
        "bins": hist.bins,
        "scaling_c": frontier.scaling_c,
        "grid_points": len(frontier),
        "reduced_dim": model.n_components,
    }
    _emit_json(payload, args)
    return 0


def _cmd_sweep(args):
    _check_format(args, {"json", "csv"})
    ref, out = _read_pair(args)
    table = sweep(
        ref,
        out,
        n_values=args.n or [4000],
        k_values=args.k or [DEFAULT_K],
        seeds=args.seed or [0],
        mode=args.mode,
        variance_target=args.variance_target,
    )
    if args.format == "json":
        payload = {
            "fixed_params": table.fixed_params,
            "rows": [
                {"n": r.n, "k": r.k, "seed": r.seed, "precision": r.precision, "recall": r.recall}
                for r in table.rows
            ],
        }
        _emit_json(payload, args)
        return 0
    buf = io.StringIO()
    write_sweep_csv(table, buf)
    _write_text(buf.getvalue(), args.output)
    return 0


def _cmd_variance(args):
    _check_format(args, {"json"})
    ref, out = _read_pair(args)
    seeds = args.seed or [0, 1, 2, 3, 4]
    table = sweep(
        ref,
        out,
        n_values=[args.n],
        k_values=[args.k],
        seeds=seeds,
        mode=args.mode,
        variance_target=args.variance_target,
    )
    report = seed_variance(table, args.mode)
    _emit_json(report.to_dict(), args)
    return 0


def _cmd_lexical(args):
    _check_format(args, {"json"})
    corpus = tokenize_corpus(read_text_corpus(args.out))
    scores = lexical_scores(corpus, max_n=args.max_n, sample=args.sample, seed=args.seed)
    payload = scores.to_dict()
    empty = [n for n, v in sorted(scores.distinct_n.items()) if v == 0.0]
    if empty:
        payload["no_ngram_orders"] = empty
    _emit_json(payload, args)
    return 0


def _cmd_correlate(args):
    _check_format(args, {"json"})
    fields, rows = _read_csv_columns(args.input)
    for col in (args.x, args.y):
        if col not in fields:
            raise InvalidValue(f"{args.input}: no column {col!r} (have {fields})")
    try:
        x = [float(r[args.x]) for r in rows]
        y = [float(r[args.y]) for r in rows]
    except (TypeError, ValueError) as exc:
        raise InvalidValue(f"{args.input}: non-numeric cell in {args.x!r}/{args.y!r}") from exc
    payload = {"pearson": pearson(x, y), "n": len(x), "x": args.x, "y": args.y}
    _emit_json(payload, args)
    return 0


def _cmd_synth(args):
    _check_format(args, {"json"})
    ref, out = agnews_scenario(args.scenario, args.n, args.seed, dimension=args.dimension)
    ref_spec, out_spec = scenario_specs(args.scenario, args.seed, dimension=args.dimension)
    prefix = Path(args.output or "scenario")
    prefix.parent.mkdir(parents=True, exist_ok=True)
    ref_path = prefix.parent / (prefix.name + ".ref.emb")
    out_path = prefix.parent / (prefix.name + ".out.emb")
    sidecar = prefix.parent / (prefix.name + ".json")
    write_embeddings(ref, ref_path)
    write_embeddings(out, out_path)
    sidecar_doc = {
        "schema_version": SCHEMA_VERSION,
        "scenario": args.scenario,
        "n": args.n,
        "seed": args.seed,
        "reference_spec": ref_spec.to_dict(),
        "output_spec": out_spec.to_dict(),
    }
    sidecar.write_text(_render_json(_jsonable(sidecar_doc)) + "\n", encoding="utf-8")
    doc = {
        "schema_version": SCHEMA_VERSION,
        "subcommand": "synth",
        "ref_path": str(ref_path),
        "out_path": str(out_path),
        "sidecar_path": str(sidecar),
        "config": _config_of(args),
    }
    sys.stdout.write(_render_json(_jsonable(doc)) + "\n")
    return 0


def _cmd_plot(args):
    _check_format(args, {"svg"})
    fields, rows = _read_csv_columns(args.input)
    for col in ("label", "x", "y"):
        if col not in fields:
            raise InvalidValue(f"{args.input}: plot CSV needs columns label,x,y (have {fields})")
    groups = {}
    for r in rows:
        try:
            groups.setdefault(r["label"], []).append((float(r["x"]), float(r["y"])))
        except (TypeError, ValueError) as exc:
            raise InvalidValue(f"{args.input}: non-numeric x/y cell") from exc
    sets = [PointSet(label=label, points=np.array(pts)) for label, pts in groups.items()]
    emit_plot(
        sets,
        kind=args.kind,
        path=args.output,
        title=args.title,
        xlabel=args.xlabel,
        ylabel=args.ylabel,
    )
    return 0


def _cmd_pca_dump(args):
    _check_format(args, {"json"})
    ref, out = _read_pair(args)
    _, _, model = reduce_pair(ref, out, args.variance_target)
    _emit_json(model.to_dict(), args)
    return 0


# -------------------------------------------------------------------- wiring

def _add_pair_args(p):
    p.add_argument("--ref", required=True, help="reference EMB1 file")
    p.add_argument("--out", required=True, help="output (model) EMB1 file")


def _add_common(p, formats, default_format):
    p.add_argument("--format", choices=sorted(formats), default=default_format)
    p.add_argument("--output", default=None, help="output path (default: stdout)")


def build_parser():
    parser = _Parser(prog="prdist", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("pr", help="distributional Precision and Recall of two embedding sets")
    _add_pair_args(p)
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--variance-target", type=float, default=DEFAULT_VARIANCE_TARGET)
    _add_common(p, {"json"}, "json")
    p.set_defaults(func=_cmd_pr)

    p = sub.add_parser("curve", help="quantized PR trade-off curve with F-gamma scores")
    _add_pair_args(p)
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variance-target", type=float, default=DEFAULT_VARIANCE_TARGET)
    _add_common(p, {"json", "csv"}, "json")
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("mauve", help="divergence frontier and its area")
    _add_pair_args(p)
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c", type=float, default=DEFAULT_SCALING_C, help="KL scaling constant")
    p.add_argument("--smoothing", type=float, default=0.0, help="additive histogram smoothing")
    p.add_argument("--variance-target", type=float, default=DEFAULT_VARIANCE_TARGET)
    _add_common(p, {"json", "csv"}, "json")
    p.set_defaults(func=_cmd_mauve)

    p = sub.add_parser("sweep", help="P/R over a grid of n, k, and seeds")
    _add_pair_args(p)
    p.add_argument("--n", type=int, action="append", help="repeatable sample size")
    p.add_argument("--k", type=int, action="append", help="repeatable neighbor count")
    p.add_argument("--seed", type=int, action="append", help="repeatable seed")
    p.add_argument("--mode", choices=MODES, default="vary_both")
    p.add_argument("--variance-target", type=float, default=DEFAULT_VARIANCE_TARGET)
    _add_common(p, {"json", "csv"}, "csv")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("variance", help="across-seed variance report at fixed n and k")
    _add_pair_args(p)
    p.add_argument("--n", type=int, default=4000)
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--seed", type=int, action="append", help="repeatable seed (>= 2 needed)")
    p.add_argument("--mode", choices=MODES, default="vary_both")
    p.add_argument("--variance-target", type=float, default=DEFAULT_VARIANCE_TARGET)
    _add_common(p, {"json"}, "json")
    p.set_defaults(func=_cmd_variance)

    p = sub.add_parser("lexical", help="Distinct-n and Self-BLEU of a JSONL corpus")
    p.add_argument("--out", required=True, help="JSONL corpus to score")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--sample", type=int, default=None, help="Self-BLEU subsample size")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, {"json"}, "json")
    p.set_defaults(func=_cmd_lexical)

    p = sub.add_parser("correlate", help="Pearson correlation between two CSV columns")
    p.add_argument("--input", required=True, help="CSV file with a header row")
    p.add_argument("--x", required=True, help="first column name")
    p.add_argument("--y", required=True, help="second column name")
    _add_common(p, {"json"}, "json")
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("synth", help="write synthetic scenario embeddings as EMB1 files")
    p.add_argument("--scenario", choices=SCENARIOS, required=True)
    p.add_argument("--n", type=int, default=4000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dimension", type=int, default=DEFAULT_DIMENSION)
    _add_common(p, {"json"}, "json")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("plot", help="render a label,x,y CSV as an SVG scatter or curve")
    p.add_argument("--input", required=True, help="CSV with columns label,x,y")
    p.add_argument("--kind", choices=("scatter", "curve"), default="scatter")
    p.add_argument("--title", default="")
    p.add_argument("--xlabel", default="x")
    p.add_argument("--ylabel", default="y")
    p.add_argument("--format", choices=["svg"], default="svg")
    p.add_argument("--output", required=True, help="SVG output path")
    p.set_defaults(func=_cmd_plot)

    p = sub.add_parser("pca-dump", help="fit the union PCA and dump the model as JSON")
    _add_pair_args(p)
    p.add_argument("--variance-target", type=float, default=DEFAULT_VARIANCE_TARGET)
    _add_common(p, {"json"}, "json")
    p.set_defaults(func=_cmd_pca_dump)
    return parser


def main(argv=None):
    # the CLI owns its process: silence numba's TBB-version advisory, which
    # otherwise lands on stderr at the first parallel kernel launch
    import warnings

    warnings.filterwarnings("ignore", message=".*TBB.*")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except PrdistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    raise SystemExit(main())
