"""Command line batch runner.

    jmvcc synth --out DIR --n 60 --k 3 --dims 20,15 --sigma 0.01
    jmvcc fit --data DIR --k 3 --out RUN
    jmvcc nmf --data DIR --view 0 --k 3 --out RUN
    jmvcc sweep-gamma --data DIR --k 3 --gammas 2,3,4,5 --out RUN
    jmvcc corrupt --data DIR --view 1 --mode uniform-noise --k 3 --out RUN

Runs write ``report.json`` and discretized labels (``labels.csv``, or one
``labels_gamma<g>.csv`` per value for ``sweep-gamma``) into ``--out``.
"""
import argparse
import csv
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from .data import corrupt_view, load_dataset, save_dataset, synth_multiview, write_labels
from .metrics import discretize, nmi, purity
from .nmf import nmf_fit
from .solver import JmvccConfig, jmvcc_fit

logger = logging.getLogger("jmvcc")


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_data_args(p):
    p.add_argument("--data", required=True, type=Path, help="dataset directory")
    p.add_argument("--transpose", action="store_true", help="files hold one sample per row")
    p.add_argument("--shift-nonneg", action="store_true",
                   help="shift features with negative entries to start at 0")
    p.add_argument("--out", required=True, type=Path, help="output directory")


def _add_fit_args(p):
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--max-iters", type=int, default=300)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--jobs", type=int, default=1, help="restarts run in parallel")
    p.add_argument("--eq8-literal", action="store_true",
                   help="centroid update with the cross term shared by numerator and denominator")
    p.add_argument("--invert-alpha-exponent", action="store_true",
                   help="give larger collaboration weights to more similar views")


def build_parser():
    parser = argparse.ArgumentParser(prog="jmvcc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="run JMVCC on a dataset directory")
    _add_data_args(p)
    _add_fit_args(p)

    p = sub.add_parser("nmf", help="single-view NMF baseline")
    _add_data_args(p)
    p.add_argument("--view", default="0", help="view index or name")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-iters", type=int, default=300)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=1e-9)

    p = sub.add_parser("synth", help="generate a planted-partition dataset")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--dims", type=_ints, default=[20, 15], help="features per view, e.g. 20,15")
    p.add_argument("--sigma", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "mat1"), default="csv")

    p = sub.add_parser("sweep-gamma", help="repeat fit over a list of gamma values")
    _add_data_args(p)
    _add_fit_args(p)
    p.add_argument("--gammas", type=_floats, required=True, help="e.g. 2,3,4,5")

    p = sub.add_parser("corrupt", help="corrupt one view, then fit")
    _add_data_args(p)
    _add_fit_args(p)
    p.add_argument("--view", type=int, required=True, help="index of the view to corrupt")
    p.add_argument("--mode", choices=("shuffle", "uniform-noise"), default="uniform-noise")
    p.add_argument("--corrupt-seed", type=int, default=0)
    return parser


def _config(args, gamma=None):
    return JmvccConfig(
        K=args.k,
        gamma=args.gamma if gamma is None else gamma,
        max_iters=args.max_iters,
        tol=args.tol,
        restarts=args.restarts,
        seed=args.seed,
        eps=args.eps,
        eq8_literal=args.eq8_literal,
        invert_alpha_exponent=args.invert_alpha_exponent,
        jobs=args.jobs,
    )


def _scores(labels, truth):
    if truth is None:
        return None
    return {"purity": purity(labels, truth), "nmi": nmi(labels, truth)}


def _dataset_info(ds, path):
    return {"path": str(path), "names": ds.names, "dims": ds.dims, "N": ds.N,
            "has_labels": ds.labels is not None}


def _fit(ds, cfg):
    S, report = jmvcc_fit(ds, cfg)
    labels = discretize(S.Gstar)
    report.scores = _scores(labels, ds.labels)
    return labels, report


def write_report(out, payload):
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "report.json", "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def cmd_fit(args):
    ds = load_dataset(args.data, args.transpose, args.shift_nonneg)
    labels, report = _fit(ds, _config(args))
    write_report(args.out, {"command": "fit", "dataset": _dataset_info(ds, args.data),
                            **report.to_dict()})
    write_labels(args.out / "labels.csv", labels)
    if report.scores:
        logger.info("purity %.4f  nmi %.4f", report.scores["purity"], report.scores["nmi"])


def cmd_corrupt(args):
    ds = load_dataset(args.data, args.transpose, args.shift_nonneg)
    bad = corrupt_view(ds, args.view, args.mode, args.corrupt_seed)
    labels, report = _fit(bad, _config(args))
    payload = {"command": "corrupt", "dataset": _dataset_info(ds, args.data),
               "corruption": {"view": args.view, "mode": args.mode, "seed": args.corrupt_seed},
               **report.to_dict()}
    write_report(args.out, payload)
    write_labels(args.out / "labels.csv", labels)
    save_dataset(bad, args.out / "corrupted")


def cmd_nmf(args):
    ds = load_dataset(args.data, args.transpose, args.shift_nonneg)
    v = ds.names.index(args.view) if args.view in ds.names else int(args.view)
    if not 0 <= v < ds.V:
        raise ValueError(f"view {args.view} not in dataset")
    t = time.perf_counter()
    factors, trace = nmf_fit(ds.views[v], args.k, args.max_iters, args.seed, args.eps, args.tol)
    elapsed = time.perf_counter() - t
    labels = discretize(factors.G)
    payload = {
        "command": "nmf",
        "dataset": _dataset_info(ds, args.data),
        "config": {"view": ds.names[v], "K": args.k, "max_iters": args.max_iters,
                   "tol": args.tol, "seed": args.seed, "eps": args.eps},
        "objective_trace": trace,
        "n_iter": len(trace),
        "converged": len(trace) < args.max_iters,
    }
    scores = _scores(labels, ds.labels)
    if scores is not None:
        payload["scores"] = scores
    payload["timing"] = {"wall": elapsed}
    write_report(args.out, payload)
    write_labels(args.out / "labels.csv", labels)


def alpha_spread(alpha):
    """Mean over views of max - min of the off-diagonal collaboration weights."""
    alpha = np.asarray(alpha)
    V = alpha.shape[0]
    if V < 2:
        return 0.0
    rows = [np.delete(alpha[v], v) for v in range(V)]
    return float(np.mean([r.max() - r.min() for r in rows]))


def cmd_sweep(args):
    ds = load_dataset(args.data, args.transpose, args.shift_nonneg)
    args.out.mkdir(parents=True, exist_ok=True)
    rows, runs = [], []
    for gamma in args.gammas:
        labels, report = _fit(ds, _config(args, gamma))
        row = {"gamma": gamma, "objective": report.restart_objectives[report.best_restart],
               "alpha_spread": alpha_spread(report.alpha)}
        if report.scores:
            row.update(report.scores)
        rows.append(row)
        runs.append(report.to_dict())
        write_labels(args.out / f"labels_gamma{gamma:g}.csv", labels)
    write_report(args.out, {"command": "sweep-gamma", "dataset": _dataset_info(ds, args.data),
                            "table": rows, "runs": runs})
    with open(args.out / "sweep.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)


def cmd_synth(args):
    ds = synth_multiview(args.n, args.k, len(args.dims), args.dims, args.sigma, args.seed)
    save_dataset(ds, args.out, args.format)


COMMANDS = {"fit": cmd_fit, "nmf": cmd_nmf, "synth": cmd_synth,
            "sweep-gamma": cmd_sweep, "corrupt": cmd_corrupt}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"jmvcc {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
