"""Command line entry point: ``sepcompress <subcommand> ...``.

Exit status is 0 on success, 1 on bad input or any contract error, and 2
when a verification run finds a counterexample to margin preservation.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds, harness
from .dataset import GenConfig, Hyperplane, csv_text, generate_separable, load_csv, save_csv
from .distortion import audit
from .errors import NotSeparable, SepCompressError
from .hullsvm import fit
from .projection import ENSEMBLES, apply_set, generate, load_matrix_csv, save_matrix_csv
from .rng import parse_seed


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj, out) -> None:
    _emit(json.dumps(obj, indent=2, allow_nan=False) + "\n", out)


def _matrix(args, n):
    if args.matrix:
        Q = load_matrix_csv(args.matrix)
    else:
        if args.m is None:
            raise SepCompressError("give --matrix FILE or --m M")
        Q = generate(args.m, n, args.ensemble, args.seed, scaled=not args.unscaled)
    if Q.n != n:
        raise SepCompressError(f"matrix has {Q.n} columns but the data has dimension {n}")
    return Q


def cmd_gen(args):
    cfg = GenConfig(args.n, args.count, args.gamma, args.R, args.sparsity, args.seed, args.b0)
    data, prior = generate_separable(cfg)
    if args.out:
        save_csv(data, args.out)
    else:
        sys.stdout.write(csv_text(data))
    if args.prior_out:
        with open(args.prior_out, "w") as fh:
            json.dump(prior.to_dict(), fh, indent=2)
            fh.write("\n")
    return 0


def cmd_fit(args):
    data = load_csv(args.data)
    h, w = fit(data)
    pos_idx = np.flatnonzero(data.y == 1)
    neg_idx = np.flatnonzero(data.y == -1)
    _dump({
        "w": h.w.tolist(), "b": h.b, "delta": w.delta, "margin": h.margin(),
        "certified_gap": w.certified_gap,
        "support_weights": {
            "plus": [[int(pos_idx[k]), float(a)] for k, a in enumerate(w.coeffs_plus) if a > 0],
            "minus": [[int(neg_idx[k]), float(a)] for k, a in enumerate(w.coeffs_minus) if a > 0],
        },
    }, args.out)
    return 0


def cmd_compress(args):
    data = load_csv(args.data)
    Q = _matrix(args, data.n)
    comp = apply_set(Q, data)
    if args.out:
        save_csv(comp, args.out)
    else:
        sys.stdout.write(csv_text(comp))
    if args.matrix_out:
        save_matrix_csv(Q, args.matrix_out)
    return 0


def cmd_audit(args):
    data = load_csv(args.data)
    Q = _matrix(args, data.n)
    _dump(audit(Q, data).to_dict(), args.out)
    return 0


def cmd_verify(args):
    data = load_csv(args.data)
    Q = _matrix(args, data.n)
    prior = None
    if args.prior:
        with open(args.prior) as fh:
            prior = Hyperplane.from_dict(json.load(fh))
    rep = harness.verify(data, Q, prior, check_lp=not args.no_lp)
    _emit(harness.report_emit(rep, "json"), args.out)
    return 2 if rep.verdict == harness.COUNTEREXAMPLE else 0


def cmd_sweep(args):
    cfg = GenConfig(args.n, args.count, args.gamma, args.R, args.sparsity, args.data_seed, args.b0)
    m_list = [int(t) for t in args.m_list.split(",") if t.strip()]
    matrix = load_matrix_csv(args.matrix) if args.matrix else None
    bcfg = bounds.BoundsConfig(C=args.C, K=args.K, epsilon=args.epsilon)
    res = harness.sweep(cfg, args.ensemble, m_list, args.reps, args.seed, bcfg, matrix,
                        check_lp=not args.no_lp)
    _emit(harness.report_emit(res, args.format), args.out)
    bad = sum(r.counterexamples for r in res.rows)
    return 2 if bad else 0


def cmd_bounds(args):
    with open(args.config) as fh:
        cfg = json.load(fh)
    _dump(bounds.bounds_report(cfg), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=parse_seed, default=0, help="64-bit unsigned seed")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    mat = argparse.ArgumentParser(add_help=False)
    mat.add_argument("--matrix", help="explicit matrix CSV (m rows, n columns, no header)")
    mat.add_argument("--m", type=int, help="compressed dimension for a random matrix")
    mat.add_argument("--ensemble", choices=[e for e in ENSEMBLES if e != "explicit"],
                     default="gaussian")
    mat.add_argument("--unscaled", action="store_true", help="omit the 1/sqrt(m) factor")

    gen = argparse.ArgumentParser(add_help=False)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--count", type=int, required=True, help="points per class")
    gen.add_argument("--gamma", type=float, required=True, help="target margin")
    gen.add_argument("--R", type=float, required=True, help="radius cap")
    gen.add_argument("--sparsity", type=int, default=None)
    gen.add_argument("--b0", type=float, default=0.0, help="offset of the generating hyperplane")

    p = argparse.ArgumentParser(prog="sepcompress", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common, gen], help="sample a separable data set")
    s.add_argument("--prior-out", help="write the generating hyperplane as JSON")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("fit", parents=[common], help="hard-SVM from nearest hull points")
    s.add_argument("data")
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("compress", parents=[common, mat], help="apply a matrix to a data set")
    s.add_argument("data")
    s.add_argument("--matrix-out", help="also save the matrix used")
    s.set_defaults(func=cmd_compress)

    s = sub.add_parser("audit", parents=[common, mat], help="inner-product and distance distortion")
    s.add_argument("data")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("verify", parents=[common, mat], help="end-to-end preservation check")
    s.add_argument("data")
    s.add_argument("--prior", help="JSON hyperplane {w, b} known to separate the data")
    s.add_argument("--no-lp", action="store_true", help="skip the LP oracle")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common, gen], help="preservation rate over m")
    s.add_argument("--m-list", required=True, help="comma separated lengths, e.g. 8,16,32")
    s.add_argument("--reps", type=int, default=20)
    s.add_argument("--ensemble", choices=ENSEMBLES, default="gaussian")
    s.add_argument("--matrix", help="matrix CSV for --ensemble explicit")
    s.add_argument("--data-seed", type=parse_seed, default=0)
    s.add_argument("--C", type=float, default=1.0)
    s.add_argument("--K", type=float, default=1.0)
    s.add_argument("--epsilon", type=float, default=0.05)
    s.add_argument("--no-lp", action="store_true")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("bounds", parents=[common], help="evaluate the closed-form bounds")
    s.add_argument("config", help="JSON file with C, K, epsilon, delta_conf, R, s, n, ...")
    s.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SepCompressError, ValueError, OSError, KeyError) as exc:
        kind = "not separable" if isinstance(exc, NotSeparable) else "error"
        print(f"sepcompress: {kind}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
