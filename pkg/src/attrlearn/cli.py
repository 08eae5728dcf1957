"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .core import AttrLearnError, Model, rng_stream
from .datasets import (
    LinearTaskSpec,
    LowerBoundSpec,
    dense_weights,
    gen_linear,
    gen_lowerbound,
    load_csv,
    load_idx_images,
    load_idx_labels,
    make_pair_task,
    save_csv,
    two_attribute_floor,
)
from .evaluation import (
    ALGORITHMS,
    ExperimentConfig,
    TuningGrid,
    cross_validate,
    fit,
    is_binary,
    run_experiment,
    test_classification_error,
    test_squared_error,
    write_curve_csv,
)

log = logging.getLogger("attrlearn")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _float_or(keyword):
    def parse(text):
        if text == keyword:
            return text
        try:
            return float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a number or {keyword!r}, got {text!r}")
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="attrlearn", description="Linear regression from partially observed attributes.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-synth", help="write a synthetic dataset as CSV")
    p.add_argument("--dist", choices=("lowerbound", "linear"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--j", type=int, default=0, help="lowerbound: index of the informative feature")
    p.add_argument("--p", type=float, default=0.25, help="lowerbound: P[y = x_j] - 1/2")
    p.add_argument("--w-star", default="dense",
                   help="linear: 'dense' (random signs, |w_i| = norm/d) or comma-separated weights")
    p.add_argument("--w-norm", type=float, default=1.0, help="linear: L1 norm of a dense w*")
    p.add_argument("--noise", type=float, default=0.0, help="linear: uniform noise half-width")
    p.add_argument("--clip", action="store_true", help="linear: clamp targets into [-1, 1]")

    p = sub.add_parser("import-mnist", help="build a digit-pair task from IDX files")
    p.add_argument("--images", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--digit-a", type=int, required=True)
    p.add_argument("--digit-b", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("train", help="train one model")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--B", type=float)
    p.add_argument("--lambda", dest="lam", type=_float_or("auto"), default="auto")
    p.add_argument("--b2", type=_float_or("dense"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model-out", required=True)

    p = sub.add_parser("eval", help="evaluate a model file on a dataset")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--metrics")

    p = sub.add_parser("tune", help="cross-validate a grid")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--grid", required=True, help="JSON with B, lambda or lambda_scale, folds")
    p.add_argument("--folds", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("experiment", help="run learning curves from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)

    sub.add_parser("demo-floor", help="print the two-attribute test-time floor")
    return parser


def _needs_k(args):
    if args.algo in ("baseline", "aer", "naive") and args.k is None:
        raise UsageError(f"--k is required for --algo {args.algo}")


def cmd_gen_synth(args):
    rng = rng_stream(args.seed, "gen-synth")
    if args.dist == "lowerbound":
        data = gen_lowerbound(LowerBoundSpec(args.d, args.j, args.p), args.m, rng)
    else:
        if args.w_star == "dense":
            w = dense_weights(args.d, args.w_norm, rng_stream(args.seed, "w-star"))
        else:
            w = np.array([float(v) for v in args.w_star.split(",")])
        spec = LinearTaskSpec(w, args.noise, args.clip)
        data = gen_linear(spec, args.d, args.m, rng)
    save_csv(data, args.out)
    log.info("wrote %d examples, d=%d, to %s", data.m, data.d, args.out)


def cmd_import_mnist(args):
    images = load_idx_images(args.images)
    labels = load_idx_labels(args.labels)
    data = make_pair_task(images, labels, args.digit_a, args.digit_b)
    save_csv(data, args.out)
    log.info("wrote %d examples of digits %d/%d to %s", data.m, args.digit_a, args.digit_b, args.out)


def cmd_train(args):
    _needs_k(args)
    if args.algo != "naive" and args.B is None:
        raise UsageError(f"--B is required for --algo {args.algo}")
    data = load_csv(args.data)
    params = {"B": args.B, "lambda": args.lam}
    if args.b2 is not None:
        params["b2"] = args.b2
    model = fit(args.algo, data, params, args.k, args.seed)
    model.save(args.model_out)
    log.info("trained %s on %d examples; attributes used %d", args.algo, data.m, model.attributes_consumed)


def cmd_eval(args):
    model = Model.load(args.model)
    data = load_csv(args.data)
    metrics = {"sq_error": test_squared_error(model, data), "m": data.m}
    metrics["cls_error"] = test_classification_error(model, data) if is_binary(data) else None
    text = json.dumps(metrics, indent=2)
    print(text)
    if args.metrics:
        with open(args.metrics, "w") as fh:
            fh.write(text + "\n")


def cmd_tune(args):
    _needs_k(args)
    with open(args.grid) as fh:
        raw = json.load(fh)
    if args.folds is not None:
        raw["folds"] = args.folds
    grid = TuningGrid.from_dict(raw)
    data = load_csv(args.data)
    best, scores = cross_validate(data, args.algo, grid, args.k, args.seed, args.jobs, return_scores=True)
    result = {"best": best, "scores": [{"params": c, "cv_sq_error": e} for c, e in scores]}
    text = json.dumps(result, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")


def cmd_experiment(args):
    with open(args.config) as fh:
        cfg = ExperimentConfig.from_dict(json.load(fh))
    points = run_experiment(cfg, jobs=args.jobs, log=log.info)
    write_curve_csv(points, args.out)
    log.info("wrote %d curve points to %s", len(points), args.out)


def cmd_demo_floor(args):
    print(f"{two_attribute_floor():.17g}")


COMMANDS = {
    "gen-synth": cmd_gen_synth,
    "import-mnist": cmd_import_mnist,
    "train": cmd_train,
    "eval": cmd_eval,
    "tune": cmd_tune,
    "experiment": cmd_experiment,
    "demo-floor": cmd_demo_floor,
}


def run_cli(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s", stream=sys.stderr)
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (AttrLearnError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    return 0


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
