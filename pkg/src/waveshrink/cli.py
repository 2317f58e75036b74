"""Command-line interface: ``denoise``, ``plm`` and ``bench`` subcommands."""

import argparse
import sys

import numpy as np

from . import block as _block
from .bench import ALL_METHODS, TABLE_METHODS, run_mc, write_csv
from .denoise import DenoiseConfig, denoise, mad_sigma
from .filters import available_wavelets, get_wavelet
from .plm import PLMData, fit_plm
from .rules import parse_rule
from .sigio import load_signal, save_signal
from .signals import SIGNAL_NAMES
from .transform import dwt, idwt


def _parse_bool(text):
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _parse_threshold(text):
    return text if text == "universal" else float(text)


def _parse_sigma(text):
    return text if text == "mad" else float(text)


def _comma_list(text):
    return [item.strip() for item in text.split(",") if item.strip()]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="waveshrink",
        description="Wavelet shrinkage toolkit: denoising, block thresholding, "
        "partially linear models, and a Monte Carlo benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("denoise", help="denoise a signal file")
    d.add_argument("--input", required=True)
    d.add_argument("--output", required=True)
    d.add_argument("--wavelet", default="db4", help=f"one of {available_wavelets()}")
    d.add_argument(
        "--rule",
        default="soft",
        help="rule spec kind[:param[,param]] (e.g. soft:1.0, firm:1.0,2.0, "
        "scad:1.0,3.7) or a block scheme: block_js | neigh_block | neigh_coeff",
    )
    d.add_argument(
        "--threshold",
        type=_parse_threshold,
        default="universal",
        help="'universal' or a fixed positive value (for block schemes: "
        "the block lambda)",
    )
    d.add_argument(
        "--sigma", type=_parse_sigma, default="mad", help="'mad' or a known value"
    )
    d.add_argument("--j0", type=int, default=0, help="coarse level")
    d.add_argument(
        "--translation-invariant",
        type=_parse_bool,
        default=False,
        metavar="BOOL",
        help="average the estimate over all circular shifts (scalar rules only)",
    )

    p = sub.add_parser("plm", help="fit a partially linear model from a CSV")
    p.add_argument(
        "--input", required=True, help="CSV, first column y, remaining columns X"
    )
    p.add_argument("--output", default=None, help="output CSV (default: stdout)")
    p.add_argument("--wavelet", default="db4")
    p.add_argument("--j0", type=int, default=0)
    p.add_argument(
        "--lambda",
        dest="lam",
        type=_parse_threshold,
        default="universal",
        help="'universal' or a fixed positive value",
    )

    b = sub.add_parser("bench", help="Monte Carlo benchmark sweep")
    b.add_argument(
        "--signals",
        type=_comma_list,
        default=list(SIGNAL_NAMES),
        help=f"comma-separated subset of {list(SIGNAL_NAMES)}",
    )
    b.add_argument(
        "--methods",
        type=_comma_list,
        default=list(TABLE_METHODS),
        help=f"comma-separated subset of {list(ALL_METHODS)}",
    )
    b.add_argument("--snr", type=lambda t: [float(v) for v in _comma_list(t)],
                   default=[3.0, 7.0],
                   help="comma-separated signal-to-noise ratios, sd(signal)/sigma")
    b.add_argument("--n", type=int, default=512)
    b.add_argument("--reps", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--wavelet", default="db4")
    b.add_argument("--j0", type=int, default=0)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", default="results.csv")
    return parser


def _cmd_denoise(args):
    values, header = load_signal(args.input)
    basis = get_wavelet(args.wavelet)
    rule_text = args.rule.strip().lower()
    if rule_text in _block.BLOCK_SCHEMES:
        if args.translation_invariant:
            raise SystemExit("translation invariance is not supported for block schemes")
        decomp = dwt(values, basis, args.j0)
        sigma = (
            mad_sigma(decomp.finest_details)
            if isinstance(args.sigma, str)
            else args.sigma
        )
        lam = None if isinstance(args.threshold, str) else args.threshold
        if rule_text == "neigh_coeff":
            if lam is not None:
                config = _block.BlockConfig("neigh_coeff", block_length=1, lam=lam)
                shrunk = _block.neigh_block(decomp, sigma, config)
            else:
                shrunk = _block.neigh_coeff(decomp, sigma)
        else:
            config = _block.BlockConfig(rule_text, lam=lam)
            shrunk = getattr(_block, rule_text)(decomp, sigma, config)
        result = idwt(shrunk, basis)
    else:
        config = DenoiseConfig(
            basis=basis,
            rule=parse_rule(args.rule),
            coarse_level=args.j0,
            threshold=args.threshold,
            sigma=args.sigma,
            translation_invariant=args.translation_invariant,
        )
        result = denoise(values, config)
    save_signal(args.output, result, header)


def _cmd_plm(args):
    data = np.loadtxt(args.input, delimiter=",", ndmin=2)
    if data.shape[1] < 2:
        raise SystemExit("PLM input needs at least two columns (y, X...)")
    fit = fit_plm(
        PLMData(data[:, 0], data[:, 1:]),
        get_wavelet(args.wavelet),
        coarse_level=args.j0,
        lam=args.lam,
    )
    lines = [
        "beta," + ",".join(repr(b) for b in fit.beta_hat),
        f"sigma,{fit.sigma_hat!r}",
        f"lambda,{fit.lam!r}",
        "f_hat",
    ]
    lines += [repr(v) for v in fit.f_hat]
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_bench(args):
    results = run_mc(
        args.methods,
        args.signals,
        args.snr,
        n=args.n,
        reps=args.reps,
        base_seed=args.seed,
        wavelet=args.wavelet,
        coarse_level=args.j0,
        workers=args.workers,
    )
    write_csv(results, args.out)
    failed = [r for r in results if r.error]
    for r in failed:
        print(f"FAILED {r.method}/{r.signal}/snr={r.snr}: {r.error}", file=sys.stderr)
    print(f"wrote {len(results)} cells to {args.out}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "denoise":
        _cmd_denoise(args)
    elif args.command == "plm":
        _cmd_plm(args)
    elif args.command == "bench":
        _cmd_bench(args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
