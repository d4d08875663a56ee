"""Command-line harness: verify suites, apply transforms, run the inversion.

Exit codes: 0 success, 1 failing verification checks, 2 usage, config or
data errors.  Input CSVs are resampled onto the configured grid before any
operator is applied; imported grids are often asymmetric or unevenly spaced
and the transform plans require the symmetric quadrature grid.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

import numpy as np

from .config import Config, ConfigError, load_config, resolve_threads
from .errors import AdmissibilityError, DecayError
from .grids import SampledFunction, lp_norm, make_grid
from .kernels import Order, SoninePair
from .sonine import dual_intertwining_V, dual_sonine_transform, sonine_transform
from .transforms import TransformPlan, dunkl_transform, inverse_dunkl_transform
from .verify import RunContext, run_suite, report_dict, write_reports
from .wavelets import cwt, make_scale_grid
from .sonine_inversion import invert_dual_sonine

__all__ = ["main"]

GOLDEN_INPUT = "gaussian_beta.csv"
GOLDEN_OUTPUT = "dual_sonine_golden.csv"


def _load_cfg(path):
    try:
        return load_config(path)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _resample(fs: SampledFunction, grid) -> SampledFunction:
    if fs.grid is not None and fs.grid.nodes.shape == grid.nodes.shape \
            and np.array_equal(fs.grid.nodes, grid.nodes):
        return SampledFunction(grid, fs.values)
    return SampledFunction(grid, np.asarray(fs.evaluator()(grid.nodes), dtype=complex))


def _read_input(path, grid) -> SampledFunction:
    try:
        fs = SampledFunction.from_csv(path)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)
    return _resample(fs, grid)


def cmd_verify(args) -> int:
    cfg = _load_cfg(args.config)
    ctx = RunContext(cfg)
    try:
        results = run_suite(args.suite, ctx, threads=resolve_threads(cfg))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        print(f"{flag} {r.id}: measured {r.measured:.6e} vs tolerance {r.tolerance:.1e}")
    report = report_dict(args.suite, results)
    out = args.out if args.out else f"verify-{args.suite}.json"
    csv_path = write_reports(out, args.suite, results)
    print(f"{report['pass_count']} passed, {report['fail_count']} failed; "
          f"report written to {out} and {csv_path}")
    return 0 if report["fail_count"] == 0 else 1


def cmd_transform(args) -> int:
    cfg = _load_cfg(args.config)
    grid = make_grid(cfg.radius, cfg.panels, cfg.order)
    order = args.order if args.order is not None else cfg.alpha
    pair = SoninePair(Order(cfg.alpha), Order(cfg.beta))
    fs = _read_input(args.input, grid)
    try:
        if args.kind == "dunkl":
            out = dunkl_transform(fs, TransformPlan(grid, grid, order))
        elif args.kind == "inverse-dunkl":
            out = inverse_dunkl_transform(fs, TransformPlan(grid, grid, order))
        elif args.kind == "sonine":
            out = sonine_transform(fs, pair, grid=grid, order=cfg.quad_order)
        elif args.kind == "dual-sonine":
            out = dual_sonine_transform(fs, pair, grid=grid)
        elif args.kind == "dual-V":
            out = dual_intertwining_V(fs, order, grid=grid)
        else:  # cwt
            eps = args.scale_eps if args.scale_eps is not None else cfg.window[0]
            delta = args.scale_delta if args.scale_delta is not None else cfg.window[1]
            from .wavelets import wavelet_from_profile, power_gaussian_profile, \
                power_gaussian_generator
            power = cfg.wavelet_profile.power
            gen = power_gaussian_generator(order, int(power)) if power in (2.0, 4.0) else None
            spec = wavelet_from_profile(power_gaussian_profile(power),
                                        TransformPlan(grid, grid, order), power,
                                        generator_fn=gen)
            field = cwt(fs, spec, make_scale_grid(eps, delta, cfg.per_decade))
            field.to_csv(args.out)
            print(f"wrote {field.values.shape[0]} scales x "
                  f"{field.values.shape[1]} positions to {args.out}")
            return 0
    except (ValueError, DecayError, AdmissibilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out.to_csv(args.out)
    print(f"wrote {out.values.size} samples to {args.out}")
    return 0


def _dual_wavelet_from_config(cfg: Config, grid):
    from .verify import _profile_pieces
    from .sonine_inversion import build_dual_sonine_wavelet
    from .kernels import SoninePair, Order

    pair = SoninePair(Order(cfg.alpha), Order(cfg.beta))
    power = cfg.profile.power
    d = 2.0 * (cfg.beta - cfg.alpha)
    profile, gen = _profile_pieces(power, cfg.alpha)
    img_gen = None
    if power - d in (2.0, 4.0):
        from .wavelets import power_gaussian_generator
        base = power_gaussian_generator(cfg.beta, int(power - d))
        ratio = pair.plancherel_ratio
        img_gen = lambda x: ratio * base(x)
    plan = TransformPlan(grid, grid, cfg.alpha)
    plan_b = TransformPlan(grid, grid, cfg.beta)
    return build_dual_sonine_wavelet(profile, power, pair, plan, plan_b,
                                     generator_fn=gen, image_generator_fn=img_gen), pair


def cmd_invert(args) -> int:
    cfg = _load_cfg(args.config)
    grid = make_grid(cfg.radius, cfg.panels, cfg.order)
    h = _read_input(args.input, grid)
    eps = args.window_eps if args.window_eps is not None else cfg.inversion_window[0]
    delta = args.window_delta if args.window_delta is not None else cfg.inversion_window[1]
    try:
        wavelet, pair = _dual_wavelet_from_config(cfg, grid)
        a_grid = None
        if args.scale_eps is not None or args.scale_delta is not None:
            se = args.scale_eps if args.scale_eps is not None else eps
            sd = args.scale_delta if args.scale_delta is not None else delta
            a_grid = make_scale_grid(se, sd, cfg.per_decade)
        rec = invert_dual_sonine(h, wavelet, (eps, delta), a_grid,
                                 order=cfg.quad_order)
    except (ValueError, DecayError, AdmissibilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rec.to_csv(args.out)
    print(f"wrote reconstruction ({rec.values.size} samples) to {args.out}")
    if args.reference:
        ref = _read_input(args.reference, grid)
        num = lp_norm(SampledFunction(grid, rec.values - ref.values), 2, cfg.beta)
        den = lp_norm(ref, 2, cfg.beta)
        print(f"relative weighted L2 error vs reference: {num / den:.6e}")
    return 0


def regen_golden(config_path) -> int:
    """Rebuild the bundled fixtures with doubled quadrature orders."""
    cfg = _load_cfg(config_path)
    grid = make_grid(cfg.radius, cfg.panels, cfg.order)
    pair = SoninePair(Order(cfg.alpha), Order(cfg.beta))
    gauss = SampledFunction(grid, np.exp(-0.5 * grid.nodes ** 2).astype(complex))
    golden = dual_sonine_transform(gauss, pair, grid=grid,
                                   first_order=48, panel_order=48)
    base = resources.files("dunklwave") / "fixtures"
    in_path = str(base / GOLDEN_INPUT)
    out_path = str(base / GOLDEN_OUTPUT)
    gauss.to_csv(in_path)
    golden.to_csv(out_path)
    print(f"wrote {in_path}")
    print(f"wrote {out_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunklwave",
        description="Dunkl transform stack: verification suites, transforms, "
                    "and dual Sonine inversion.",
    )
    parser.add_argument("--regen-golden", action="store_true",
                        help="rebuild the bundled golden fixtures at doubled "
                             "quadrature order, then exit")
    parser.add_argument("--config", default=None,
                        help="path to a JSON config file (top level, used with "
                             "--regen-golden)")
    sub = parser.add_subparsers(dest="command")

    p_ver = sub.add_parser("verify", help="run an identity suite and write a report")
    p_ver.add_argument("suite", choices=[
        "plancherel", "translation", "convolution", "sonine",
        "wavelet", "calderon", "inversion", "all",
    ])
    p_ver.add_argument("--config", default=None)
    p_ver.add_argument("--out", default=None, help="JSON report path "
                       "(default verify-<suite>.json; CSV written next to it)")
    p_ver.set_defaults(func=cmd_verify)

    p_tr = sub.add_parser("transform", help="apply an operator to CSV samples")
    p_tr.add_argument("--kind", required=True, choices=[
        "dunkl", "inverse-dunkl", "sonine", "dual-sonine", "dual-V", "cwt",
    ])
    p_tr.add_argument("--in", dest="input", required=True, help="input CSV (x,re,im)")
    p_tr.add_argument("--out", required=True, help="output CSV")
    p_tr.add_argument("--config", default=None)
    p_tr.add_argument("--order", type=float, default=None,
                      help="operator order for dunkl/inverse-dunkl/dual-V/cwt "
                           "(default: config alpha)")
    p_tr.add_argument("--scale-eps", type=float, default=None,
                      help="cwt only: smallest scale (default: config window)")
    p_tr.add_argument("--scale-delta", type=float, default=None,
                      help="cwt only: largest scale (default: config window)")
    p_tr.set_defaults(func=cmd_transform)

    p_inv = sub.add_parser("invert", help="invert dual Sonine data from CSV")
    p_inv.add_argument("--in", dest="input", required=True,
                       help="CSV samples of the dual-transform data")
    p_inv.add_argument("--out", required=True, help="output CSV for the reconstruction")
    p_inv.add_argument("--reference", default=None,
                       help="optional CSV of the target function; prints an error summary")
    p_inv.add_argument("--config", default=None)
    p_inv.add_argument("--window-eps", type=float, default=None)
    p_inv.add_argument("--window-delta", type=float, default=None)
    p_inv.add_argument("--scale-eps", type=float, default=None,
                       help="scale grid lower end (default: the window)")
    p_inv.add_argument("--scale-delta", type=float, default=None,
                       help="scale grid upper end (default: the window)")
    p_inv.set_defaults(func=cmd_invert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.regen_golden:
        return regen_golden(args.config)
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0


if __name__ == "__main__":
    raise SystemExit(main())
