"""Command line interface.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from . import harness
from .errors import ConfigError, NumericalError
from .symbol import Composite, FourierSeries, Modulus, PureJump, load_symbol


def _add_symbol_args(sub):
    sub.add_argument("--symbol", metavar="FILE", help="symbol-spec file")
    sub.add_argument("--config", metavar="FILE",
                     help="config file (symbol fields plus run fields)")
    sub.add_argument("--beta-re", type=float, help="jump exponent, real part")
    sub.add_argument("--beta-im", type=float, default=0.0,
                     help="jump exponent, imaginary part")
    sub.add_argument("--p0", type=float, default=0.0,
                     help="jump phase offset (jump itself sits at +-pi)")
    sub.add_argument("--coeff", action="append", default=[], metavar="K:RE:IM",
                     help="smooth-part Fourier coefficient, repeatable")


def _parse_coeffs(items):
    out = {}
    for item in items:
        try:
            k, re, im = item.split(":")
            out[int(k)] = complex(float(re), float(im))
        except ValueError:
            raise ConfigError(f"bad --coeff {item!r}; expected K:RE:IM")
    return out


def _resolve_symbol(args, file_cfg):
    if args.symbol:
        return load_symbol(args.symbol)
    coeffs = _parse_coeffs(args.coeff)
    if args.beta_re is not None:
        jump = PureJump(complex(args.beta_re, args.beta_im), args.p0)
        if coeffs:
            return Composite(jump=jump, smooth=FourierSeries(coeffs))
        return jump
    if coeffs:
        return FourierSeries(coeffs)
    if "symbol" in file_cfg:
        return file_cfg["symbol"]
    raise ConfigError("no symbol given: use --symbol, --config, --beta-re, or --coeff")


def _parse_n_list(text):
    try:
        return tuple(int(x) for x in str(text).split(",") if x)
    except ValueError:
        raise ConfigError(f"bad n list: {text!r}")


def _build_config(args, mode) -> harness.ExperimentConfig:
    file_cfg = harness.load_config(args.config) if args.config else {}
    symbol = _resolve_symbol(args, file_cfg)
    n_list = file_cfg.get("n_list", (200,))
    if getattr(args, "n", None):
        n_list = _parse_n_list(args.n)
    if getattr(args, "n_list", None):
        n_list = _parse_n_list(args.n_list)
    quad_points = getattr(args, "quad_points", None) or file_cfg.get("quad_points", 8192)
    margin = getattr(args, "exclusion_margin", None)
    if margin is None:
        margin = file_cfg.get("exclusion_margin")
    out = getattr(args, "out", None) or file_cfg.get("output_path")
    zeta = file_cfg.get("zeta", 2.0 + 0.0j)
    if getattr(args, "zeta_re", None) is not None or getattr(args, "zeta_im", None) is not None:
        zeta = complex(args.zeta_re if args.zeta_re is not None else 0.0,
                       args.zeta_im if args.zeta_im is not None else 0.0)
    return harness.ExperimentConfig(
        symbol=symbol, n_list=n_list, mode=mode, quad_points=int(quad_points),
        exclusion_margin=margin, output_path=out, zeta=zeta,
        export_matrix=getattr(args, "export_matrix", None),
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="toeplitz-spectra",
        description="Eigenvalue deviation asymptotics for Toeplitz matrices "
                    "with a single jump symbol.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compare", help="eigensolve, match, and compare against "
                                       "the predicted deviations")
    _add_symbol_args(c)
    c.add_argument("--n", help="matrix sizes, comma separated")
    c.add_argument("--quad-points", type=int, dest="quad_points")
    c.add_argument("--exclusion-margin", type=float, dest="exclusion_margin")
    c.add_argument("--out", help="output CSV path (suffixed _n<N> for multiple n)")
    c.add_argument("--export-matrix", dest="export_matrix", metavar="FILE",
                   help="also dump the dense section as CSV")

    d = sub.add_parser("det-asym", help="exact vs predicted log det(zeta - T_n)")
    _add_symbol_args(d)
    d.add_argument("--zeta-re", type=float, dest="zeta_re")
    d.add_argument("--zeta-im", type=float, dest="zeta_im")
    d.add_argument("--n-list", dest="n_list", help="sizes, comma separated")
    d.add_argument("--quad-points", type=int, dest="quad_points")
    d.add_argument("--out", help="output CSV path")

    e = sub.add_parser("eig", help="emit the raw spectrum of T_n")
    _add_symbol_args(e)
    e.add_argument("--n", help="matrix size")
    e.add_argument("--quad-points", type=int, dest="quad_points")
    e.add_argument("--out", help="output CSV path")
    e.add_argument("--export-matrix", dest="export_matrix", metavar="FILE")

    p = sub.add_parser("predict", help="predicted deviations on the theta grid")
    _add_symbol_args(p)
    p.add_argument("--n", help="matrix size")
    p.add_argument("--quad-points", type=int, dest="quad_points")
    p.add_argument("--exclusion-margin", type=float, dest="exclusion_margin")
    p.add_argument("--out", help="output CSV path")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    mode = {"compare": "compare", "det-asym": "det-asym",
            "eig": "eig", "predict": "predict"}[args.command]
    cfg = _build_config(args, mode)

    if mode == "compare":
        reports = harness.run_compare(cfg)
        multiple = len(reports) > 1
        for rep in reports:
            print(f"n={rep.n}: improvement_factor={rep.improvement_factor:.4g} "
                  f"median_residual_mid80={rep.median_residual_mid80:.4g}")
            if cfg.output_path:
                path = harness.compare_output_path(cfg.output_path, rep.n, multiple)
                harness.write_compare_csv(rep, path)
                print(f"wrote {path}")
    elif mode == "det-asym":
        rows, slope, beta_z = harness.run_det_validation(cfg)
        print(f"logn coefficient: {slope.real:+.8f}{slope.imag:+.8f}j "
              f"(-beta_zeta^2 = {-beta_z**2:+.8f})")
        if cfg.output_path:
            harness.write_det_csv(rows, slope, beta_z, cfg.output_path)
            print(f"wrote {cfg.output_path}")
        else:
            for (n, ld, pred, err) in rows:
                print(f"n={n}: exact={ld:.10g} pred={pred:.10g} abs_err={err:.3g}")
    elif mode == "eig":
        spec = harness.run_eig(cfg)
        if cfg.output_path:
            harness.write_eig_csv(spec, cfg.output_path)
            print(f"wrote {cfg.output_path}")
        else:
            for i, lam in enumerate(spec.eigenvalues):
                print(f"{i},{lam.real:.17g},{lam.imag:.17g}")
    else:
        preds = harness.run_predict(cfg)
        if cfg.output_path:
            harness.write_predict_csv(preds, cfg.output_path)
            print(f"wrote {cfg.output_path}")
        else:
            for pr in preds:
                print(f"{pr.theta:.6f},{pr.delta_a.real:.10g},{pr.delta_a.imag:.10g}")
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
