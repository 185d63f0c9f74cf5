"""End-to-end experiment orchestration and CSV reports.

Reports are written with 17-significant-digit decimals so they round-trip
bit-exactly, with run metadata in leading ``#`` comment lines followed by a
mandatory header row. Runs are deterministic for a fixed configuration:
worker threads only evaluate pure functions and results are assembled in
index order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import asymptotics, deviation, eig, toeplitz
from .errors import ConfigError, NumericalError
from .symbol import (Composite, FourierSeries, PureJump, SymbolSpec,
                     dump_symbol, evaluate, fourier_coeffs, parse_symbol)

MODES = ("compare", "det-asym", "eig", "predict")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def thread_count(n_tasks: int) -> int:
    cap = os.environ.get("TOEPLITZ_SPECTRA_THREADS", "")
    try:
        limit = int(cap) if cap else (os.cpu_count() or 1)
    except ValueError:
        raise ConfigError(f"TOEPLITZ_SPECTRA_THREADS={cap!r} is not an integer")
    return max(1, min(limit, n_tasks))


@dataclass(frozen=True)
class ExperimentConfig:
    symbol: SymbolSpec
    n_list: tuple
    mode: str = "compare"
    quad_points: int = 8192
    exclusion_margin: float | None = None
    output_path: str | None = None
    zeta: complex = 2.0 + 0.0j
    export_matrix: str | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        n_list = tuple(int(n) for n in self.n_list)
        if not n_list:
            raise ConfigError("n_list must be nonempty")
        if any(n < 2 for n in n_list):
            raise ConfigError(f"every n must be >= 2, got {n_list}")
        q = int(self.quad_points)
        if q < 1024 or (q & (q - 1)) != 0:
            raise ConfigError(f"quad_points must be a power of two >= 1024, got {q}")
        object.__setattr__(self, "n_list", n_list)
        object.__setattr__(self, "quad_points", q)

    def quadrature(self) -> deviation.QuadratureConfig:
        return deviation.QuadratureConfig(gl_points=max(256, self.quad_points // 8),
                                          grid_points=self.quad_points)


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    beta: complex | None
    rows: tuple            # (j, theta, lam, image, pred, actual, residual_abs)
    median_residual_mid80: float
    improvement_factor: float

    @property
    def summary(self):
        return {
            "median_residual_mid80": self.median_residual_mid80,
            "improvement_factor": self.improvement_factor,
            "n": self.n,
            "beta": self.beta,
        }


def _symbol_beta(s: SymbolSpec) -> complex | None:
    if isinstance(s, PureJump):
        return s.beta
    if isinstance(s, Composite) and s.jump is not None:
        return s.jump.beta
    return None


def build_section(s: SymbolSpec, n: int, quad_points: int) -> toeplitz.ToeplitzMatrix:
    """T_n(a) with coefficients from the closed forms or an FFT-grade grid.

    An explicit Fourier series feeds build() directly (zero-padded outside
    its support); other kinds go through coefficient extraction.
    """
    if isinstance(s, FourierSeries):
        return toeplitz.build(s, n)
    n_quad = max(quad_points, 4 * (2 * n + 2))
    n_quad = 1 << int(np.ceil(np.log2(n_quad)))
    coeffs = fourier_coeffs(s, (-(n - 1), n - 1), n_quad=n_quad)
    return toeplitz.build(coeffs, n)


def predict_sweep(s: SymbolSpec, thetas, n: int,
                  quad: deviation.QuadratureConfig,
                  exclusion_margin: float | None = None):
    """predict_deviation at every angle, parallel over angles, ordered output."""
    def one(theta):
        return deviation.predict_deviation(s, float(theta), n, quad,
                                           exclusion_margin=exclusion_margin)

    workers = thread_count(len(thetas))
    if workers == 1:
        return [one(t) for t in thetas]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, thetas))


def run_compare_single(cfg: ExperimentConfig, n: int) -> ComparisonReport:
    T = build_section(cfg.symbol, n, cfg.quad_points)
    if cfg.export_matrix:
        toeplitz.to_csv(T, cfg.export_matrix)
    spec = eig.eigenvalues(T)
    matched = eig.match_to_grid(spec, cfg.symbol, n)
    image = np.asarray(evaluate(cfg.symbol, matched.thetas), dtype=complex)
    preds = predict_sweep(cfg.symbol, matched.thetas, n, cfg.quadrature(),
                          cfg.exclusion_margin)
    rows = []
    for j in range(n):
        lam = matched.lambdas[j]
        actual = lam - image[j]
        pred = preds[j].delta_a
        rows.append((j + 1, float(matched.thetas[j]), complex(lam),
                     complex(image[j]), complex(pred), complex(actual),
                     float(abs(actual - pred))))
    lo, hi = n // 10, n - n // 10
    mid = rows[lo:hi] if hi > lo else rows
    res = np.array([r[6] for r in mid])
    raw = np.array([abs(r[5]) for r in mid])
    med_res = float(np.median(res))
    factor = float(np.median(raw) / med_res) if med_res > 0 else np.inf
    return ComparisonReport(n=n, beta=_symbol_beta(cfg.symbol), rows=tuple(rows),
                            median_residual_mid80=med_res, improvement_factor=factor)


def run_compare(cfg: ExperimentConfig):
    """One ComparisonReport per entry of n_list, deterministic order."""
    return [run_compare_single(cfg, n) for n in cfg.n_list]


def write_compare_csv(report: ComparisonReport, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# toeplitz-spectra compare report\n")
        fh.write(f"# n {report.n}\n")
        if report.beta is not None:
            fh.write(f"# beta_re {_fmt(report.beta.real)}\n")
            fh.write(f"# beta_im {_fmt(report.beta.imag)}\n")
        fh.write(f"# median_residual_mid80 {_fmt(report.median_residual_mid80)}\n")
        fh.write(f"# improvement_factor {_fmt(report.improvement_factor)}\n")
        fh.write("# note: uniform density fixes the grid angles only to leading"
                 " order; middle-80% statistics exclude the endpoint regions\n")
        fh.write("j,theta_j,lambda_re,lambda_im,image_re,image_im,pred_dev_re,"
                 "pred_dev_im,actual_dev_re,actual_dev_im,residual_abs\n")
        for (j, th, lam, img, pred, act, res) in report.rows:
            fh.write(",".join([str(j), _fmt(th), _fmt(lam.real), _fmt(lam.imag),
                               _fmt(img.real), _fmt(img.imag), _fmt(pred.real),
                               _fmt(pred.imag), _fmt(act.real), _fmt(act.imag),
                               _fmt(res)]) + "\n")


def compare_output_path(base: str, n: int, multiple: bool) -> str:
    if not multiple:
        return base
    root, ext = os.path.splitext(base)
    return f"{root}_n{n}{ext or '.csv'}"


def run_det_validation(cfg: ExperimentConfig):
    """Exact vs predicted log det(zeta - T_n) per n, plus a log n slope fit.

    Returns (rows, slope, beta_zeta) where rows are
    (n, logdet_exact, logdet_pred, abs_err) and slope is the fitted log n
    coefficient of the wrapped residual log det - n H - E0.
    """
    s, zeta = cfg.symbol, cfg.zeta
    h, beta_z, e0, min_abs = asymptotics.fh_constants(
        lambda p: zeta - evaluate(s, p))
    if min_abs < 1e-6 * max(abs(zeta), 1.0):
        raise NumericalError("zeta too near the symbol image")
    rows = []
    resids = []
    for n in cfg.n_list:
        T = build_section(s, n, cfg.quad_points)
        ld = toeplitz.log_det(toeplitz.shifted(T, zeta))
        pred = n * h - beta_z ** 2 * np.log(n) + e0
        r = ld - n * h - e0
        r = complex(r.real, (r.imag + np.pi) % (2 * np.pi) - np.pi)
        resids.append(r)
        err = abs(complex(ld.real - pred.real,
                          (ld.imag - pred.imag + np.pi) % (2 * np.pi) - np.pi))
        rows.append((n, ld, complex(pred), float(err)))
    ns = np.array(cfg.n_list, dtype=float)
    design = np.column_stack([np.ones_like(ns), np.log(ns)])
    coef, *_ = np.linalg.lstsq(design, np.array(resids), rcond=None)
    return rows, complex(coef[1]), complex(beta_z)


def write_det_csv(rows, slope, beta_z, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# toeplitz-spectra determinant-asymptotics report\n")
        fh.write(f"# logn_coefficient_re {_fmt(slope.real)}\n")
        fh.write(f"# logn_coefficient_im {_fmt(slope.imag)}\n")
        fh.write(f"# beta_zeta_re {_fmt(beta_z.real)}\n")
        fh.write(f"# beta_zeta_im {_fmt(beta_z.imag)}\n")
        fh.write("n,logdet_exact_re,logdet_exact_im,logdet_pred_re,"
                 "logdet_pred_im,abs_err\n")
        for (n, ld, pred, err) in rows:
            fh.write(",".join([str(n), _fmt(ld.real), _fmt(ld.imag),
                               _fmt(pred.real), _fmt(pred.imag), _fmt(err)]) + "\n")


def run_eig(cfg: ExperimentConfig, n: int | None = None):
    n = n or cfg.n_list[0]
    T = build_section(cfg.symbol, n, cfg.quad_points)
    if cfg.export_matrix:
        toeplitz.to_csv(T, cfg.export_matrix)
    return eig.eigenvalues(T)


def write_eig_csv(spec: eig.Spectrum, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("index,lambda_re,lambda_im\n")
        for i, lam in enumerate(spec.eigenvalues):
            fh.write(f"{i},{_fmt(lam.real)},{_fmt(lam.imag)}\n")


def run_predict(cfg: ExperimentConfig, n: int | None = None):
    n = n or cfg.n_list[0]
    thetas = eig.theta_grid(n)
    preds = predict_sweep(cfg.symbol, thetas, n, cfg.quadrature(),
                          cfg.exclusion_margin)
    return preds


def write_predict_csv(preds, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("theta,da_re,da_im,logn_part_re,logn_part_im,omega_re,"
                 "omega_im,dbeta2_re,dbeta2_im,endpoint_flag\n")
        for pr in preds:
            n, tang = pr.n, pr.tangent
            om = pr.inv_n_part * n / tang
            db2 = -pr.log_n_part * n / (tang * np.log(n))
            fh.write(",".join([
                _fmt(pr.theta), _fmt(pr.delta_a.real), _fmt(pr.delta_a.imag),
                _fmt(pr.log_n_part.real), _fmt(pr.log_n_part.imag),
                _fmt(om.real), _fmt(om.imag), _fmt(db2.real), _fmt(db2.imag),
                str(int(pr.endpoint_flag)),
            ]) + "\n")


# ---------------------------------------------------------------------------
# config files: symbol format plus run fields
# ---------------------------------------------------------------------------

_RUN_KEYS = ("n_list", "quad_points", "exclusion_margin", "mode", "out",
             "zeta_re", "zeta_im")


def parse_config(text: str) -> dict:
    """Split a config document into symbol lines and run fields."""
    symbol_lines = []
    run: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key = line.split()[0]
        if key in _RUN_KEYS:
            val = line.split(None, 1)[1] if len(line.split(None, 1)) > 1 else ""
            run[key] = val.strip()
        else:
            symbol_lines.append(line)
    out: dict = {}
    if symbol_lines:
        out["symbol"] = parse_symbol("\n".join(symbol_lines))
    if "n_list" in run:
        try:
            out["n_list"] = tuple(int(x) for x in run["n_list"].split(",") if x)
        except ValueError:
            raise ConfigError(f"bad n_list: {run['n_list']!r}")
    if "quad_points" in run:
        out["quad_points"] = int(run["quad_points"])
    if "exclusion_margin" in run:
        out["exclusion_margin"] = float(run["exclusion_margin"])
    if "mode" in run:
        out["mode"] = run["mode"]
    if "out" in run:
        out["output_path"] = run["out"]
    if "zeta_re" in run or "zeta_im" in run:
        out["zeta"] = complex(float(run.get("zeta_re", 0.0)),
                              float(run.get("zeta_im", 0.0)))
    return out


def load_config(path) -> dict:
    with open(path, "r", encoding="ascii") as fh:
        return parse_config(fh.read())


def dump_config(cfg: ExperimentConfig) -> str:
    lines = [dump_symbol(cfg.symbol).rstrip("\n")]
    lines.append(f"mode {cfg.mode}")
    lines.append("n_list " + ",".join(str(n) for n in cfg.n_list))
    lines.append(f"quad_points {cfg.quad_points}")
    if cfg.exclusion_margin is not None:
        lines.append(f"exclusion_margin {_fmt(cfg.exclusion_margin)}")
    if cfg.output_path:
        lines.append(f"out {cfg.output_path}")
    lines.append(f"zeta_re {_fmt(cfg.zeta.real)}")
    lines.append(f"zeta_im {_fmt(cfg.zeta.imag)}")
    return "\n".join(lines) + "\n"
