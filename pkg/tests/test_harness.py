import os
import subprocess
import sys

import numpy as np
import pytest

from toeplitz_spectra.errors import ConfigError, NumericalError
from toeplitz_spectra.harness import (ComparisonReport, ExperimentConfig,
                                      compare_output_path, dump_config,
                                      load_config, parse_config, run_compare,
                                      run_det_validation, run_eig, run_predict,
                                      write_compare_csv, write_det_csv,
                                      write_eig_csv, write_predict_csv)
from toeplitz_spectra.symbol import FourierSeries, PureJump, evaluate, fourier_coeffs

BETA_FIG = 0.8 + 1j / 3


def smooth_exp_symbol(gamma=0.3):
    log_b = FourierSeries({1: gamma, -1: gamma})
    return fourier_coeffs(lambda p: np.exp(evaluate(log_b, p)), (-40, 40),
                          n_quad=4096)


class TestConfig:
    def test_empty_n_list_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(symbol=PureJump(0.5), n_list=())

    def test_tiny_n_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(symbol=PureJump(0.5), n_list=(1,))

    def test_quad_points_power_of_two(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(symbol=PureJump(0.5), n_list=(8,), quad_points=1000)
        with pytest.raises(ConfigError):
            ExperimentConfig(symbol=PureJump(0.5), n_list=(8,), quad_points=512)

    def test_bad_mode_rejected(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(symbol=PureJump(0.5), n_list=(8,), mode="dance")

    def test_config_text_roundtrip(self):
        cfg = ExperimentConfig(symbol=PureJump(BETA_FIG), n_list=(20, 80),
                               mode="compare", quad_points=2048,
                               output_path="out.csv", zeta=2.0 + 0.5j)
        parsed = parse_config(dump_config(cfg))
        cfg2 = ExperimentConfig(**parsed)
        assert cfg2.mode == "compare"
        assert cfg2.symbol == cfg.symbol or cfg2.symbol.beta == cfg.symbol.beta
        assert cfg2.n_list == cfg.n_list
        assert cfg2.quad_points == cfg.quad_points
        assert cfg2.output_path == cfg.output_path
        assert cfg2.zeta == cfg.zeta

    def test_config_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("kind purejump\nbeta_re 0.5\nbeta_im 0\np0 0\n"
                        "n_list 16,32\nquad_points 2048\nmode compare\n")
        loaded = load_config(path)
        assert loaded["n_list"] == (16, 32)
        assert loaded["quad_points"] == 2048
        assert loaded["symbol"].beta == 0.5


class TestCompare:
    def test_trivial_n2_completes(self):
        cfg = ExperimentConfig(symbol=PureJump(BETA_FIG), n_list=(2,),
                               quad_points=1024)
        rep = run_compare(cfg)[0]
        assert len(rep.rows) == 2

    def test_improvement_factor_above_one(self):
        cfg = ExperimentConfig(symbol=PureJump(BETA_FIG), n_list=(64,),
                               quad_points=2048)
        rep = run_compare(cfg)[0]
        assert rep.improvement_factor > 1.0

    def test_deterministic_output(self, tmp_path):
        cfg = ExperimentConfig(symbol=PureJump(BETA_FIG), n_list=(24,),
                               quad_points=1024)
        paths = []
        for tag in ("a", "b"):
            rep = run_compare(cfg)[0]
            path = tmp_path / f"rep_{tag}.csv"
            write_compare_csv(rep, path)
            paths.append(path.read_bytes())
        assert paths[0] == paths[1]

    def test_csv_values_roundtrip(self, tmp_path):
        cfg = ExperimentConfig(symbol=PureJump(BETA_FIG), n_list=(16,),
                               quad_points=1024)
        rep = run_compare(cfg)[0]
        path = tmp_path / "rep.csv"
        write_compare_csv(rep, path)
        lines = [l for l in path.read_text().splitlines()
                 if l and not l.startswith("#")]
        header = lines[0].split(",")
        assert header[0] == "j" and header[-1] == "residual_abs"
        first = lines[1].split(",")
        assert float(first[2]) == rep.rows[0][2].real  # bit-exact round-trip

    def test_summary_fields(self):
        cfg = ExperimentConfig(symbol=PureJump(BETA_FIG), n_list=(16,),
                               quad_points=1024)
        rep = run_compare(cfg)[0]
        assert rep.summary["n"] == 16
        assert rep.summary["beta"] == BETA_FIG

    def test_output_path_suffixing(self):
        assert compare_output_path("r.csv", 20, multiple=True) == "r_n20.csv"
        assert compare_output_path("r.csv", 20, multiple=False) == "r.csv"


class TestDetValidation:
    def test_smooth_symbol_slope_near_zero(self):
        cfg = ExperimentConfig(symbol=smooth_exp_symbol(), mode="det-asym",
                               n_list=(16, 32, 64), zeta=3.0 + 0.5j)
        rows, slope, beta_z = run_det_validation(cfg)
        assert abs(beta_z) < 1e-9
        assert abs(slope) < 1e-6
        assert all(err < 1e-8 for (_, _, _, err) in rows)

    def test_pure_jump_slope_matches_exponent(self):
        cfg = ExperimentConfig(symbol=PureJump(BETA_FIG), mode="det-asym",
                               n_list=(64, 128, 256), zeta=2.0)
        rows, slope, beta_z = run_det_validation(cfg)
        assert slope == pytest.approx(-beta_z ** 2, rel=0.05)

    def test_zeta_on_image_raises(self):
        cfg = ExperimentConfig(symbol=PureJump(0.5), mode="det-asym",
                               n_list=(16,), zeta=1.0)
        with pytest.raises(NumericalError):
            run_det_validation(cfg)

    def test_det_csv(self, tmp_path):
        cfg = ExperimentConfig(symbol=PureJump(0.5), mode="det-asym",
                               n_list=(16, 32), zeta=2.0)
        rows, slope, beta_z = run_det_validation(cfg)
        path = tmp_path / "det.csv"
        write_det_csv(rows, slope, beta_z, path)
        lines = path.read_text().splitlines()
        header = [l for l in lines if not l.startswith("#")][0]
        assert header == ("n,logdet_exact_re,logdet_exact_im,"
                          "logdet_pred_re,logdet_pred_im,abs_err")


class TestEigPredict:
    def test_eig_csv(self, tmp_path):
        cfg = ExperimentConfig(symbol=PureJump(BETA_FIG), n_list=(12,),
                               mode="eig", quad_points=1024)
        spec = run_eig(cfg)
        path = tmp_path / "eigs.csv"
        write_eig_csv(spec, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "index,lambda_re,lambda_im"
        assert len(lines) == 13

    def test_predict_csv_schema_and_flags(self, tmp_path):
        cfg = ExperimentConfig(symbol=PureJump(BETA_FIG), n_list=(16,),
                               mode="predict", quad_points=1024)
        preds = run_predict(cfg)
        path = tmp_path / "pred.csv"
        write_predict_csv(preds, path)
        lines = path.read_text().splitlines()
        assert lines[0] == ("theta,da_re,da_im,logn_part_re,logn_part_im,"
                            "omega_re,omega_im,dbeta2_re,dbeta2_im,endpoint_flag")
        flags = [int(l.split(",")[-1]) for l in lines[1:]]
        assert flags[0] == 1 and flags[len(flags) // 2] == 0

    def test_predict_dbeta2_column_consistent(self, tmp_path):
        cfg = ExperimentConfig(symbol=PureJump(0.5), n_list=(16,),
                               mode="predict", quad_points=1024)
        preds = run_predict(cfg)
        path = tmp_path / "pred.csv"
        write_predict_csv(preds, path)
        row = path.read_text().splitlines()[1 + 8].split(",")
        theta = float(row[0])
        from toeplitz_spectra.deviation import f_continuous
        jd = f_continuous(PureJump(0.5), theta)
        assert complex(float(row[7]), float(row[8])) == pytest.approx(
            jd.delta_beta_sq, abs=1e-9)


class TestThreads:
    def test_thread_cap_env(self, monkeypatch):
        monkeypatch.setenv("TOEPLITZ_SPECTRA_THREADS", "1")
        cfg = ExperimentConfig(symbol=PureJump(BETA_FIG), n_list=(8,),
                               quad_points=1024)
        rep = run_compare(cfg)[0]
        assert len(rep.rows) == 8

    def test_bad_thread_env_rejected(self, monkeypatch):
        monkeypatch.setenv("TOEPLITZ_SPECTRA_THREADS", "many")
        from toeplitz_spectra.harness import thread_count
        with pytest.raises(ConfigError):
            thread_count(4)


class TestCLI:
    def run_cli(self, *args, cwd=None):
        return subprocess.run([sys.executable, "-m", "toeplitz_spectra.cli",
                               *args], capture_output=True, text=True, cwd=cwd)

    def test_compare_success_exit_zero(self, tmp_path):
        out = tmp_path / "rep.csv"
        r = self.run_cli("compare", "--beta-re", "0.8", "--beta-im",
                         "0.3333333333333333", "--n", "12", "--quad-points",
                         "1024", "--out", str(out))
        assert r.returncode == 0, r.stderr
        assert out.exists()
        assert "improvement_factor" in r.stdout

    def test_config_error_exit_two(self):
        r = self.run_cli("compare", "--beta-re", "0.5", "--n", "12",
                         "--quad-points", "1000")
        assert r.returncode == 2
        assert "config error" in r.stderr

    def test_numerical_error_exit_three(self):
        r = self.run_cli("det-asym", "--beta-re", "0.5", "--zeta-re", "1.0",
                         "--zeta-im", "0.0", "--n-list", "16")
        assert r.returncode == 3
        assert "numerical failure" in r.stderr

    def test_missing_symbol_exit_two(self):
        r = self.run_cli("eig", "--n", "8")
        assert r.returncode == 2

    def test_symbol_file_and_predict(self, tmp_path):
        sym = tmp_path / "sym.txt"
        sym.write_text("kind purejump\nbeta_re 0.5\nbeta_im 0\np0 0\n")
        out = tmp_path / "pred.csv"
        r = self.run_cli("predict", "--symbol", str(sym), "--n", "16",
                         "--quad-points", "1024", "--out", str(out))
        assert r.returncode == 0, r.stderr
        assert out.read_text().startswith("theta,")

    def test_det_asym_stdout(self):
        r = self.run_cli("det-asym", "--beta-re", "0.5", "--zeta-re", "2.0",
                         "--n-list", "16,32")
        assert r.returncode == 0, r.stderr
        assert "logn coefficient" in r.stdout
