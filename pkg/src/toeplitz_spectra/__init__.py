"""Eigenvalue deviation asymptotics for Toeplitz matrices with jump symbols."""

from ._kernels import NUMBA_ENABLED
from .asymptotics import (EULER_GAMMA, FHPrediction, SzegoConstants,
                          appendix_identity_check, e0beta, e_const_integral,
                          e_const_sum, fh_constants, fh_logdet_prediction,
                          h_const, ln_barnes_g, log_barnes_gg, szego_constants)
from .deviation import (DeviationPrediction, JumpData, QuadratureConfig,
                        endpoint_asymptotic, f_closed_form_pure, f_continuous,
                        omega, predict_deviation, synthetic_jump_data)
from .eig import MatchedSpectrum, Spectrum, eigenvalues, match_to_grid, theta_grid
from .errors import (BranchError, ConfigError, DegenerateJumpError,
                     EigenConvergenceError, MatchingError, NumericalError,
                     QuadratureError, SingularMatrixError, ToeplitzSpectraError)
from .harness import (ComparisonReport, ExperimentConfig, run_compare,
                      run_det_validation, run_eig, run_predict)
from .symbol import (Composite, FourierSeries, Modulus, PureJump, SymbolSpec,
                     continuous_log, dump_symbol, evaluate, fourier_coeffs,
                     hilbert_transform, load_symbol, parse_symbol, save_symbol,
                     winding)
from .toeplitz import ToeplitzMatrix, build, log_det, shifted

__version__ = "0.1.0"

__all__ = [
    "BranchError", "ComparisonReport", "Composite", "ConfigError",
    "DegenerateJumpError", "DeviationPrediction", "EULER_GAMMA",
    "EigenConvergenceError", "ExperimentConfig", "FHPrediction",
    "FourierSeries", "JumpData", "MatchedSpectrum", "MatchingError", "Modulus",
    "NUMBA_ENABLED", "NumericalError", "PureJump", "QuadratureConfig",
    "QuadratureError", "SingularMatrixError", "Spectrum", "SymbolSpec",
    "SzegoConstants", "ToeplitzMatrix", "ToeplitzSpectraError",
    "appendix_identity_check", "build", "continuous_log", "dump_symbol",
    "e0beta", "e_const_integral", "e_const_sum", "eigenvalues",
    "endpoint_asymptotic", "evaluate", "f_closed_form_pure", "f_continuous",
    "fh_constants", "fh_logdet_prediction", "fourier_coeffs", "h_const",
    "hilbert_transform", "ln_barnes_g", "load_symbol", "log_barnes_gg",
    "log_det", "match_to_grid", "omega", "parse_symbol", "predict_deviation",
    "run_compare", "run_det_validation", "run_eig", "run_predict",
    "save_symbol", "shifted", "synthetic_jump_data", "szego_constants",
    "theta_grid", "winding",
]
