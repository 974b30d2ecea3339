"""Finite-time frequency estimation for multi-sinusoidal signals.

Estimates the n unknown frequencies of a measured sum of sinusoids using
only delayed samples of the measurement: a delay-line regression whose
parameters are signed symmetric functions of cos(omega_i * h), decoupled
into scalar regressions by adjugate mixing of a delay-extended system,
estimated per-parameter by a gradient law, re-estimated in closed form at a
chosen finite time, and mapped back to frequencies through polynomial roots
and arccos.
"""

__version__ = "0.1.0"

from .config import (EstimatorSettings, OutputConfig, RecoverySettings,
                     RunConfig, ScenarioConfig, config_warnings, format_config,
                     load_config, parse_config, validate_config, with_seed)
from .delay_line import TappedDelayLine
from .errors import ConfigError, EstimateNotPhysical, NumericFault
from .estimator import (EstimatorConfig, EstimatorState, excitation_level,
                        finite_time_estimate, reset_estimator, step_gradient)
from .harness import (RunResult, TrajectoryRecord, estimate_from_file,
                      run_scenario)
from .mixing import (DremConfig, ExtendedRegression, MixedSample,
                     RegressorExtender, adjugate, determinant, mix)
from .pipeline import Pipeline, StepResult
from .recovery import (FrequencyEstimate, find_roots, recover_frequencies,
                       roots_to_frequencies, theta_to_polynomial)
from .regression import (ModelConfig, RegressionSample, binomial, compute_phi,
                         compute_psi, sample_regression, true_theta)
from .scenarios import BUILTIN_NAMES, builtin_scenario, with_reset_times
from .signals import (HarmonicDisturbance, HarmonicSpec, SampledTrace,
                      ScheduleStep, SignalSpec, UniformDisturbance,
                      generate_trace, sample_signal)

__all__ = [
    "__version__",
    "BUILTIN_NAMES", "ConfigError", "DremConfig", "EstimateNotPhysical",
    "EstimatorConfig", "EstimatorSettings", "EstimatorState",
    "ExtendedRegression", "FrequencyEstimate", "HarmonicDisturbance",
    "HarmonicSpec", "MixedSample", "ModelConfig", "NumericFault",
    "OutputConfig", "Pipeline", "RecoverySettings", "RegressionSample",
    "RegressorExtender", "RunConfig", "RunResult", "SampledTrace",
    "ScenarioConfig", "ScheduleStep", "SignalSpec", "StepResult",
    "TappedDelayLine", "TrajectoryRecord", "UniformDisturbance",
    "adjugate", "binomial", "builtin_scenario", "compute_phi", "compute_psi",
    "config_warnings", "determinant", "estimate_from_file",
    "excitation_level", "find_roots", "finite_time_estimate", "format_config",
    "generate_trace", "load_config", "mix", "parse_config",
    "recover_frequencies", "reset_estimator", "roots_to_frequencies",
    "run_scenario", "sample_regression", "sample_signal", "step_gradient",
    "theta_to_polynomial", "true_theta", "validate_config", "with_reset_times",
    "with_seed",
]
