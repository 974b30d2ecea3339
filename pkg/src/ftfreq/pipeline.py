"""Sample-by-sample assembly of the full estimation chain.

measurement -> delay line -> regression (psi, phi) -> delayed extension ->
adjugate mixing -> per-parameter gradient + finite-time extraction ->
frequency recovery. One Pipeline instance owns one estimation session.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .delay_line import TappedDelayLine
from .errors import NumericFault
from .estimator import (EstimatorConfig, EstimatorState, finite_time_estimate,
                        reset_estimator, step_gradient)
from .mixing import DremConfig, RegressorExtender, mix
from .recovery import DEFAULT_IMAG_TOL, recover_frequencies
from .regression import ModelConfig, sample_regression, steps_per_delay


@dataclass(slots=True)
class StepResult:
    """Everything the harness logs for one processed sample."""

    time: float
    y: float
    delta: float
    theta_hat: tuple[float, ...]
    theta_ft: tuple[float, ...] | None
    omega_grad: tuple[float, ...]
    omega_ft: tuple[float, ...] | None


class Pipeline:
    """Drives one estimation session over a uniform sample stream.

    The frequency band of the model config doubles as the projection range
    for recovered estimates. The raw gradient estimates are recovered at
    every step with no imaginary-part limit (transients can wander through
    complex root territory); the finite-time estimate is recovered once, at
    extraction, under the configured tolerance.
    """

    def __init__(self, model: ModelConfig, drem: DremConfig,
                 estimator: EstimatorConfig, sample_period: float,
                 imag_tol: float = DEFAULT_IMAG_TOL):
        self.model = model
        self.drem = drem
        self.estimator_cfg = estimator
        self.sample_period = sample_period
        self.imag_tol = imag_tol
        steps_h = steps_per_delay(model.h, sample_period, "model.h")
        self._line = TappedDelayLine(2 * model.n * steps_h, sample_period)
        self._extender = RegressorExtender(model.n, drem.d, sample_period)
        self.state = EstimatorState(estimator)
        self._bounds = (model.omega_min, model.omega_max)
        self._omega_ft: tuple[float, ...] | None = None
        self._primed = False

    @property
    def warmup_time(self) -> float:
        """Seconds of history before mixed samples become warm."""
        return 2 * self.model.n * self.model.h + self.model.n * self.drem.d

    def step(self, t: float, y: float) -> StepResult:
        """Process one measurement sample and report the session outputs."""
        if not math.isfinite(y):
            raise NumericFault(f"non-finite measurement {y} at t = {t}")
        if not self._primed:
            # epochs are measured from the first sample actually processed
            self.state.time = t
            self.state.epoch_start = t
            self._primed = True
        self._line.push(y)
        reg = sample_regression(self._line, self.model, t)
        mixed = mix(self._extender.push(reg), self.drem.epsilon)
        step_gradient(self.state, mixed, self.estimator_cfg, self.sample_period)

        theta_ft = self.state.theta_ft
        if theta_ft is None and self.state.epoch_elapsed() >= self.estimator_cfg.t_ft:
            theta_ft = finite_time_estimate(self.state, self.estimator_cfg)
            if theta_ft is not None:
                self._omega_ft = recover_frequencies(
                    theta_ft, self.model.h, self._bounds, self.imag_tol).omega_hat

        omega_grad = recover_frequencies(
            tuple(self.state.theta_hat), self.model.h, self._bounds,
            imag_tol=math.inf).omega_hat
        return StepResult(
            time=t, y=y, delta=mixed.delta,
            theta_hat=tuple(self.state.theta_hat),
            theta_ft=theta_ft, omega_grad=omega_grad, omega_ft=self._omega_ft)

    def reset(self) -> None:
        """Restart the session mid-stream after an external signal change.

        Flushes all delay history (the pipeline re-warms on post-reset data
        only, with estimator updates gated off meanwhile) and starts a new
        estimation epoch with the current gradient estimate carried over.
        Without a reset the finite-time output deliberately keeps its stale
        extracted value.
        """
        self._line.clear()
        self._extender.clear()
        reset_estimator(self.state)
        self._omega_ft = None
        self._primed = False  # next sample starts the new epoch clock

    @property
    def max_decay_step(self) -> float:
        return self.state.max_decay_step

    @property
    def extracted(self) -> bool:
        return self.state.theta_ft is not None
