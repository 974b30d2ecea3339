"""Regressor extension and mixing: n scalar regressions from one vector one.

The n-th order regression psi = phi . theta is stacked with its own i-fold
d-second delays (i = 1..n) into a square system, then multiplied by the
adjugate of the stacked regressor matrix. Because adj(M) M = det(M) I, the
result decouples into n independent scalar regressions

    mixed_psi_i(t) = delta(t) * theta_i,      delta = det(eps * Phi),

one per unknown, which is what lets each parameter be estimated on its own.
The gain eps rescales the whole stacked system before mixing; with an n x n
stack this multiplies delta and every mixed_psi_i by eps^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .delay_line import TappedDelayLine
from .errors import ConfigError
from .regression import MAX_HARMONICS, RegressionSample, steps_per_delay

# Relative residual above which the LU-based adjugate is declared unreliable
# and recomputed by cofactors (which are exact up to rounding for any M).
_LU_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class DremConfig:
    """Mixing stage tuning: extension delay d and normalization gain."""

    d: float
    epsilon: float

    def __post_init__(self):
        bad = []
        if not (math.isfinite(self.d) and self.d > 0):
            bad.append(f"drem.d must be positive, got {self.d}")
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            bad.append(f"drem.epsilon must be positive, got {self.epsilon}")
        if bad:
            raise ConfigError(bad)


@dataclass(frozen=True)
class ExtendedRegression:
    """Stacked system at one instant: row i holds the regression delayed i*d.

    complete is True once the deepest delayed sample (i = n) is itself valid,
    i.e. t >= 2*n*h + n*d.
    """

    time: float
    psi_delayed: tuple[float, ...]
    phi_rows: tuple[tuple[float, ...], ...]
    complete: bool


@dataclass(frozen=True)
class MixedSample:
    """Decoupled scalar regressions: psi[i] = delta * theta_i on clean data."""

    time: float
    delta: float
    psi: tuple[float, ...]
    warm: bool


class RegressorExtender:
    """Streams RegressionSamples in, ExtendedRegressions out.

    Keeps one delay line per scalar stream (the regressand and each
    regressor component), deep enough for the n-fold d-delay. One instance
    per estimation session; not safe to share across threads.
    """

    def __init__(self, n: int, d: float, sample_period: float):
        if not 1 <= n <= MAX_HARMONICS:
            raise ConfigError(f"extension order must be in 1..{MAX_HARMONICS}, got {n}")
        self.n = n
        self.steps_d = steps_per_delay(d, sample_period, "drem.d")
        depth = n * self.steps_d
        self._psi_line = TappedDelayLine(depth, sample_period)
        self._phi_lines = [TappedDelayLine(depth, sample_period) for _ in range(n)]
        self._pushed = 0
        self._first_valid: int | None = None

    def push(self, sample: RegressionSample) -> ExtendedRegression:
        if len(sample.phi) != self.n:
            raise ConfigError(
                f"regression sample has {len(sample.phi)} components, extender expects {self.n}")
        self._psi_line.push(sample.psi)
        for line, value in zip(self._phi_lines, sample.phi):
            line.push(value)
        if sample.valid and self._first_valid is None:
            self._first_valid = self._pushed
        current = self._pushed
        self._pushed += 1

        psi_delayed = tuple(
            self._psi_line.tap(i * self.steps_d) for i in range(1, self.n + 1))
        phi_rows = tuple(
            tuple(line.tap(i * self.steps_d) for line in self._phi_lines)
            for i in range(1, self.n + 1))
        complete = (self._first_valid is not None
                    and current - self.n * self.steps_d >= self._first_valid)
        return ExtendedRegression(
            time=sample.time, psi_delayed=psi_delayed, phi_rows=phi_rows,
            complete=complete)

    def clear(self) -> None:
        self._psi_line.clear()
        for line in self._phi_lines:
            line.clear()
        self._pushed = 0
        self._first_valid = None


def _minor(rows, drop_row: int, drop_col: int):
    return [
        [row[c] for c in range(len(row)) if c != drop_col]
        for r, row in enumerate(rows) if r != drop_row
    ]


def _det_cofactor(rows) -> float:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    total = 0.0
    sign = 1.0
    for j in range(n):
        total += sign * rows[0][j] * _det_cofactor(_minor(rows, 0, j))
        sign = -sign
    return total


def determinant(matrix) -> float:
    """Determinant of a small dense matrix (cofactors up to 4x4, LU beyond)."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    _check_square(rows, n)
    if n <= 4:
        return _det_cofactor(rows)
    return float(np.linalg.det(np.asarray(rows, dtype=float)))


def _check_square(rows, n):
    if n == 0 or n > MAX_HARMONICS or any(len(r) != n for r in rows):
        raise ConfigError(f"matrix must be square with size 1..{MAX_HARMONICS}")
    for r in rows:
        for x in r:
            if not math.isfinite(x):
                raise ConfigError("matrix entries must be finite")


def _adjugate_cofactor(rows):
    n = len(rows)
    if n == 1:
        return [[1.0]]
    if n == 2:
        (a, b), (c, d) = rows
        return [[d, -b], [-c, a]]
    adj = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sign = -1.0 if (i + j) % 2 else 1.0
            # transposed cofactor matrix
            adj[j][i] = sign * _det_cofactor(_minor(rows, i, j))
    return adj


def adjugate(matrix) -> list[list[float]]:
    """Adjugate satisfying adj(M) M = det(M) I, defined for singular M too.

    Cofactor expansion up to 4x4; det * inverse via LU for larger sizes,
    falling back to cofactors whenever the LU route's residual on the
    defining identity is poor (near-singular M).
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    _check_square(rows, n)
    if n <= 4:
        return _adjugate_cofactor(rows)
    m = np.asarray(rows, dtype=float)
    det = float(np.linalg.det(m))
    try:
        adj = det * np.linalg.inv(m)
    except np.linalg.LinAlgError:
        return _adjugate_cofactor(rows)
    scale = float(np.abs(m).max()) or 1.0
    residual = float(np.abs(adj @ m - det * np.eye(n)).max())
    if not math.isfinite(residual) or residual > _LU_RESIDUAL_TOL * (1.0 + scale) * scale ** n:
        return _adjugate_cofactor(rows)
    return [[float(x) for x in row] for row in adj]


def mix(ext: ExtendedRegression, epsilon: float) -> MixedSample:
    """Mix the stacked system into scalar regressions via the adjugate.

    With the whole stack scaled by epsilon first, delta = eps^n det(Phi) and
    mixed psi = eps^n adj(Phi) psi_delayed (adj(eps M) = eps^(n-1) adj(M)).
    """
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise ConfigError(f"epsilon must be positive, got {epsilon}")
    n = len(ext.psi_delayed)
    scale = epsilon ** n
    if n == 1:
        phi = ext.phi_rows[0][0]
        return MixedSample(
            time=ext.time, delta=scale * phi,
            psi=(scale * ext.psi_delayed[0],), warm=ext.complete)
    if n == 2:
        (a, b), (c, d) = ext.phi_rows
        p1, p2 = ext.psi_delayed
        return MixedSample(
            time=ext.time,
            delta=scale * (a * d - b * c),
            psi=(scale * (d * p1 - b * p2), scale * (a * p2 - c * p1)),
            warm=ext.complete)
    adj = adjugate(ext.phi_rows)
    delta = scale * determinant(ext.phi_rows)
    psi = tuple(
        scale * sum(adj_row[j] * ext.psi_delayed[j] for j in range(n))
        for adj_row in adj)
    return MixedSample(time=ext.time, delta=delta, psi=psi, warm=ext.complete)
