"""Shared helpers for driving pipeline stages over generated traces."""

import numpy as np

from ftfreq.delay_line import TappedDelayLine
from ftfreq.mixing import RegressorExtender, mix
from ftfreq.regression import sample_regression
from ftfreq.signals import generate_trace

SAMPLE_PERIOD = 0.001


def mixed_stream(spec, model_cfg, d, epsilon, duration, sample_period=SAMPLE_PERIOD):
    """Yield (k, MixedSample) over a generated trace of the given signal."""
    steps_h = round(model_cfg.h / sample_period)
    line = TappedDelayLine(2 * model_cfg.n * steps_h, sample_period)
    extender = RegressorExtender(model_cfg.n, d, sample_period)
    trace = generate_trace(spec, sample_period, duration)
    for k, y in enumerate(trace.values):
        line.push(y)
        reg = sample_regression(line, model_cfg, k * sample_period)
        yield k, mix(extender.push(reg), epsilon)


def random_distinct_frequencies(rng, n, lo, hi, min_gap=0.05):
    while True:
        freqs = np.sort(rng.uniform(lo, hi, n))
        if n == 1 or np.min(np.diff(freqs)) > min_gap:
            return [float(w) for w in freqs]
