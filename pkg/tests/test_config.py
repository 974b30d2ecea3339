"""Unit tests for config parsing, formatting, and validation."""

import pytest

from ftfreq.config import (EstimatorSettings, RunConfig, ScenarioConfig,
                           config_warnings, format_config, parse_config,
                           validate_config, with_seed)
from ftfreq.errors import ConfigError
from ftfreq.mixing import DremConfig
from ftfreq.regression import ModelConfig
from ftfreq.scenarios import (BUILTIN_NAMES, builtin_scenario,
                              with_reset_times)
from ftfreq.signals import UniformDisturbance

MINIMAL = """
# two-tone demo
signal.harmonic.1.amplitude = 1.0
signal.harmonic.1.frequency = 2.0
signal.harmonic.1.phase = 0.0
signal.harmonic.2.amplitude = 1.0
signal.harmonic.2.frequency = 3.0
signal.harmonic.2.phase = 1.5707963267948966
signal.disturbance.kind = none
model.n = 2
model.h = 0.1
model.omega_min = 0.5
model.omega_max = 5.5
drem.d = 0.13
drem.epsilon = 100.0
estimator.gamma = 0.005 0.005
estimator.omega0 = 2.0 5.0
estimator.t_ft = 5.0
run.duration = 8.0
"""


class TestParsing:
    def test_minimal_config_parses(self):
        cfg = parse_config(MINIMAL)
        assert cfg.model.n == 2
        assert cfg.model.h == 0.1
        assert cfg.signal is not None
        assert len(cfg.signal.harmonics) == 2
        assert cfg.estimator.gamma == (0.005, 0.005)
        assert cfg.run.sample_period == 0.001  # default
        assert cfg.output.trace_path == "trace.csv"
        assert validate_config(cfg) == []

    def test_unknown_key_rejected_with_name(self):
        with pytest.raises(ConfigError) as info:
            parse_config(MINIMAL + "\nmodel.hh = 3\n")
        assert any("model.hh" in v for v in info.value.violations)

    def test_malformed_line_reports_line_number(self):
        with pytest.raises(ConfigError) as info:
            parse_config("model.n\n")
        assert any(":1:" in v for v in info.value.violations)

    def test_bad_number_reported(self):
        with pytest.raises(ConfigError) as info:
            parse_config(MINIMAL.replace("model.h = 0.1", "model.h = fast"))
        assert any("model.h" in v for v in info.value.violations)

    def test_multiple_errors_collected_at_once(self):
        text = MINIMAL.replace("model.h = 0.1", "model.h = fast")
        text = text.replace("drem.epsilon = 100.0", "drem.epsilon = -1.0")
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert len(info.value.violations) >= 2

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError):
            parse_config(MINIMAL + "\nmodel.n = 3\n")

    def test_signal_section_optional(self):
        text = "\n".join(line for line in MINIMAL.splitlines()
                         if not line.startswith("signal."))
        cfg = parse_config(text)
        assert cfg.signal is None
        assert validate_config(cfg) == []

    def test_round_trip_through_format(self):
        for name in BUILTIN_NAMES:
            cfg = builtin_scenario(name)
            assert parse_config(format_config(cfg)) == cfg

    def test_round_trip_with_schedule_and_resets(self):
        cfg = with_reset_times(builtin_scenario("step-change"), [30.0])
        assert parse_config(format_config(cfg)) == cfg

    def test_uniform_disturbance_round_trip(self):
        cfg = builtin_scenario("uniform-noise")
        parsed = parse_config(format_config(cfg))
        assert isinstance(parsed.signal.disturbance, UniformDisturbance)
        assert parsed.signal.disturbance.seed == cfg.signal.disturbance.seed


class TestValidation:
    def base(self, **overrides):
        cfg = parse_config(MINIMAL)
        return cfg if not overrides else cfg.__class__(
            **{**cfg.__dict__, **overrides})

    def test_h_bound_accept_and_reject(self):
        ok = ModelConfig(n=2, h=0.1, omega_min=0.5, omega_max=10.0)
        cfg = self.base(model=ok)
        assert all("model.h" not in v or "multiple" in v for v in validate_config(cfg))
        bad = ModelConfig(n=2, h=0.2, omega_min=0.5, omega_max=10.0)
        cfg = self.base(model=bad)
        assert any("pi/(2*omega_max)" in v for v in validate_config(cfg))

    def test_grid_alignment_checked(self):
        cfg = self.base(drem=DremConfig(d=0.1305, epsilon=100.0))
        assert any("drem.d" in v for v in validate_config(cfg))
        ok = self.base(drem=DremConfig(d=0.13, epsilon=100.0))
        assert validate_config(ok) == []

    def test_t_ft_lower_bound_named(self):
        cfg = self.base(estimator=EstimatorSettings(
            gamma=(0.005, 0.005), omega0=(2.0, 5.0), t_ft=0.1))
        violations = validate_config(cfg)
        assert any("0.46" in v for v in violations)

    def test_duration_must_exceed_t_ft(self):
        cfg = self.base(run=RunConfig(sample_period=0.001, duration=4.0))
        assert any("duration" in v for v in validate_config(cfg))

    def test_out_of_band_signal_frequency(self):
        cfg = parse_config(MINIMAL.replace(
            "signal.harmonic.2.frequency = 3.0",
            "signal.harmonic.2.frequency = 9.0"))
        assert any("outside band" in v for v in validate_config(cfg))

    def test_out_of_band_initial_guess(self):
        cfg = self.base(estimator=EstimatorSettings(
            gamma=(0.005, 0.005), omega0=(2.0, 9.0), t_ft=5.0))
        assert any("omega0" in v for v in validate_config(cfg))

    def test_reset_times_inside_duration(self):
        cfg = with_reset_times(self.base(), [9.0])
        assert any("reset_times" in v for v in validate_config(cfg))

    def test_violations_are_collected_together(self):
        cfg = self.base(
            model=ModelConfig(n=2, h=0.2, omega_min=0.5, omega_max=10.0),
            drem=DremConfig(d=0.1305, epsilon=100.0),
            estimator=EstimatorSettings(gamma=(0.005, 0.005),
                                        omega0=(2.0, 5.0), t_ft=0.1))
        assert len(validate_config(cfg)) >= 3

    def test_mismatched_harmonic_count_warns_not_fails(self):
        text = "\n".join(line for line in MINIMAL.splitlines()
                         if not line.startswith("signal.harmonic.2"))
        cfg = parse_config(text)
        assert validate_config(cfg) == []
        assert any("excitation will be deficient" in w for w in config_warnings(cfg))


class TestBuiltinScenarios:
    def test_all_builtins_validate(self):
        for name in BUILTIN_NAMES:
            cfg = builtin_scenario(name)
            assert validate_config(cfg) == [], name

    def test_published_tunings_noiseless(self):
        cfg = builtin_scenario("noiseless-2h")
        assert cfg.model.h == 0.1
        assert cfg.drem.d == 0.13
        assert cfg.drem.epsilon == 100.0
        assert cfg.estimator.gamma == (0.005, 0.005)
        assert cfg.estimator.omega0 == (2.0, 5.0)
        freqs = sorted(h.frequency for h in cfg.signal.harmonics)
        assert freqs == [2.0, 3.0]

    def test_step_change_switches_at_30s(self):
        cfg = builtin_scenario("step-change")
        assert cfg.signal.schedule[0].switch_time == 30.0
        before = sorted(h.frequency for h in cfg.signal.harmonics)
        after = sorted(h.frequency for h in cfg.signal.schedule[0].harmonics)
        assert before == [1.8, 3.2]
        assert after == [2.0, 3.0]

    def test_unknown_name_rejected(self):
        with pytest.raises(ConfigError):
            builtin_scenario("chirp")

    def test_with_seed_override(self):
        cfg = builtin_scenario("uniform-noise")
        replaced, applied = with_seed(cfg, 99)
        assert applied
        assert replaced.signal.disturbance.seed == 99
        clean = builtin_scenario("noiseless-2h")
        same, applied = with_seed(clean, 99)
        assert not applied
        assert same == clean
