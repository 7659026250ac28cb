"""Test the planner configuration profiles."""

import logging
from pathlib import Path

import pytest

from causalplan.config import PlannerConfig
from causalplan.utils import InternalError


def test_defaults() -> None | AssertionError:
    """The default run is optimal with the fn transform and lazy persistence."""
    config = PlannerConfig()
    assert (config.mode, config.transform, config.persistence) == ("optimal", "fn", "propagator")
    assert config.time_limit == 1800.0
    assert config.window == 50
    assert config.hm_m == 2


def test_from_yaml(tmp_path: Path) -> None | AssertionError:
    """A profile sets a subset of the options."""
    profile = tmp_path / "profile.yaml"
    profile.write_text("mode: satisficing\ntime_limit: 60\nseed: 3\n")
    config = PlannerConfig.from_yaml(profile)
    logging.info(config.model_dump_json())
    assert config.mode == "satisficing"
    assert config.time_limit == 60.0
    assert config.seed == 3
    assert config.transform == "fn"


def test_bad_profile(tmp_path: Path) -> None | AssertionError:
    """Unknown options and out-of-range values are refused."""
    profile = tmp_path / "profile.yaml"
    profile.write_text("horizon: 3\n")
    with pytest.raises(InternalError):
        PlannerConfig.from_yaml(profile)
    profile.write_text("time_limit: -1\n")
    with pytest.raises(InternalError):
        PlannerConfig.from_yaml(profile)
    profile.write_text("- optimal\n")
    with pytest.raises(InternalError):
        PlannerConfig.from_yaml(profile)


def test_merged() -> None | AssertionError:
    """Overrides replace profile values and None keeps them."""
    base = PlannerConfig(mode="satisficing", window=10)
    config = base.merged(mode=None, window=20, persistence="eager")
    assert config.mode == "satisficing"
    assert config.window == 20
    assert config.persistence == "eager"
    assert base.window == 10
