import logging

import pytest

from forest_census.config import (
    DEFAULT_CENSUS_MAX_EDGES,
    DEFAULT_CONSTRUCTION_MAX_VERTICES,
    load_config,
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("FOREST_CENSUS_MAX_EDGES", "FOREST_CENSUS_MAX_VERTICES", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    config = load_config()
    assert config.census_max_edges == DEFAULT_CENSUS_MAX_EDGES == 22
    assert config.construction_max_vertices == DEFAULT_CONSTRUCTION_MAX_VERTICES == 8
    assert config.log_level == logging.INFO


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("FOREST_CENSUS_MAX_EDGES", "12")
    monkeypatch.setenv("FOREST_CENSUS_MAX_VERTICES", " 6 ")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    config = load_config()
    assert config.census_max_edges == 12
    assert config.construction_max_vertices == 6
    assert config.log_level == logging.DEBUG


def test_blank_value_means_default(monkeypatch):
    monkeypatch.setenv("FOREST_CENSUS_MAX_VERTICES", "")
    assert load_config().construction_max_vertices == DEFAULT_CONSTRUCTION_MAX_VERTICES


def test_unknown_log_level_falls_back_to_info(monkeypatch):
    monkeypatch.setenv("LOG_LEVEL", "chatty")
    assert load_config().log_level == logging.INFO


@pytest.mark.parametrize("raw", ["twelve", "-1", "3.5"])
def test_bad_bounds_are_rejected(monkeypatch, raw):
    monkeypatch.setenv("FOREST_CENSUS_MAX_EDGES", raw)
    with pytest.raises(RuntimeError):
        load_config()
