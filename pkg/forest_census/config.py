import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

DEFAULT_CENSUS_MAX_EDGES = 22
DEFAULT_CONSTRUCTION_MAX_VERTICES = 8


@dataclass
class Config:
    census_max_edges: int = DEFAULT_CENSUS_MAX_EDGES
    construction_max_vertices: int = DEFAULT_CONSTRUCTION_MAX_VERTICES
    log_level: int = logging.INFO


def _env_bound(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise RuntimeError(f"{name} must be non-negative, got {value}")
    return value


def load_config() -> Config:
    # Load variables from a local .env file if present; real environment wins
    load_dotenv(override=False)

    log_level = os.getenv("LOG_LEVEL", "INFO").upper()

    return Config(
        census_max_edges=_env_bound("FOREST_CENSUS_MAX_EDGES", DEFAULT_CENSUS_MAX_EDGES),
        construction_max_vertices=_env_bound("FOREST_CENSUS_MAX_VERTICES", DEFAULT_CONSTRUCTION_MAX_VERTICES),
        log_level=getattr(logging, log_level, logging.INFO),
    )
