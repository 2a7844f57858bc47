import os
from dataclasses import dataclass, replace
from typing import Optional

from dotenv import load_dotenv

from algebra.errors import ConfigError

# Load environment variables
load_dotenv()

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "data", "fixtures")
FORMATS = ("text", "json")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every command; field None keeps the field an input file declares"""
    field: Optional[int] = None
    bound: int = 8
    catalog_bound: int = 4
    max_candidates: int = 4096
    seed: int = 0
    format: str = "text"
    fixtures_dir: str = FIXTURES_DIR
    log_level: str = "WARNING"


def _int_env(name, default):
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {value!r}")


def _is_prime(n):
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def validate(config):
    """Raise ConfigError on values no command can run with"""
    if config.field is not None and not _is_prime(config.field):
        raise ConfigError(f"Field size must be prime, got {config.field}")
    for name in ("bound", "catalog_bound", "max_candidates"):
        if getattr(config, name) < 1:
            raise ConfigError(f"{name} must be positive, got {getattr(config, name)}")
    if config.format not in FORMATS:
        raise ConfigError(f"Unknown output format {config.format!r}; use one of {', '.join(FORMATS)}")
    if config.log_level.upper() not in LOG_LEVELS:
        raise ConfigError(f"Unknown log level {config.log_level!r}")
    return config


def load_config(**overrides):
    """Environment defaults with CLI overrides on top; None overrides are ignored"""
    config = RunConfig(
        field=_int_env("WORKBENCH_FIELD", None),
        bound=_int_env("WORKBENCH_BOUND", 8),
        catalog_bound=_int_env("WORKBENCH_CATALOG_BOUND", 4),
        max_candidates=_int_env("WORKBENCH_MAX_CANDIDATES", 4096),
        seed=_int_env("WORKBENCH_SEED", 0),
        format=os.getenv("WORKBENCH_FORMAT", "text"),
        fixtures_dir=os.getenv("WORKBENCH_FIXTURES_DIR") or FIXTURES_DIR,
        log_level=os.getenv("WORKBENCH_LOG_LEVEL", "WARNING"),
    )
    config = replace(config, **{k: v for k, v in overrides.items() if v is not None})
    return validate(config)
