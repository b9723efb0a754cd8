from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Mapping, Optional

QUICK = "quick"
FULL = "full"
PROFILES = (QUICK, FULL)

DEFAULT_CACHE_DIR = "./.qphi-cache"


@dataclass
class EngineConfig:
    base_modulus: int = 3 ** 7
    jobs: int = 4
    cache_dir: str = DEFAULT_CACHE_DIR
    use_cache: bool = True
    profile: str = QUICK
    # Quick profile: identity orders are capped at quick_identity_cap and
    # congruence instance counts shrink until the needed order fits quick_cap.
    quick_cap: int = 600
    quick_identity_cap: int = 300

    def __post_init__(self) -> None:
        if self.profile not in PROFILES:
            raise ValueError(f"profile must be one of {PROFILES}, got {self.profile!r}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")
        if self.base_modulus < 2:
            raise ValueError(f"base modulus must be >= 2, got {self.base_modulus}")

    @property
    def quick(self) -> bool:
        return self.profile == QUICK

    @classmethod
    def from_env(cls, env: Optional[Mapping[str, str]] = None, **overrides: object) -> "EngineConfig":
        """Defaults, then QPHI_CACHE, then explicit overrides (None values are skipped)."""
        env = os.environ if env is None else env
        config = cls(**{k: v for k, v in overrides.items() if v is not None and k != "cache_dir"})
        cache_dir = overrides.get("cache_dir") or env.get("QPHI_CACHE")
        if cache_dir:
            config.cache_dir = str(cache_dir)
        return config


def log_level(verbosity: int = 0, env: Optional[Mapping[str, str]] = None) -> int:
    """-v gives INFO, -vv DEBUG; otherwise QPHI_LOG_LEVEL, defaulting to WARNING."""
    if verbosity >= 2:
        return logging.DEBUG
    if verbosity == 1:
        return logging.INFO
    env = os.environ if env is None else env
    name = env.get("QPHI_LOG_LEVEL", "WARNING").upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.WARNING
