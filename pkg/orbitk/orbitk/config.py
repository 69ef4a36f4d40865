"""Runtime settings and logging setup."""

import logging
import os
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import InputValidationError

SEED_VARIABLE = "ORBITK_SEED"
LOG_LEVEL_VARIABLE = "ORBITK_LOG_LEVEL"

_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """Settings read from the environment."""

    seed: int = 0
    log_level: str = "WARNING"

    @classmethod
    def from_environment(
        cls, environ: Optional[Mapping[str, str]] = None
    ) -> "Settings":
        """
        Build settings from environment variables.

        Args:
            environ: Mapping to read instead of os.environ

        Returns:
            The parsed settings

        Raises:
            InputValidationError: If a variable holds an invalid value
        """
        env = os.environ if environ is None else environ
        raw_seed = env.get(SEED_VARIABLE, "0").strip() or "0"
        try:
            seed = int(raw_seed)
        except ValueError:
            raise InputValidationError(
                f"{SEED_VARIABLE} must be an integer, got {raw_seed!r}"
            ) from None
        level = env.get(LOG_LEVEL_VARIABLE, "WARNING").strip().upper() or "WARNING"
        if level not in _LEVELS:
            raise InputValidationError(
                f"{LOG_LEVEL_VARIABLE} must be one of {', '.join(_LEVELS)}, "
                f"got {level!r}"
            )
        return cls(seed=seed, log_level=level)


def configure_logging(level: str = "WARNING") -> logging.Logger:
    """
    Attach one stderr handler to the package logger.

    Calling it again only updates the level.
    """
    package_logger = logging.getLogger("orbitk")
    package_logger.setLevel(level)
    if not package_logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(
            logging.Formatter("%(levelname)s %(name)s: %(message)s")
        )
        package_logger.addHandler(handler)
    return package_logger
