import logging
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


@dataclass(frozen=True)
class Settings:
    """Runtime knobs read from the environment (or a local .env file)."""

    threads: int = 1
    seed: int = 0
    max_degree: Optional[int] = None
    log_level: str = "WARNING"


def _int_env(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logging.getLogger(__name__).warning(f"Ignoring non-integer {name}={raw!r}")
        return default


def load_settings() -> Settings:
    """Build Settings from COXMA_* environment variables."""
    threads = _int_env("COXMA_THREADS", 1)
    return Settings(
        threads=max(1, threads),
        seed=_int_env("COXMA_SEED", 0),
        max_degree=_int_env("COXMA_MAX_DEGREE", None),
        log_level=os.getenv("COXMA_LOG_LEVEL", "WARNING").upper(),
    )


def configure_logging(settings: Settings) -> None:
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
