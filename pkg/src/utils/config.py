"""
Runtime configuration for detq
Values come from DETQ_* environment variables, overridable from the CLI
"""

import os
import threading
from dataclasses import dataclass, asdict, replace
from typing import Any, Dict, Optional, Tuple

DEFAULT_PRIME = 32003


def _env_bool(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class DetqConfig:
    """
    Field choice, randomness and resource budgets shared by all operations

    Args:
        field: "fp" for the prime field, "q" for the rationals
        prime: modulus used when field is "fp"
        seed: seed for every random choice (recipes, Bayer forms)
        cache_dir: directory of the on-disk Groebner basis cache
        use_cache: disable to bypass the disk cache entirely
        max_degree: largest S-pair degree the Groebner engine may reach
        max_pairs: largest number of S-pairs it may reduce
        max_seconds: wall-clock limit of a single Groebner computation
        window: default twist window of cohomology tables
        max_betti_degree: largest internal degree a Betti computation may visit
        recipe_retries: attempts a randomized recipe gets before failing
    """
    field: str = "fp"
    prime: int = DEFAULT_PRIME
    seed: int = 0
    cache_dir: str = ".detq-cache"
    use_cache: bool = True
    max_degree: int = 40
    max_pairs: int = 200000
    max_seconds: float = 1800.0
    window: Tuple[int, int] = (-6, 12)
    max_betti_degree: int = 20
    recipe_retries: int = 8

    def __post_init__(self):
        if self.field not in ("fp", "q"):
            raise ValueError(f"field must be 'fp' or 'q', got {self.field!r}")
        if self.window[0] >= self.window[1]:
            raise ValueError(f"empty cohomology window {self.window}")

    @classmethod
    def from_env(cls, environ: Optional[Dict[str, str]] = None) -> "DetqConfig":
        """Build a config from DETQ_* variables, defaults elsewhere."""
        env = os.environ if environ is None else environ
        kwargs: Dict[str, Any] = {}
        if "DETQ_FIELD" in env:
            kwargs["field"] = env["DETQ_FIELD"].strip().lower()
        if "DETQ_PRIME" in env:
            kwargs["prime"] = int(env["DETQ_PRIME"])
        if "DETQ_SEED" in env:
            kwargs["seed"] = int(env["DETQ_SEED"])
        if "DETQ_CACHE_DIR" in env:
            kwargs["cache_dir"] = env["DETQ_CACHE_DIR"]
        if "DETQ_NO_CACHE" in env:
            kwargs["use_cache"] = not _env_bool(env["DETQ_NO_CACHE"])
        if "DETQ_MAX_DEGREE" in env:
            kwargs["max_degree"] = int(env["DETQ_MAX_DEGREE"])
        if "DETQ_MAX_PAIRS" in env:
            kwargs["max_pairs"] = int(env["DETQ_MAX_PAIRS"])
        if "DETQ_MAX_SECONDS" in env:
            kwargs["max_seconds"] = float(env["DETQ_MAX_SECONDS"])
        if "DETQ_WINDOW" in env:
            lo, hi = env["DETQ_WINDOW"].split(",")
            kwargs["window"] = (int(lo), int(hi))
        if "DETQ_MAX_BETTI_DEGREE" in env:
            kwargs["max_betti_degree"] = int(env["DETQ_MAX_BETTI_DEGREE"])
        return cls(**kwargs)

    def override(self, **changes) -> "DetqConfig":
        """Return a copy with the non-None keyword values applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def make_field(self):
        from src.core.field import CoefficientField
        if self.field == "q":
            return CoefficientField.rationals()
        return CoefficientField.prime_field(self.prime)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["window"] = list(self.window)
        return data


_lock = threading.Lock()
_current: Optional[DetqConfig] = None


def get_config() -> DetqConfig:
    """Process-wide configuration, read from the environment on first use."""
    global _current
    with _lock:
        if _current is None:
            _current = DetqConfig.from_env()
        return _current


def set_config(config: DetqConfig) -> None:
    global _current
    with _lock:
        _current = config
