"""
Groebner Basis Cache
Content-addressed JSON files keyed by a digest of the ideal's presentation
"""

import hashlib
import json
import logging
import os
import threading
from fractions import Fraction
from typing import List, Optional, Sequence

from src.utils.config import DetqConfig, get_config

logger = logging.getLogger(__name__)


def ideal_digest(ring, order, generators: Sequence) -> str:
    """sha256 over (field, variables, weights, order, sorted generator strings)."""
    payload = {
        "field": ring.field.describe(),
        "variables": list(ring.variables),
        "weights": list(ring.weights),
        "order": repr(order),
        "generators": sorted(str(g) for g in generators),
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()


class BasisCache:
    """
    On-disk cache of reduced Groebner bases

    A hit returns exactly what recomputation would; corrupt or unreadable
    entries are treated as misses.

    Args:
        config: supplies cache_dir and use_cache
    """

    def __init__(self, config: Optional[DetqConfig] = None):
        config = config or get_config()
        self.directory = config.cache_dir
        self.enabled = config.use_cache
        self._lock = threading.Lock()

    def _path(self, digest: str) -> str:
        return os.path.join(self.directory, digest[:2], f"{digest}.json")

    def load(self, ring, order, generators) -> Optional[List]:
        """Basis polynomials in ``ring`` (already carrying ``order``), or None."""
        if not self.enabled:
            return None
        path = self._path(ideal_digest(ring, order, generators))
        if not os.path.exists(path):
            return None
        from src.core.polynomial import Polynomial
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            polys = []
            for terms in data["basis"]:
                polys.append(Polynomial(ring, {tuple(e): ring.field(Fraction(c)) for e, c in terms}))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            logger.warning(f"⚠️ ignoring unreadable cache entry {path}: {exc}")
            return None
        logger.debug(f"✅ cache hit {path}")
        return polys

    def store(self, ring, order, generators, basis: Sequence) -> None:
        if not self.enabled:
            return
        digest = ideal_digest(ring, order, generators)
        path = self._path(digest)
        data = {
            "ring": ring.declaration(),
            "order": repr(order),
            "basis": [[[list(e), str(c)] for e, c in g.sorted_terms()] for g in basis],
        }
        with self._lock:
            try:
                os.makedirs(os.path.dirname(path), exist_ok=True)
                tmp = f"{path}.{os.getpid()}.tmp"
                with open(tmp, "w", encoding="utf-8") as fh:
                    json.dump(data, fh)
                os.replace(tmp, path)
            except OSError as exc:
                logger.warning(f"⚠️ could not write cache entry {path}: {exc}")
