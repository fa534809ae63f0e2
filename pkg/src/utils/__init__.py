"""
Utility modules for detq: configuration, errors, the basis cache and reports
"""

from .config import DetqConfig, get_config, set_config
from .errors import DetqError
from .report import CheckRecord, CheckRunner, Report, emit

__all__ = [
    "DetqConfig",
    "get_config",
    "set_config",
    "DetqError",
    "CheckRecord",
    "CheckRunner",
    "Report",
    "emit",
]
