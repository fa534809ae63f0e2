"""
Applications for detq: curve recipes, the quartic pipeline, the
verification suites and the command line
"""

__all__ = []
