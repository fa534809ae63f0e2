"""
detq - exact algebra for space curves of degree 10 and genus 11.

The package provides the polynomial and ideal core, graded homology, the
blow-up lattice, and the applications that build curves, run the
determinantal pipeline and verify the golden values.
"""

__version__ = "1.0.0"
__author__ = "detq Team"
