"""Exact-arithmetic incidence geometry lab.

Curve and surface arrangements in R^3 and R^4, two-rich point counting,
polynomial partitioning, degree reduction, hypersurface clustering, and the
full structure-decomposition pipelines, all over exact rational and real
algebraic arithmetic.
"""

__version__ = "0.1.0"
