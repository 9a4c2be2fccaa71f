"""Exact fixed-space statistics for finite classical groups, with brute-force
and curve-counting oracles."""

from fixedspace.exactmath import L, IntPoly, RatFun, eval_at, poly_gcd

__version__ = "0.1.0"

__all__ = ["L", "IntPoly", "RatFun", "eval_at", "poly_gcd", "__version__"]
