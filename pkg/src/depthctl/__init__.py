"""Depth, finiteness dimension and attached primes over quotients of polynomial rings."""

from .depth import (
    DepthResult, LambdaSet, Presentation, RModule, att_min_at_point, check_depth_inequality,
    depth_formula, depth_local, depth_oracle_ext, depth_oracle_koszul, fdim_at_point,
    height_mod, lambda_independence, lambda_set, make_rmodule, quot,
)
from .errors import DepthctlError
from .field import Field
from .groebner import Ideal
from .modules import FPModule, Matrix
from .poly import Poly, Ring

__all__ = [
    "DepthResult", "DepthctlError", "FPModule", "Field", "Ideal", "LambdaSet", "Matrix",
    "Poly", "Presentation", "RModule", "Ring", "att_min_at_point", "check_depth_inequality",
    "depth_formula", "depth_local", "depth_oracle_ext", "depth_oracle_koszul", "fdim_at_point",
    "height_mod", "lambda_independence", "lambda_set", "make_rmodule", "quot",
]
