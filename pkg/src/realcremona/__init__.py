"""Exact symbolic toolkit for maximal infinite algebraic subgroups of the real plane Cremona group."""

from .exact import GaussRat, ParamSystem, Rat, conj, inv, param_reduce, parse_gauss
from .poly import MultiPoly, VarBlocks, normalize_tuple, parse_poly
from .maps import (
    CurveOnModel,
    ModelPoint,
    RationalMap,
    SemilinearMap,
    compose,
    defined_along_curve_except,
    equal_on_variety,
    image_of_curve,
    is_involution,
    is_real,
    undefined_at,
    vanishes_on_model,
)
from .surfaces import SurfaceModel, builtin, catalog, point_on_curve, singular_fibres

__version__ = "0.1.0"
