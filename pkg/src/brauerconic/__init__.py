"""Exact residues of quaternion symbols over Q(i)(u, v) and conic-bundle certificates."""

__version__ = "0.1.0"

from .gauss import GaussRat, gauss_is_square, same_square_class, square_class_rep
from .poly import BiPoly, ParamCurve, Point, PrimeDivisor, RatFun, U, V, valuation
from .symbols import BrClass, QSymbol
from .residues import SquareClass, is_unramified, residue_profile, residue_symbol, residue_table
from .brclass import (
    class_equal_certified,
    decide_constant_triviality,
    evaluate_at_point,
    extract_constant,
    normalize_class,
    restrict_to_curve,
)
from .conics import (
    TernaryForm,
    conics_isomorphic,
    diagonalize,
    model_bundle_chart,
    parametrize,
    point_search,
    symbol_of_form,
)
from .parse import parse_class, parse_expr, parse_form, parse_ratfun, to_text

__all__ = [
    "__version__",
    "GaussRat",
    "gauss_is_square",
    "same_square_class",
    "square_class_rep",
    "BiPoly",
    "RatFun",
    "U",
    "V",
    "ParamCurve",
    "Point",
    "PrimeDivisor",
    "valuation",
    "QSymbol",
    "BrClass",
    "SquareClass",
    "residue_symbol",
    "residue_table",
    "residue_profile",
    "is_unramified",
    "normalize_class",
    "restrict_to_curve",
    "evaluate_at_point",
    "decide_constant_triviality",
    "extract_constant",
    "class_equal_certified",
    "TernaryForm",
    "diagonalize",
    "symbol_of_form",
    "conics_isomorphic",
    "point_search",
    "parametrize",
    "model_bundle_chart",
    "parse_expr",
    "to_text",
    "parse_ratfun",
    "parse_class",
    "parse_form",
]
