"""Elliptic divisibility sequences: exact generation, sign prediction, realizability."""

from edslab.eds import EDS, ParityValue, discriminant, from_initial, inverse, is_nonsingular, subsequence, verify_recursion
from edslab.curve import CurveData, RationalPoint, WeierstrassCurve, associated_curve
from edslab.analytic import AnalyticData, PrecisionContext, analyze, predict_parity

__all__ = [
    "EDS",
    "ParityValue",
    "from_initial",
    "discriminant",
    "is_nonsingular",
    "inverse",
    "subsequence",
    "verify_recursion",
    "CurveData",
    "RationalPoint",
    "WeierstrassCurve",
    "associated_curve",
    "AnalyticData",
    "PrecisionContext",
    "analyze",
    "predict_parity",
]

__version__ = "0.1.0"
