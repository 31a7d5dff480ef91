"""Piecewise polynomial time series segmentation with per-interval degrees.

A segmentation spends a budget of regressors: a constant interval costs 1,
a linear one 2. Segmenters find low-error segmentations within the budget,
either optimally (:func:`optimal_segmentation`) or greedily in linear time
(:func:`topdown_fixed`, :func:`topdown_adaptive`).
"""

from .core import (
    InfeasibleBudgetError,
    Segment,
    Segmentation,
    SegmentationError,
    TimeSeries,
    l2_error,
    model_complexity,
)
from .dp import CostTables, cost_tables, optimal_cost_curve, optimal_segmentation
from .estimator import PiecewisePolynomialRegressor
from .evaluate import (
    LooReport,
    compare_methods,
    distance_bound_check,
    leave_one_out,
    run_experiment,
)
from .moments import PrefixMoments
from .polyfit import FitResult, fit, fit_error
from .synth import GeneratorSpec, generate, random_walk, white_noise
from .topdown import topdown_adaptive, topdown_fixed

__version__ = "0.1.0"

__all__ = [
    "CostTables",
    "FitResult",
    "GeneratorSpec",
    "InfeasibleBudgetError",
    "LooReport",
    "PiecewisePolynomialRegressor",
    "PrefixMoments",
    "Segment",
    "Segmentation",
    "SegmentationError",
    "TimeSeries",
    "compare_methods",
    "cost_tables",
    "distance_bound_check",
    "fit",
    "fit_error",
    "generate",
    "l2_error",
    "leave_one_out",
    "model_complexity",
    "optimal_cost_curve",
    "optimal_segmentation",
    "random_walk",
    "run_experiment",
    "topdown_adaptive",
    "topdown_fixed",
    "white_noise",
]
