# src/gpfsums/oracle/fitting.py
"""
Three-parameter asymptote  S_n ~ a - b n^-c  for partial-sum tables.

For fixed c the model is linear in (a, b), so the fit is a one-dimensional
search over c with a linear least-squares solve inside; a Gauss-Newton
polish on the same projected residual sharpens c beyond the bracket
search tolerance.
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares, minimize_scalar

from ..errors import FitError


logger = logging.getLogger(__name__)

C_BOUNDS = (0.05, 0.6)
MIN_POINTS = 4
MIN_DECADES = 3


@dataclass(frozen=True)
class FitModel:
    a: float
    b: float
    c: float
    residual_norm: float

    def value(self, n: float) -> float:
        return self.a - self.b * n ** (-self.c)


def _linear_solve(n: np.ndarray, y: np.ndarray, c: float) -> Tuple[float, float, np.ndarray]:
    design = np.column_stack((np.ones_like(n), -(n ** -c)))
    coeffs, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < 2:
        raise FitError(f"Degenerate design matrix at c = {c}")
    return coeffs[0], coeffs[1], design @ coeffs - y


def fit_asymptote(points: Sequence[Tuple[float, float]]) -> FitModel:
    """
    Least-squares fit of value(n) = a - b n^-c

    Args:
        points: (n, S_n) pairs, at least 4 spanning at least 3 decades

    Raises:
        FitError: too few or degenerate points, or a fit with b <= 0 or c outside (0, 1)
    """
    if len(points) < MIN_POINTS:
        raise FitError(f"Need at least {MIN_POINTS} points, got {len(points)}")
    n = np.array([float(p[0]) for p in points])
    y = np.array([float(p[1]) for p in points])
    if np.any(n <= 0) or len(np.unique(n)) < MIN_POINTS:
        raise FitError("Points need at least 4 distinct positive n values")
    if math.log10(n.max() / n.min()) < MIN_DECADES:
        raise FitError(f"Points span fewer than {MIN_DECADES} decades")
    if np.ptp(y) == 0:
        raise FitError("All values are equal; the asymptote is undetermined")

    def norm(c: float) -> float:
        return float(np.linalg.norm(_linear_solve(n, y, c)[2]))

    coarse = minimize_scalar(norm, bounds=C_BOUNDS, method="bounded", options={"xatol": 1e-12})
    polished = least_squares(
        lambda c: _linear_solve(n, y, c[0])[2],
        x0=[coarse.x],
        bounds=C_BOUNDS,
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
    )
    c = float(polished.x[0]) if norm(polished.x[0]) <= coarse.fun else float(coarse.x)
    a, b, residual = _linear_solve(n, y, c)

    if not b > 0 or not 0 < c < 1:
        logger.error(f"Fit out of range: a = {a}, b = {b}, c = {c}")
        raise FitError(f"Fit gives b = {b:.6g}, c = {c:.6g}; need b > 0 and 0 < c < 1")

    model = FitModel(a=float(a), b=float(b), c=c, residual_norm=float(np.linalg.norm(residual)))
    logger.info(f"Fitted a = {model.a:.9f}, b = {model.b:.9f}, c = {model.c:.9f}")
    return model


def terms_for_tolerance(model: FitModel, eps: float) -> float:
    """n at which the model's distance b n^-c to its limit drops to eps"""
    if eps <= 0:
        raise FitError(f"eps must be positive, got {eps}")
    return (model.b / eps) ** (1.0 / model.c)
