import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI_SQUARED = (3 - math.sqrt(5)) / 2


@dataclass(frozen=True)
class Bracket:
    lower: np.ndarray
    upper: np.ndarray
    argbest: np.ndarray
    best: np.ndarray


def golden_section_search(
        func: Callable[[np.ndarray], np.ndarray], a, b, tol: float,
        maximize: bool = False, max_iterations: int = 200) -> Bracket:
    """Golden-section search run on many independent brackets at once.

    `func` maps an array of abscissae (one per bracket) to an array of values.
    Each bracket [a_k, b_k] is assumed unimodal; every bracket shrinks to a width
    <= tol. The best of the two final interior points is returned alongside the
    final bracket, so callers get a point and its value without re-evaluating.

    Example:
        f = lambda x: (x - 2) ** 2
        golden_section_search(f, [1.0], [5.0], 1e-5).argbest  ->  array([2.000...])
    """
    a = np.atleast_1d(np.asarray(a, dtype=float)).copy()
    b = np.atleast_1d(np.asarray(b, dtype=float)).copy()
    a, b = np.minimum(a, b), np.maximum(a, b)
    sign = -1.0 if maximize else 1.0

    def objective(x):
        return sign * np.asarray(func(x), dtype=float)

    h = b - a
    widest = float(np.max(h)) if h.size else 0.0
    steps = 0
    if widest > tol:
        steps = int(math.ceil(math.log(tol / widest) / math.log(INV_PHI)))
    steps = min(steps, max_iterations)

    c = a + INV_PHI_SQUARED * h
    d = a + INV_PHI * h
    yc = objective(c)
    yd = objective(d)

    for _ in range(max(steps - 1, 0)):
        left = yc < yd
        # left: minimum in [a, d]; otherwise in [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        h = INV_PHI * h
        c_new = np.where(left, a + INV_PHI_SQUARED * h, d)
        d_new = np.where(left, c, a + INV_PHI * h)
        point = np.where(left, c_new, d_new)
        y_point = objective(point)
        yc, yd = np.where(left, y_point, yd), np.where(left, yc, y_point)
        c, d = c_new, d_new

    left = yc < yd
    argbest = np.where(left, c, d)
    best = sign * np.where(left, yc, yd)
    return Bracket(
        lower=np.where(left, a, c),
        upper=np.where(left, d, b),
        argbest=argbest,
        best=best
    )


def ternary_search(func: Callable[[np.ndarray], np.ndarray], a, b, tol: float,
                   max_iterations: int = 200) -> Bracket:
    # convex minimization over [a, b]; golden ratio placement reuses one evaluation per step
    return golden_section_search(func, a, b, tol, maximize=False, max_iterations=max_iterations)


def wrap_angle(theta):
    return np.mod(theta, 2.0 * math.pi)
