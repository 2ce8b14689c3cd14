import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Optional

import numpy as np

from module.base.base_solver import Base
from module.base.errors import ParameterError
from module.linalg.linalg_core import CMatrix
from module.util import golden_section_search, ternary_search, wrap_angle
from module.wderiv.wderiv import (
    OmegaDerivation,
    RayProfile,
    RAY_NORMS
)
from configs.solver_base_config import Base as SolverConfig
from testdata.base.base_testdata import TestData

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
# relative resolution of the r-search, and the small radius of the slope proxy
R_RESOLUTION = 1e-10
SLOPE_RADIUS = 1e-6
RATIO_FLOOR = 1e-7


class DECIDER_METHODS(str, Enum):
    DERIVATIVE = 'derivative'
    DIRECT = 'direct'


@dataclass(frozen=True)
class OrthoReport:
    orthogonal: bool
    epsilon: float
    method: str
    threshold: float
    margin: float
    inf_derivative: Optional[float]
    worst_theta: float
    epsilon_star: float
    argmin_lambda: Optional[complex]
    converged: bool

    def to_dict(self) -> dict:
        data = asdict(self)
        if self.argmin_lambda is not None:
            data['argmin_lambda'] = [self.argmin_lambda.real, self.argmin_lambda.imag]
        return data


@dataclass(frozen=True)
class DirectSearch:
    min_margin: float
    argmin_lambda: complex
    epsilon_star: float
    worst_theta: float


class OmegaOrthogonality(Base):
    """Deciders for approximate orthogonality with respect to omega and to the operator norm.

    T is epsilon-orthogonal to S when
        size^2(T + lambda S) >= size^2(T) - 2 epsilon size(T) size(lambda S)  for every complex lambda,
    with size = omega (numerical radius) or the spectral norm.
    """

    def __init__(self, config: SolverConfig, test_data: TestData = None):
        super().__init__(config, test_data)
        self.derivation = OmegaDerivation(config, test_data)
        self.numerical_range = self.derivation.numerical_range

    @staticmethod
    def _check_epsilon(epsilon: float) -> float:
        epsilon = float(epsilon)
        if not 0.0 <= epsilon < 1.0:
            raise ParameterError(f'epsilon must lie in [0, 1), got {epsilon}')
        return epsilon

    @staticmethod
    def _trivial(epsilon: float, method: str) -> OrthoReport:
        return OrthoReport(orthogonal=True, epsilon=epsilon, method=method, threshold=0.0, margin=0.0,
                           inf_derivative=0.0, worst_theta=0.0, epsilon_star=0.0,
                           argmin_lambda=None, converged=True)

    def is_omega_orthogonal(self, T: CMatrix, S: CMatrix, epsilon: float,
                            method: str = DECIDER_METHODS.DERIVATIVE,
                            profile: RayProfile = None) -> OrthoReport:
        epsilon = self._check_epsilon(epsilon)
        try:
            method = DECIDER_METHODS(method)
        except ValueError:
            raise ParameterError(f'unknown method: {method}') from None
        profile = profile or self.derivation.profile(T, S)
        weight = profile.base * profile.direction_size
        if weight == 0.0:
            return self._trivial(epsilon, method.value)
        threshold = -epsilon * weight

        if method is DECIDER_METHODS.DERIVATIVE:
            inf = self.derivation.inf_derivative(T, S, profile=profile)
            margin = inf.value - threshold
            # the limit is only known up to the halving residual
            resolution = inf.residual if math.isfinite(inf.residual) else 0.0
            report = OrthoReport(
                orthogonal=bool(margin >= -(self.config.decision_tol + resolution)),
                epsilon=epsilon, method=method.value, threshold=threshold, margin=margin,
                inf_derivative=inf.value, worst_theta=inf.worst_theta,
                epsilon_star=float(np.clip(-inf.value / weight, 0.0, 1.0)),
                argmin_lambda=None, converged=inf.converged
            )
        else:
            r_max = self.config.r_max_factor * 2.0 * profile.base / profile.direction_size
            search = self.direct_search(profile, epsilon, r_max)
            report = self._direct_report(search, epsilon, method.value, threshold)
        logger.info('omega orthogonality (%s, eps=%g): %s, margin %.3g',
                    report.method, epsilon, report.orthogonal, report.margin)
        return report

    def min_epsilon(self, T: CMatrix, S: CMatrix, profile: RayProfile = None) -> float:
        profile = profile or self.derivation.profile(T, S)
        weight = profile.base * profile.direction_size
        if weight == 0.0:
            return 0.0
        inf = self.derivation.inf_derivative(T, S, profile=profile)
        return float(np.clip(-inf.value / weight, 0.0, 1.0))

    def bj_report(self, T: CMatrix, S: CMatrix, epsilon: float) -> OrthoReport:
        epsilon = self._check_epsilon(epsilon)
        profile = self.derivation.profile(T, S, RAY_NORMS.SPECTRAL)
        weight = profile.base * profile.direction_size
        if weight == 0.0:
            return self._trivial(epsilon, DECIDER_METHODS.DIRECT.value)
        r_max = self.config.r_max_factor * 2.0 * profile.base / profile.direction_size
        search = self.direct_search(profile, epsilon, r_max)
        report = self._direct_report(search, epsilon, DECIDER_METHODS.DIRECT.value, -epsilon * weight)
        logger.info('norm orthogonality (eps=%g): %s, margin %.3g', epsilon, report.orthogonal, report.margin)
        return report

    def is_bj_orthogonal(self, T: CMatrix, S: CMatrix, epsilon: float) -> bool:
        return self.bj_report(T, S, epsilon).orthogonal

    def _direct_report(self, search: DirectSearch, epsilon: float, method: str, threshold: float) -> OrthoReport:
        return OrthoReport(
            orthogonal=bool(search.min_margin >= -self.config.decision_tol),
            epsilon=epsilon, method=method, threshold=threshold, margin=search.min_margin,
            inf_derivative=None, worst_theta=search.worst_theta, epsilon_star=search.epsilon_star,
            argmin_lambda=search.argmin_lambda, converged=True
        )

    def direct_search(self, profile: RayProfile, epsilon: float, r_max: float,
                      grid: int = None) -> DirectSearch:
        """Minimizes g(lambda) = size^2(T + lambda S) - size^2(T) + 2 eps |lambda| size(T) size(S).

        g is convex along every ray, so each ray is searched by ternary (golden)
        minimization over (0, r_max]; all grid rays run together. The angle is then
        refined on the slope g(r_p e^{i theta}) / r_p at a small radius r_p and the
        refined ray is searched once more.
        """
        weight = profile.base * profile.direction_size
        count = grid or self.config.direct_grid
        thetas = TWO_PI * np.arange(count) / count
        phases = np.exp(1j * thetas)
        best = {'margin': np.inf, 'lambda': 0j, 'ratio': 0.0}

        def margin(lambdas):
            lambdas = np.atleast_1d(lambdas)
            shifted = profile.squared(lambdas)
            modulus = np.abs(lambdas)
            g = shifted - profile.base_sq + 2.0 * epsilon * modulus * weight
            k = int(np.argmin(g))
            if g[k] < best['margin']:
                best['margin'], best['lambda'] = float(g[k]), complex(lambdas[k])
            trusted = modulus >= RATIO_FLOOR * r_max
            if trusted.any():
                ratios = (profile.base_sq - shifted[trusted]) / (2.0 * modulus[trusted] * weight)
                best['ratio'] = max(best['ratio'], float(np.max(ratios)))
            return g

        resolution = R_RESOLUTION * r_max
        ternary_search(lambda r: margin(r * phases), np.zeros(count), np.full(count, r_max), resolution)

        r_p = SLOPE_RADIUS * r_max
        slopes = margin(r_p * phases) / r_p
        j = int(np.argmin(slopes))
        step = TWO_PI / count
        angle = golden_section_search(lambda phi: margin(r_p * np.exp(1j * phi)) / r_p,
                                      [thetas[j] - step], [thetas[j] + step], 1e-9)
        refined = np.exp(1j * angle.argbest)
        ternary_search(lambda r: margin(r * refined), [0.0], [r_max], resolution)

        worst_theta = float(wrap_angle(np.angle(best['lambda']))) if best['lambda'] != 0 else 0.0
        logger.debug('direct search: min margin %.3g at lambda %r', best['margin'], best['lambda'])
        return DirectSearch(
            min_margin=best['margin'],
            argmin_lambda=best['lambda'],
            epsilon_star=float(np.clip(best['ratio'], 0.0, 1.0)),
            worst_theta=worst_theta
        )
