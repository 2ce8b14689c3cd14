"""One-sided derivatives of the squared numerical radius along complex rays.

    D^theta(T, S) = lim_{r -> 0+} (omega^2(T + r e^{i theta} S) - omega^2(T)) / (2 r)

r -> omega^2(T + r e^{i theta} S) is convex, so the difference quotient is
nondecreasing in r and the limit is its infimum over any schedule r_k -> 0.
The halving schedule below runs on many angles at once; each angle stops on
its own once two successive quotients agree to `tol` plus the round-off floor
of the squared radii.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np

from module.base.base_solver import Base
from module.base.errors import (
    DegenerateOperatorError,
    DimensionError,
    ParameterError
)
from module.linalg.linalg_core import (
    CMatrix,
    quadratic_form,
    spectral_norm,
    spectral_norms
)
from module.numrange.numrange import NumericalRange, SupportGrid
from module.util import golden_section_search, wrap_angle
from configs.solver_base_config import Base as SolverConfig
from testdata.base.base_testdata import TestData

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
ROUNDOFF_FLOOR = 32 * np.finfo(float).eps


class RAY_NORMS(str, Enum):
    RADIUS = 'radius'
    SPECTRAL = 'spectral'


@dataclass(frozen=True)
class DerivativeResult:
    value: float
    theta: float
    quotient_trace: Tuple[Tuple[float, float], ...]
    converged: bool
    residual: float


@dataclass(frozen=True)
class InfDerivative:
    value: float
    worst_theta: float
    converged: bool
    residual: float


class RayProfile:
    """omega (or the spectral norm) of T + lambda S for batches of complex lambda."""

    def __init__(self, solver: NumericalRange, T: CMatrix, S: CMatrix, kind: str = RAY_NORMS.RADIUS):
        if T.n != S.n:
            raise DimensionError(f'dimension mismatch: {T.n} vs {S.n}')
        self.solver = solver
        self.T = T
        self.S = S
        self.kind = RAY_NORMS(kind)
        method = solver.config.eigensolver
        self.direction_norm = spectral_norm(S, method=method)
        self.support: SupportGrid = None
        if self.kind is RAY_NORMS.RADIUS:
            self.support = solver.support_grid(T, solver.config.inner_grid)
            self.base = solver.numerical_radius(T).omega
            self.direction_size = solver.numerical_radius(S).omega
        else:
            self.base = spectral_norm(T, method=method)
            self.direction_size = self.direction_norm
        self.base_sq = self.base ** 2

    def values(self, lambdas) -> np.ndarray:
        lambdas = np.atleast_1d(np.asarray(lambdas, dtype=np.complex128))
        stack = self.T.data[None] + lambdas[:, None, None] * self.S.data[None]
        if self.kind is RAY_NORMS.SPECTRAL:
            return spectral_norms(stack, method=self.solver.config.eigensolver)
        rho = float(np.max(np.abs(lambdas))) * self.direction_norm
        return self.solver.radius_many(stack, support=self.support, rho=rho)[0]

    def squared(self, lambdas) -> np.ndarray:
        return self.values(lambdas) ** 2

    def initial_radius(self) -> float:
        if self.base == 0.0:
            return 1.0
        return min(1.0, self.base / (1.0 + self.direction_size))


@dataclass
class _Halving:
    values: np.ndarray
    converged: np.ndarray
    residual: np.ndarray
    final_r: np.ndarray
    traces: List[List[Tuple[float, float]]]


class OmegaDerivation(Base):
    def __init__(self, config: SolverConfig, test_data: TestData = None):
        super().__init__(config, test_data)
        self.numerical_range = NumericalRange(config, test_data)

    def profile(self, T: CMatrix, S: CMatrix, kind: str = RAY_NORMS.RADIUS) -> RayProfile:
        return RayProfile(self.numerical_range, T, S, kind)

    def _tolerance(self, tol):
        tol = self.config.derivative_tol if tol is None else tol
        if not tol > 0:
            raise ParameterError(f'tol must be positive, got {tol}')
        return tol

    def diff_quotient(self, T: CMatrix, S: CMatrix, theta: float, r: float,
                      profile: RayProfile = None) -> float:
        if not r > 0:
            raise ParameterError(f'r must be positive, got {r}')
        profile = profile or self.profile(T, S)
        shifted = profile.squared(r * np.exp(1j * theta))[0]
        return float((shifted - profile.base_sq) / (2.0 * r))

    def _halve(self, profile: RayProfile, thetas, tol: float) -> _Halving:
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        count = thetas.size
        phases = np.exp(1j * thetas)
        values = np.full(count, np.nan)
        previous = np.full(count, np.nan)
        residual = np.full(count, np.inf)
        final_r = np.zeros(count)
        converged = np.zeros(count, dtype=bool)
        active = np.ones(count, dtype=bool)
        traces = [[] for _ in range(count)]

        r = profile.initial_radius()
        for k in range(self.config.max_halvings + 1):
            idx = np.flatnonzero(active)
            shifted = profile.squared(r * phases[idx])
            quotient = (shifted - profile.base_sq) / (2.0 * r)
            floor = ROUNDOFF_FLOOR * (profile.base_sq + shifted) / (2.0 * r)
            for i, q in zip(idx, quotient):
                traces[i].append((r, float(q)))
            values[idx] = quotient
            final_r[idx] = r
            if k > 0:
                change = np.abs(previous[idx] - quotient)
                residual[idx] = change + floor
                done = change <= tol + floor
                converged[idx[done]] = True
                active[idx[done]] = False
            previous[idx] = quotient
            if not active.any():
                break
            r /= 2.0
        if not converged.all():
            logger.warning('derivative did not converge within %d halvings for %d of %d angles',
                           self.config.max_halvings, int(np.sum(~converged)), count)
        return _Halving(values, converged, residual, final_r, traces)

    def _results(self, thetas, halving: _Halving) -> List[DerivativeResult]:
        return [
            DerivativeResult(
                value=float(halving.values[i]),
                theta=float(theta),
                quotient_trace=tuple(halving.traces[i]),
                converged=bool(halving.converged[i]),
                residual=float(halving.residual[i])
            )
            for i, theta in enumerate(np.atleast_1d(thetas))
        ]

    def omega_derivatives(self, T: CMatrix, S: CMatrix, thetas, tol: float = None,
                          profile: RayProfile = None) -> List[DerivativeResult]:
        tol = self._tolerance(tol)
        profile = profile or self.profile(T, S)
        return self._results(thetas, self._halve(profile, thetas, tol))

    def omega_derivative(self, T: CMatrix, S: CMatrix, theta: float, tol: float = None,
                         profile: RayProfile = None) -> DerivativeResult:
        return self.omega_derivatives(T, S, [theta], tol, profile)[0]

    def norm_derivative(self, T: CMatrix, S: CMatrix, theta: float, tol: float = None) -> DerivativeResult:
        """Same limit with the spectral norm in place of omega."""
        profile = self.profile(T, S, RAY_NORMS.SPECTRAL)
        return self.omega_derivatives(T, S, [theta], tol, profile)[0]

    def semi_inner(self, S: CMatrix, T: CMatrix, tol: float = None) -> DerivativeResult:
        # [S, T] is the derivative of omega^2 at T in the direction S
        return self.omega_derivative(T, S, 0.0, tol)

    def radius_derivative(self, T: CMatrix, S: CMatrix, theta: float, tol: float = None) -> float:
        """lim (omega(T + r e^{i theta} S) - omega(T)) / r."""
        profile = self.profile(T, S)
        if profile.base == 0.0:
            return profile.direction_size
        return self.omega_derivative(T, S, theta, tol, profile).value / profile.base

    def derivative_via_maximizers(self, T: CMatrix, S: CMatrix, theta: float) -> float:
        if T.is_zero():
            raise DegenerateOperatorError('derivative_via_maximizers needs T != 0')
        rotation = np.exp(-1j * theta)
        estimates = [
            (rotation * m.value * np.conj(quadratic_form(S, m.vector))).real
            for m in self.numerical_range.maximizers(T)
        ]
        return float(max(estimates))

    def inf_derivative(self, T: CMatrix, S: CMatrix, tol: float = None,
                       profile: RayProfile = None) -> InfDerivative:
        tol = self._tolerance(tol)
        profile = profile or self.profile(T, S)
        scale = profile.base * profile.direction_size
        if scale == 0.0:
            return InfDerivative(value=0.0, worst_theta=0.0, converged=True, residual=0.0)

        count = self.config.search_grid
        thetas = TWO_PI * np.arange(count) / count
        grid = self._halve(profile, thetas, tol)
        j = int(np.argmin(grid.values))
        value, worst = float(grid.values[j]), float(thetas[j])
        converged, residual = bool(grid.converged[j]), float(grid.residual[j])

        # refine the angle on the quotient at the scale where the worst grid angle settled
        r = float(grid.final_r[j])
        step = TWO_PI / count
        bracket = golden_section_search(
            lambda phi: (profile.squared(r * np.exp(1j * phi)) - profile.base_sq) / (2.0 * r),
            [worst - step], [worst + step], max(tol / scale, 1e-12))
        refined_theta = float(wrap_angle(bracket.argbest[0]))
        refined = self._halve(profile, [refined_theta], tol)
        if refined.values[0] < value:
            value, worst = float(refined.values[0]), refined_theta
            converged, residual = bool(refined.converged[0]), float(refined.residual[0])

        if abs(value) > scale + tol:
            logger.warning('inf derivative %.6g exceeds the Schwarz bound %.6g', value, scale)
        logger.info('inf derivative %.10g at theta %.6f', value, worst)
        return InfDerivative(value=value, worst_theta=worst, converged=converged, residual=residual)
