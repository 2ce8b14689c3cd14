"""Independent references for omega and for approximate orthogonality.

None of these share the support-function machinery of `numerical_range`
except `direct_lambda_scan`, which needs omega of many matrices and batches
them through `radius_many`, with omega(T) and omega(S) from `numerical_radius`.
"""
import logging
import math
from typing import Tuple

import numpy as np

from module.base.base_solver import Base
from module.base.errors import DimensionError, ParameterError
from module.linalg.linalg_core import CMatrix, Vector, inner, as_vector
from module.numrange.numrange import NumericalRange
from module.oracle.generators import InstanceGenerator, Seed
from module.util import golden_section_search
from configs.solver_base_config import Base as SolverConfig
from testdata.base.base_testdata import TestData

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
SAMPLE_CHUNK = 4096
ELLIPSE_GRID = 4096
SCAN_DEPTH = 1e-6


class Oracle(Base):
    def __init__(self, config: SolverConfig, test_data: TestData = None):
        super().__init__(config, test_data)
        self.numerical_range = NumericalRange(config, test_data)

    @staticmethod
    def sample_radius_lower(T: CMatrix, samples: int, seed) -> float:
        if samples < 1:
            raise ParameterError(f'samples must be positive, got {samples}')
        generator = InstanceGenerator(seed if isinstance(seed, Seed) else Seed(int(seed)))
        best = 0.0
        remaining = samples
        while remaining > 0:
            size = min(remaining, SAMPLE_CHUNK)
            X = generator.complex_gaussian(size, T.n)
            X /= np.linalg.norm(X, axis=1, keepdims=True)
            values = np.einsum('ki,ij,kj->k', np.conj(X), T.data, X)
            best = max(best, float(np.max(np.abs(values))))
            remaining -= size
        return best

    @staticmethod
    def ellipse_radius_2x2(T: CMatrix) -> float:
        """max |z| over W(T) for 2x2 T, from the elliptical range theorem.

        W(T) is the ellipse with foci at the eigenvalues mu1, mu2 and minor
        semi-axis b, b^2 = (tr(T*T) - |mu1|^2 - |mu2|^2) / 4.
        """
        if T.n != 2:
            raise DimensionError(f'ellipse oracle needs a 2x2 matrix, got n={T.n}')
        (a, b), (c, d) = T.data
        half_trace = (a + d) / 2.0
        root = np.sqrt(half_trace ** 2 - (a * d - b * c) + 0j)
        mu1, mu2 = half_trace + root, half_trace - root
        frobenius = float(np.sum(np.abs(T.data) ** 2))
        minor = math.sqrt(max(0.0, (frobenius - abs(mu1) ** 2 - abs(mu2) ** 2) / 4.0))
        focal = abs(mu1 - mu2) / 2.0
        major = math.sqrt(focal ** 2 + minor ** 2)
        axis = (mu1 - mu2) / abs(mu1 - mu2) if focal > 0.0 else 1.0 + 0j

        def modulus(t):
            return np.abs(half_trace + axis * (major * np.cos(t) + 1j * minor * np.sin(t)))

        grid = TWO_PI * np.arange(ELLIPSE_GRID) / ELLIPSE_GRID
        values = modulus(grid)
        k = int(np.argmax(values))
        step = TWO_PI / ELLIPSE_GRID
        bracket = golden_section_search(modulus, [grid[k] - step], [grid[k] + step], 1e-12, maximize=True)
        return float(max(values[k], bracket.best[0]))

    def direct_lambda_scan(self, T: CMatrix, S: CMatrix, epsilon: float, grid_r: int = 64,
                           grid_theta: int = 64) -> Tuple[float, complex]:
        """Minimum of omega^2(T + lambda S) - omega^2(T) + 2 eps |lambda| omega(T) omega(S) over a polar grid.

        Angles are uniform; radii are log-spaced from r_max * 1e-6 up to
        r_max = 2 omega(T) / omega(S), so violations close to lambda = 0 are seen.
        Each ring of radius r is evaluated against the support grid of T with
        perturbation bound r ||S||.
        """
        if grid_r < 16 or grid_theta < 16:
            raise ParameterError(f'grids must be at least 16, got {grid_r} x {grid_theta}')
        if T.n != S.n:
            raise DimensionError(f'dimension mismatch: {T.n} vs {S.n}')
        omega_s = self.numerical_range.numerical_radius(S).omega
        if omega_s == 0.0:
            return 0.0, 0j
        omega_t = self.numerical_range.numerical_radius(T).omega
        if omega_t == 0.0:
            return 0.0, 0j
        r_max = 2.0 * omega_t / omega_s
        radii = r_max * np.logspace(math.log10(SCAN_DEPTH), 0.0, grid_r)
        angles = TWO_PI * np.arange(grid_theta) / grid_theta
        lambdas = (radii[:, None] * np.exp(1j * angles)[None, :]).reshape(-1)
        support = self.numerical_range.support_grid(T, self.config.inner_grid)
        norm_s = self.numerical_range.norm(S)
        omegas = np.concatenate([
            self.numerical_range.radius_many(T.data[None] + ring[:, None, None] * S.data[None],
                                             support=support, rho=r * norm_s)[0]
            for r, ring in zip(radii, lambdas.reshape(grid_r, grid_theta))
        ])
        margins = omegas ** 2 - omega_t ** 2 + 2.0 * epsilon * np.abs(lambdas) * omega_t * omega_s
        k = int(np.argmin(margins))
        logger.info('lambda scan over %d points: min margin %.3g', lambdas.size, margins[k])
        return float(margins[k]), complex(lambdas[k])

    @staticmethod
    def rank_one_radius(x: Vector, y: Vector) -> float:
        x, y = as_vector(x), as_vector(y)
        return 0.5 * (abs(inner(x, y)) + float(np.linalg.norm(x) * np.linalg.norm(y)))

    @staticmethod
    def rank_one_epsilon_star(x: Vector, y: Vector) -> float:
        """Smallest epsilon with x(x)x orthogonal to y(x)y in the omega sense: |<x, y>|^2 / (|x|^2 |y|^2)."""
        x, y = as_vector(x), as_vector(y)
        scale = float(np.linalg.norm(x) ** 2 * np.linalg.norm(y) ** 2)
        if scale == 0.0:
            return 0.0
        return abs(inner(x, y)) ** 2 / scale
