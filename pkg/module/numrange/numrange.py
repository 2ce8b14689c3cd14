"""Numerical radius, Crawford number, boundary of the numerical range and maximizers.

The support function of W(T) in direction phi is h(phi) = lambda_max(H_phi(T)),
and omega(T) = max_phi h(phi). Every routine here samples h on an angle grid
and refines with golden-section search; `numerical_radius` additionally
certifies its enclosure by bisecting grid cells until the per-cell upper bound
of h is within tolerance of the best support point found.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from module.base.base_solver import Base
from module.base.errors import (
    DegenerateOperatorError,
    ParameterError
)
from module.linalg.linalg_core import (
    CMatrix,
    UnitVector,
    quadratic_form,
    spectral_norm
)
from module.util import golden_section_search, wrap_angle
from configs.solver_base_config import Base as SolverConfig
from testdata.base.base_testdata import TestData

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
ROUNDOFF = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class RadiusResult:
    omega: float
    theta_star: float
    maximizer: UnitVector
    enclosure: Tuple[float, float]

    @property
    def lower(self) -> float:
        return self.enclosure[0]

    @property
    def upper(self) -> float:
        return self.enclosure[1]

    @property
    def width(self) -> float:
        return self.enclosure[1] - self.enclosure[0]


@dataclass(frozen=True)
class Maximizer:
    theta: float
    vector: UnitVector
    value: complex


@dataclass(frozen=True)
class MaximizerSet:
    entries: Tuple[Maximizer, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def values(self) -> np.ndarray:
        return np.array([m.value for m in self.entries], dtype=np.complex128)


def cell_ends(angles: np.ndarray, cells: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Angles [a, b] of the given cells of a sorted grid; the last cell wraps past 2pi."""
    count = angles.size
    b = np.where(cells + 1 < count, angles[(cells + 1) % count], angles[0] + TWO_PI)
    return angles[cells], b


def cell_upper_bounds(a, b, ha, hb, norm) -> np.ndarray:
    """Upper bound of a support function h on the cells [a, b] given h(a) = ha and h(b) = hb.

    h is sublinear, so on a cell narrower than pi it stays below the support
    polygon built from the two sampled support lines; the Lipschitz bound
    `higher + norm * (b - a) / 2` caps it wherever the polygon vertex is
    ill-conditioned. All arguments broadcast against each other.
    """
    delta = b - a
    higher = np.maximum(ha, hb)
    with np.errstate(divide='ignore', invalid='ignore'):
        sin_delta = np.sin(delta)
        x = (ha * np.sin(b) - hb * np.sin(a)) / sin_delta
        y = (ha * np.cos(b) - hb * np.cos(a)) / sin_delta
        vertex = np.hypot(x, y)
        direction = np.mod(-np.arctan2(y, x), TWO_PI)
        inside = np.mod(direction - a, TWO_PI) <= delta
        polygon = np.where(inside, vertex, higher)
    lipschitz = higher + norm * delta / 2.0
    bound = np.where(np.isfinite(polygon), np.minimum(polygon, lipschitz), lipschitz)
    return bound + ROUNDOFF * np.maximum(norm, 1.0)


@dataclass(frozen=True)
class SupportGrid:
    """Sampled support function of W(T): sorted angles in [0, 2pi), h and support points."""
    angles: np.ndarray
    values: np.ndarray
    points: np.ndarray
    norm: float

    @property
    def peak(self) -> float:
        return float(np.max(self.values))

    @property
    def lower(self) -> float:
        return float(np.max(np.abs(self.points)))

    def cell_upper_bounds(self) -> np.ndarray:
        """Upper bound of h on every cell [angles[k], angles[k+1]]."""
        a, b = cell_ends(self.angles, np.arange(self.angles.size))
        return cell_upper_bounds(a, b, self.values, np.roll(self.values, -1), self.norm)

    def candidate_cells(self, level: float) -> np.ndarray:
        """Every cell whose upper bound reaches `level`, or the best cell when none does."""
        bounds = self.cell_upper_bounds()
        cells = np.flatnonzero(bounds >= level)
        if cells.size == 0:
            cells = np.array([int(np.argmax(bounds))])
        return cells

    def merged(self, angles: np.ndarray, values: np.ndarray, points: np.ndarray) -> 'SupportGrid':
        all_angles = np.concatenate([self.angles, wrap_angle(np.asarray(angles, dtype=float))])
        order = np.argsort(all_angles, kind='stable')
        return SupportGrid(
            angles=all_angles[order],
            values=np.concatenate([self.values, values])[order],
            points=np.concatenate([self.points, points])[order],
            norm=self.norm
        )


class NumericalRange(Base):
    def __init__(self, config: SolverConfig, test_data: TestData = None):
        super().__init__(config, test_data)

    @staticmethod
    def _positive(value, default, name='tol'):
        value = default if value is None else value
        if not value > 0:
            raise ParameterError(f'{name} must be positive, got {value}')
        return value

    def norm(self, T: CMatrix) -> float:
        return spectral_norm(T, method=self.config.eigensolver)

    def support_grid(self, T: CMatrix, count: int = None, norm: float = None) -> SupportGrid:
        count = count or self.config.theta_grid
        angles = TWO_PI * np.arange(count) / count
        values, points = self.support_points(T.data, angles)
        return SupportGrid(angles=angles, values=values, points=points,
                           norm=self.norm(T) if norm is None else norm)

    def _refine(self, stack: np.ndarray, centers: np.ndarray, half_width: float, tol: float,
                lowest: bool = False):
        # golden-section maximization of h (or of lambda_min) around each center, one per matrix
        return golden_section_search(
            lambda phi: self.support_values_at(stack, phi, lowest=lowest),
            centers - half_width, centers + half_width, tol, maximize=True)

    def _certify(self, T: CMatrix, grid: SupportGrid, tol: float) -> Tuple[SupportGrid, float]:
        evaluated = grid.angles.size
        rounds = 0
        while True:
            bounds = grid.cell_upper_bounds()
            lower = grid.lower
            open_cells = np.flatnonzero(bounds > lower + tol)
            if open_cells.size == 0:
                break
            if evaluated + open_cells.size > self.config.max_refine_cells:
                logger.warning('enclosure refinement stopped at %d angles; width %.3g exceeds tol %.3g',
                               evaluated, float(bounds.max()) - lower, tol)
                break
            a, b = cell_ends(grid.angles, open_cells)
            middles = (a + b) / 2.0
            values, points = self.support_points(T.data, middles)
            grid = grid.merged(middles, values, points)
            evaluated += middles.size
            rounds += 1
            logger.debug('certification round %d: bisected %d cells', rounds, middles.size)
        logger.info('radius enclosure certified after %d rounds over %d angles', rounds, evaluated)
        return grid, max(float(bounds.max()), grid.lower)

    def numerical_radius(self, T: CMatrix, tol: float = None) -> RadiusResult:
        tol = self._positive(tol, self.config.radius_tol)
        if T.is_zero():
            return RadiusResult(0.0, 0.0, UnitVector.basis(T.n), (0.0, 0.0))
        norm = self.norm(T)
        grid = self.support_grid(T, self.config.theta_grid, norm=norm)
        k = int(np.argmax(grid.values))
        bracket = self._refine(T.data[None], grid.angles[k:k + 1], self.config.grid_step,
                               self.config.angle_tol(norm, tol))
        values, points = self.support_points(T.data, bracket.argbest)
        grid = grid.merged(bracket.argbest, values, points)
        refined = float(values[0])
        grid, upper = self._certify(T, grid, tol)
        k = int(np.argmax(grid.values))
        if grid.values[k] > refined:
            # certification found a higher peak elsewhere; polish it too
            polished = self._refine(T.data[None], grid.angles[k:k + 1], self.config.grid_step,
                                    self.config.angle_tol(norm, tol))
            values, points = self.support_points(T.data, polished.argbest)
            grid = grid.merged(polished.argbest, values, points)

        # |p| can be flat along an arc of angles; h peaks only where e^{i theta} p is real
        theta_star = float(wrap_angle(grid.angles[int(np.argmax(grid.values))]))
        maximizer = UnitVector.normalize(self.top_vector(T.data, theta_star))
        omega = grid.lower
        return RadiusResult(omega=omega, theta_star=theta_star, maximizer=maximizer,
                            enclosure=(omega, max(upper, omega)))

    def crawford_number(self, T: CMatrix, tol: float = None) -> float:
        tol = self._positive(tol, self.config.radius_tol)
        if T.is_zero():
            return 0.0
        angles = TWO_PI * np.arange(self.config.theta_grid) / self.config.theta_grid
        lows = self.support_values(T.data[None], angles, lowest=True)[0]
        k = int(np.argmax(lows))
        bracket = self._refine(T.data[None], angles[k:k + 1], self.config.grid_step,
                               self.config.angle_tol(self.norm(T), tol), lowest=True)
        return max(0.0, float(lows[k]), float(bracket.best[0]))

    def boundary_points(self, T: CMatrix, count: int) -> List[complex]:
        if count < 3:
            raise ParameterError(f'count must be at least 3, got {count}')
        angles = TWO_PI * np.arange(count) / count
        _, points = self.support_points(T.data, angles)
        return [complex(p) for p in points]

    def radius_enclosure(self, T: CMatrix, grid: int = None) -> Tuple[float, float]:
        grid = grid or self.config.theta_grid
        if grid < 8:
            raise ParameterError(f'grid must be at least 8, got {grid}')
        if T.is_zero():
            return 0.0, 0.0
        angles = TWO_PI * np.arange(grid) / grid
        lower = float(np.max(self.support_values(T.data[None], angles)[0]))
        return lower, lower + self.norm(T) * math.pi / grid

    def maximizers(self, T: CMatrix, tol: float = None) -> MaximizerSet:
        tol = self._positive(tol, self.config.maximizer_tol)
        if T.is_zero():
            raise DegenerateOperatorError('the zero matrix has no distinguished maximizers')
        radius = self.numerical_radius(T)
        omega = radius.omega
        grid = self.support_grid(T, self.config.theta_grid)
        values = grid.values
        count = values.size
        step = self.config.grid_step

        peaks = np.flatnonzero((values >= np.roll(values, 1)) & (values >= np.roll(values, -1)))
        bracket = self._refine(np.repeat(T.data[None], peaks.size, axis=0), grid.angles[peaks], step,
                               self.config.angle_tol(grid.norm))
        candidates = {}
        for angle, value in zip(np.concatenate([grid.angles, bracket.argbest, [radius.theta_star]]),
                                np.concatenate([values, bracket.best, [omega]])):
            if value < omega - tol:
                continue
            cell = int(np.round(wrap_angle(angle) / step)) % count
            if cell not in candidates or value > candidates[cell][1]:
                candidates[cell] = (float(wrap_angle(angle)), float(value))

        entries = []
        for angle, _ in sorted(candidates.values()):
            w, v = self.eigh(self._rotated(T, angle))
            for j in np.flatnonzero(w >= omega - tol):
                vector = UnitVector.normalize(v[:, j])
                value = quadratic_form(T, vector)
                if abs(value) >= omega - 10 * tol:
                    entries.append(Maximizer(theta=angle, vector=vector, value=value))
        logger.info('maximizer set: %d vectors over %d angles', len(entries), len(candidates))
        return MaximizerSet(entries=tuple(entries))

    @staticmethod
    def _rotated(T: CMatrix, angle: float) -> np.ndarray:
        rotated = np.exp(1j * angle) * T.data
        return (rotated + rotated.conj().T) / 2.0

    def radius_many(self, stack: np.ndarray, support: SupportGrid = None, rho: float = 0.0,
                    tol: float = None) -> Tuple[np.ndarray, np.ndarray]:
        """omega for every matrix of a (B, n, n) stack, with the maximizing angle.

        With `support` (the grid of some T) every matrix must be T + E with
        ||E|| <= rho; only cells whose certified bound of h_T reaches
        max h_T - 2 rho can carry the maximum, since H_phi moves by at most ||E||.
        Every cell next to a sampled local maximum of h whose certified bound
        still exceeds the best sample by `tol` is golden-refined, so peaks that
        nearly tie between grid angles are all resolved.
        """
        stack = np.asarray(stack, dtype=np.complex128)
        if stack.ndim == 2:
            stack = stack[None]
        tol = self._positive(tol, self.config.radius_tol)
        if support is None:
            support_angles = TWO_PI * np.arange(self.config.inner_grid) / self.config.inner_grid
            cells = np.arange(support_angles.size)
        else:
            support_angles = support.angles
            cells = support.candidate_cells(support.peak - 2.0 * rho)
        following = (cells + 1) % support_angles.size
        ends = np.unique(np.concatenate([cells, following]))

        # unsampled grid angles lie in cells that cannot carry the maximum
        sampled = np.full((stack.shape[0], support_angles.size), -np.inf)
        sampled[:, ends] = self.support_values(stack, support_angles[ends])
        peaks = (sampled >= np.roll(sampled, 1, axis=1)) & (sampled >= np.roll(sampled, -1, axis=1))
        k = np.argmax(sampled, axis=1)
        best = sampled[np.arange(stack.shape[0]), k]
        best_angle = support_angles[k]

        # Frobenius norms bound the Lipschitz constant of each h
        norms = np.sqrt(np.sum(np.abs(stack) ** 2, axis=(1, 2)))
        a, b = cell_ends(support_angles, cells)
        bounds = cell_upper_bounds(a, b, sampled[:, cells], sampled[:, following], norms[:, None])
        owner, cell = np.nonzero((bounds > best[:, None] + tol) & (peaks[:, cells] | peaks[:, following]))
        if owner.size == 0:
            return np.maximum(best, 0.0), wrap_angle(best_angle)

        members = stack[owner]
        bracket = golden_section_search(lambda phi: self.support_values_at(members, phi), a[cell], b[cell],
                                        self.config.angle_tol(float(np.max(norms)), tol), maximize=True)
        previous = best.copy()
        np.maximum.at(best, owner, bracket.best)
        won = (bracket.best > previous[owner]) & (bracket.best == best[owner])
        best_angle[owner[won]] = bracket.argbest[won]
        logger.debug('batched radius: refined %d cells over %d matrices', owner.size, stack.shape[0])
        return np.maximum(best, 0.0), wrap_angle(best_angle)
