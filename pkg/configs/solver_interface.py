import abc
import math
from enum import Enum
from dataclasses import dataclass


class PROFILE_ENUMS(str, Enum):
    DEFAULT = 'DEFAULT'
    FAST = 'FAST'


class EIGENSOLVER_ENUMS(str, Enum):
    JACOBI = 'jacobi'
    LAPACK = 'lapack'


@dataclass
class PROFILE:
    EIGENSOLVER: str
    JACOBI_TOL: float
    JACOBI_MAX_SWEEPS: int
    RADIUS_TOL: float
    THETA_GRID: int
    INNER_GRID: int
    MAX_REFINE_CELLS: int
    SEARCH_GRID: int
    DIRECT_GRID: int
    DERIVATIVE_TOL: float
    MAX_HALVINGS: int
    DECISION_TOL: float
    MAXIMIZER_TOL: float
    ORACLE_TOL: float
    R_MAX_FACTOR: float
    SEED: int
    OUTPUT_DIGITS: int


@dataclass
class BaseConfig(abc.ABC):
    """Solver knobs shared by every controller.

    Concrete configs are built from a PROFILE class; derived tolerances live here
    so controllers never recompute them by hand.
    """

    def angle_tol(self, norm: float, tol: float = None) -> float:
        # golden-section stopping width for a support function with Lipschitz constant `norm`
        tol = self.radius_tol if tol is None else tol
        if norm <= 0.0:
            return tol
        return max(tol / norm, 1e-13)

    @property
    def grid_step(self) -> float:
        return 2.0 * math.pi / self.theta_grid

    @property
    def inner_step(self) -> float:
        return 2.0 * math.pi / self.inner_grid

    @property
    @abc.abstractmethod
    def eigensolver(self) -> str:
        raise NotImplementedError

    @property
    @abc.abstractmethod
    def radius_tol(self) -> float:
        raise NotImplementedError

    @property
    @abc.abstractmethod
    def theta_grid(self) -> int:
        raise NotImplementedError

    @property
    @abc.abstractmethod
    def inner_grid(self) -> int:
        raise NotImplementedError
