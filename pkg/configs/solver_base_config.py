import copy
import logging
from dataclasses import dataclass, fields
from typing import Type

from configs.solver_interface import (
    BaseConfig,
    EIGENSOLVER_ENUMS,
    PROFILE_ENUMS,
    PROFILE
)
from configs.profile_default import DEFAULT
from configs.profile_fast import FAST
from module.base.errors import ParameterError
from module.file_operation import read_yml

logger = logging.getLogger(__name__)

PROFILES = {
    PROFILE_ENUMS.DEFAULT.value: DEFAULT,
    PROFILE_ENUMS.FAST.value: FAST
}


@dataclass
class Base(BaseConfig):
    profile: str = PROFILE_ENUMS.DEFAULT.value
    eigensolver: str = EIGENSOLVER_ENUMS.JACOBI.value
    jacobi_tol: float = 1e-14
    jacobi_max_sweeps: int = 64
    radius_tol: float = 1e-10
    theta_grid: int = 1024
    inner_grid: int = 256
    max_refine_cells: int = 1 << 15
    search_grid: int = 1024
    direct_grid: int = 128
    derivative_tol: float = 1e-8
    max_halvings: int = 60
    decision_tol: float = 1e-9
    maximizer_tol: float = 1e-8
    oracle_tol: float = 1e-8
    r_max_factor: float = 1.01
    seed: int = 0
    output_digits: int = 12

    def __init__(self, profile: Type[PROFILE] = DEFAULT, **overrides):
        super().__init__()
        self.profile = profile.__name__
        self.eigensolver = profile.EIGENSOLVER
        self.jacobi_tol = profile.JACOBI_TOL
        self.jacobi_max_sweeps = profile.JACOBI_MAX_SWEEPS
        self.radius_tol = profile.RADIUS_TOL
        self.theta_grid = profile.THETA_GRID
        self.inner_grid = profile.INNER_GRID
        self.max_refine_cells = profile.MAX_REFINE_CELLS
        self.search_grid = profile.SEARCH_GRID
        self.direct_grid = profile.DIRECT_GRID
        self.derivative_tol = profile.DERIVATIVE_TOL
        self.max_halvings = profile.MAX_HALVINGS
        self.decision_tol = profile.DECISION_TOL
        self.maximizer_tol = profile.MAXIMIZER_TOL
        self.oracle_tol = profile.ORACLE_TOL
        self.r_max_factor = profile.R_MAX_FACTOR
        self.seed = profile.SEED
        self.output_digits = profile.OUTPUT_DIGITS
        self._apply(overrides)

    def with_overrides(self, **overrides) -> 'Base':
        config = copy.copy(self)
        config._apply(overrides)
        return config

    def _apply(self, overrides: dict):
        known = {f.name: f.type for f in fields(self)}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known or key == 'profile':
                raise ParameterError(f'unknown solver knob: {key}')
            if key == 'eigensolver':
                allowed = [e.value for e in EIGENSOLVER_ENUMS]
                if value not in allowed:
                    raise ParameterError(f'eigensolver must be one of {allowed}, got {value!r}')
            elif key == 'seed':
                value = int(value)
                if not 0 <= value < 2 ** 64:
                    raise ParameterError(f'seed out of range: {value}')
            elif known[key] in (int, 'int'):
                value = int(value)
                if value <= 0:
                    raise ParameterError(f'{key} must be positive, got {value}')
            else:
                value = float(value)
                if not value > 0.0:
                    raise ParameterError(f'{key} must be positive, got {value}')
            setattr(self, key, value)


def load_config(profile: str = PROFILE_ENUMS.DEFAULT.value, path: str = None, **overrides) -> Base:
    """Builds a solver config from a profile name, an optional YAML file and keyword overrides.

    Keyword overrides win over the file; the file wins over the profile.
    """
    try:
        profile_cls = PROFILES[str(profile).upper()]
    except KeyError:
        raise ParameterError(f'unknown profile: {profile}') from None
    knobs = {}
    if path:
        data = read_yml(path) or {}
        if not isinstance(data, dict):
            raise ParameterError(f'config file {path} must hold a mapping')
        knobs.update({str(k).lower(): v for k, v in data.items()})
    knobs.update({k: v for k, v in overrides.items() if v is not None})
    config = Base(profile_cls, **knobs)
    logger.info('solver config: profile=%s eigensolver=%s', config.profile, config.eigensolver)
    return config
