from configs.solver_interface import (
    PROFILE,
    EIGENSOLVER_ENUMS
)
from dataclasses import dataclass


@dataclass
class DEFAULT(PROFILE):
    EIGENSOLVER = EIGENSOLVER_ENUMS.JACOBI.value
    JACOBI_TOL = 1e-14
    JACOBI_MAX_SWEEPS = 64
    RADIUS_TOL = 1e-10
    THETA_GRID = 1024
    INNER_GRID = 256
    MAX_REFINE_CELLS = 1 << 15
    SEARCH_GRID = 1024
    DIRECT_GRID = 128
    DERIVATIVE_TOL = 1e-8
    MAX_HALVINGS = 60
    DECISION_TOL = 1e-9
    MAXIMIZER_TOL = 1e-8
    ORACLE_TOL = 1e-8
    R_MAX_FACTOR = 1.01
    SEED = 20240611
    OUTPUT_DIGITS = 12
