from configs.profile_default import DEFAULT
from configs.solver_interface import EIGENSOLVER_ENUMS
from dataclasses import dataclass


# seeded property suites: LAPACK kernels and coarser search grids
@dataclass
class FAST(DEFAULT):
    EIGENSOLVER = EIGENSOLVER_ENUMS.LAPACK.value
    THETA_GRID = 256
    INNER_GRID = 128
    SEARCH_GRID = 48
    DIRECT_GRID = 24
    DERIVATIVE_TOL = 1e-7
