"""Dense complex matrices, rotated Hermitian parts and Hermitian eigensolvers.

Everything here works on plain complex128 arrays underneath; `CMatrix` and
`UnitVector` are immutable wrappers that validate shape and finiteness once so
the solvers above can trust their inputs.

Rotation convention used across the package:

    H_theta(T) = (e^{i theta} T + e^{-i theta} T*) / 2

so that <H_theta x, x> = Re(e^{i theta} <Tx, x>) and the top eigenvalue of
H_theta is the support function of the numerical range in direction theta.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Tuple, Union

import numpy as np

from configs.solver_interface import EIGENSOLVER_ENUMS
from module.base.errors import (
    MatrixError,
    DimensionError,
    NotHermitianError
)

logger = logging.getLogger(__name__)

MAX_DIMENSION = 64
HERMITIAN_TOL = 1e-12
UNIT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CMatrix:
    data: np.ndarray

    def __post_init__(self):
        try:
            array = np.array(self.data, dtype=np.complex128)
        except (TypeError, ValueError) as e:
            raise MatrixError(f'matrix entries are not numeric: {e}') from None
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DimensionError(f'matrix must be square, got shape {array.shape}')
        if not 1 <= array.shape[0] <= MAX_DIMENSION:
            raise DimensionError(f'dimension must be in 1..{MAX_DIMENSION}, got {array.shape[0]}')
        if not np.all(np.isfinite(array)):
            raise MatrixError('matrix entries must be finite')
        array.setflags(write=False)
        object.__setattr__(self, 'data', array)

    @classmethod
    def identity(cls, n: int) -> 'CMatrix':
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def zeros(cls, n: int) -> 'CMatrix':
        return cls(np.zeros((n, n), dtype=np.complex128))

    @classmethod
    def diag(cls, values: Iterable[complex]) -> 'CMatrix':
        return cls(np.diag(np.asarray(list(values), dtype=np.complex128)))

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.data))))
        return bool(np.max(np.abs(self.data - self.data.conj().T)) <= tol * scale)

    def tolist(self) -> list:
        return self.data.tolist()

    def __getitem__(self, index):
        return self.data[index]

    def __add__(self, other: 'CMatrix') -> 'CMatrix':
        _check_same_dimension(self, other)
        return CMatrix(self.data + other.data)

    def __sub__(self, other: 'CMatrix') -> 'CMatrix':
        _check_same_dimension(self, other)
        return CMatrix(self.data - other.data)

    def __neg__(self) -> 'CMatrix':
        return CMatrix(-self.data)

    def __mul__(self, scalar: complex) -> 'CMatrix':
        if isinstance(scalar, CMatrix):
            return NotImplemented
        return CMatrix(complex(scalar) * self.data)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, CMatrix):
            _check_same_dimension(self, other)
            return CMatrix(self.data @ other.data)
        if isinstance(other, UnitVector):
            other = other.data
        vector = np.asarray(other, dtype=np.complex128)
        if vector.shape != (self.n,):
            raise DimensionError(f'vector of length {vector.shape} does not match n={self.n}')
        return self.data @ vector

    def __eq__(self, other) -> bool:
        if not isinstance(other, CMatrix):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.data.shape, (self.data + 0.0).tobytes()))

    def __repr__(self) -> str:
        return f'CMatrix({self.data.tolist()!r})'


@dataclass(frozen=True, eq=False)
class UnitVector:
    data: np.ndarray

    def __post_init__(self):
        vector = np.array(self.data, dtype=np.complex128).reshape(-1)
        if vector.size == 0 or not np.all(np.isfinite(vector)):
            raise MatrixError('unit vector must be nonempty and finite')
        if abs(np.linalg.norm(vector) - 1.0) > UNIT_TOL:
            raise MatrixError(f'vector norm {np.linalg.norm(vector)!r} is not 1')
        vector.setflags(write=False)
        object.__setattr__(self, 'data', vector)

    @classmethod
    def normalize(cls, vector) -> 'UnitVector':
        vector = np.asarray(vector, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(vector)
        if not norm > 0.0 or not np.isfinite(norm):
            raise MatrixError('cannot normalize a zero or non-finite vector')
        return cls(vector / norm)

    @classmethod
    def basis(cls, n: int, k: int = 0) -> 'UnitVector':
        vector = np.zeros(n, dtype=np.complex128)
        vector[k] = 1.0
        return cls(vector)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, index):
        return self.data[index]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnitVector):
            return NotImplemented
        return bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash(self.data.tobytes())

    def __repr__(self) -> str:
        return f'UnitVector({self.data.tolist()!r})'


Vector = Union[UnitVector, np.ndarray, list]


def _check_same_dimension(a: CMatrix, b: CMatrix):
    if a.n != b.n:
        raise DimensionError(f'dimension mismatch: {a.n} vs {b.n}')


def as_vector(vector: Vector) -> np.ndarray:
    if isinstance(vector, UnitVector):
        return vector.data
    return np.asarray(vector, dtype=np.complex128).reshape(-1)


def adjoint(T: CMatrix) -> CMatrix:
    return CMatrix(T.data.conj().T)


def hermitian_part(T: CMatrix, theta: float) -> CMatrix:
    rotated = np.exp(1j * theta) * T.data
    return CMatrix((rotated + rotated.conj().T) / 2.0)


def hermitian_parts(stack: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """H_phi(A_b) for every matrix of a (B, n, n) stack and every angle, shape (B, P, n, n)."""
    phases = np.exp(1j * np.asarray(angles, dtype=float))[None, :, None, None]
    rotated = phases * stack[:, None, :, :]
    return (rotated + np.conj(np.swapaxes(rotated, -1, -2))) / 2.0


def jacobi_eigh(H: np.ndarray, tol: float = 1e-14, max_sweeps: int = 64,
                vectors: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for complex Hermitian matrices, batched.

    Works on (..., n, n) stacks. Each (p, q) step applies the unitary
    U = diag(1, e^{-i alpha}) [[c, s], [-s, c]] in the (p, q) plane, where
    alpha is the phase of H_pq, so the off-diagonal pair is annihilated exactly.
    A matrix stops rotating once its off-diagonal Frobenius mass drops below
    tol * ||H||_F.

    Returns ascending eigenvalues and, if requested, eigenvectors as columns.
    """
    A = np.array(H, dtype=np.complex128, copy=True)
    batch_shape = A.shape[:-2]
    n = A.shape[-1]
    A = A.reshape((-1, n, n))
    count = A.shape[0]
    V = np.broadcast_to(np.eye(n, dtype=np.complex128), (count, n, n)).copy() if vectors else None

    scale = np.sqrt(np.sum(np.abs(A) ** 2, axis=(1, 2)))
    diagonal = np.eye(n, dtype=bool)
    empty = scale == 0.0
    for sweep in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(A[:, ~diagonal]) ** 2, axis=1))
        active = off > tol * scale
        if not active.any():
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[:, p, q]
                magnitude = np.abs(apq)
                rotate = active & (magnitude > 0.0)
                if not rotate.any():
                    continue
                safe = np.where(rotate, magnitude, 1.0)
                phase = np.where(rotate, apq / safe, 1.0)
                tau = (A[:, q, q].real - A[:, p, p].real) / (2.0 * safe)
                with np.errstate(over='ignore'):
                    t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(tau * tau + 1.0))
                t = np.where(rotate, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                c_col, s_col = c[:, None], s[:, None]
                unphase = np.conj(phase)[:, None]

                col_p = A[:, :, p].copy()
                col_q = A[:, :, q].copy()
                A[:, :, p] = c_col * col_p - s_col * unphase * col_q
                A[:, :, q] = s_col * col_p + c_col * unphase * col_q

                row_p = A[:, p, :].copy()
                row_q = A[:, q, :].copy()
                A[:, p, :] = c_col * row_p - s_col * phase[:, None] * row_q
                A[:, q, :] = s_col * row_p + c_col * phase[:, None] * row_q

                A[rotate, p, q] = 0.0
                A[rotate, q, p] = 0.0
                A[:, p, p] = A[:, p, p].real
                A[:, q, q] = A[:, q, q].real

                if vectors:
                    vec_p = V[:, :, p].copy()
                    vec_q = V[:, :, q].copy()
                    V[:, :, p] = c_col * vec_p - s_col * unphase * vec_q
                    V[:, :, q] = s_col * vec_p + c_col * unphase * vec_q
        logger.debug('jacobi sweep %d: %d of %d matrices still rotating', sweep, int(active.sum()), count)
    else:
        off = np.sqrt(np.sum(np.abs(A[:, ~diagonal]) ** 2, axis=1))
        stalled = int(np.sum((off > tol * scale) & ~empty))
        if stalled:
            logger.warning('jacobi eigensolver did not converge in %d sweeps for %d matrices',
                           max_sweeps, stalled)

    values = np.real(np.diagonal(A, axis1=1, axis2=2)).copy()
    order = np.argsort(values, axis=1, kind='stable')
    values = np.take_along_axis(values, order, axis=1).reshape(batch_shape + (n,))
    if not vectors:
        return values, None
    V = np.take_along_axis(V, order[:, None, :], axis=2).reshape(batch_shape + (n, n))
    return values, V


def eigh_stack(stack: np.ndarray, method: str = EIGENSOLVER_ENUMS.JACOBI.value,
               tol: float = 1e-14, max_sweeps: int = 64) -> Tuple[np.ndarray, np.ndarray]:
    if method == EIGENSOLVER_ENUMS.LAPACK.value:
        return np.linalg.eigh(stack)
    return jacobi_eigh(stack, tol=tol, max_sweeps=max_sweeps, vectors=True)


def eigvalsh_stack(stack: np.ndarray, method: str = EIGENSOLVER_ENUMS.JACOBI.value,
                   tol: float = 1e-14, max_sweeps: int = 64) -> np.ndarray:
    if method == EIGENSOLVER_ENUMS.LAPACK.value:
        return np.linalg.eigvalsh(stack)
    return jacobi_eigh(stack, tol=tol, max_sweeps=max_sweeps, vectors=False)[0]


def herm_eig_max(H: CMatrix, method: str = EIGENSOLVER_ENUMS.JACOBI.value) -> Tuple[float, UnitVector]:
    if not H.is_hermitian():
        raise NotHermitianError('herm_eig_max needs a Hermitian matrix')
    values, vectors = eigh_stack(np.asarray(H.data), method=method)
    return float(values[-1]), UnitVector.normalize(vectors[:, -1])


def _gram(stack: np.ndarray) -> np.ndarray:
    gram = np.conj(np.swapaxes(stack, -1, -2)) @ stack
    return (gram + np.conj(np.swapaxes(gram, -1, -2))) / 2.0


def spectral_norm(T: CMatrix, method: str = EIGENSOLVER_ENUMS.JACOBI.value) -> float:
    value, _ = herm_eig_max(CMatrix(_gram(T.data)), method=method)
    return float(np.sqrt(max(value, 0.0)))


def spectral_norms(stack: np.ndarray, method: str = EIGENSOLVER_ENUMS.JACOBI.value) -> np.ndarray:
    values = eigvalsh_stack(_gram(np.asarray(stack, dtype=np.complex128)), method=method)
    return np.sqrt(np.maximum(values[..., -1], 0.0))


def rank_one(x: Vector, y: Vector) -> CMatrix:
    x, y = as_vector(x), as_vector(y)
    if x.shape != y.shape:
        raise DimensionError(f'rank_one needs equal lengths, got {x.shape[0]} and {y.shape[0]}')
    return CMatrix(np.outer(x, y.conj()))


def inner(x: Vector, y: Vector) -> complex:
    x, y = as_vector(x), as_vector(y)
    if x.shape != y.shape:
        raise DimensionError(f'inner product needs equal lengths, got {x.shape[0]} and {y.shape[0]}')
    return complex(np.vdot(y, x))


def quadratic_form(T: CMatrix, x: Vector) -> complex:
    return inner(T @ as_vector(x), x)
