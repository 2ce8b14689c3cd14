"""Seeded random instances for the property suites.

Streams are numpy `Generator(PCG64(seed))`; the same seed yields the same
instances on every platform numpy supports. Complex Gaussians are
(N(0,1) + i N(0,1)) / sqrt(2).
"""
import logging
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from module.base.errors import ParameterError
from module.linalg.linalg_core import (
    CMatrix,
    UnitVector,
    rank_one,
    spectral_norm
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Seed:
    value: int

    def __post_init__(self):
        if not isinstance(self.value, (int, np.integer)) or not 0 <= int(self.value) < 2 ** 64:
            raise ParameterError(f'seed must be an unsigned 64-bit integer, got {self.value!r}')


class InstanceGenerator:
    def __init__(self, seed):
        self.seed = seed if isinstance(seed, Seed) else Seed(int(seed))
        self._rng = np.random.Generator(np.random.PCG64(int(self.seed.value)))

    def complex_gaussian(self, *shape) -> np.ndarray:
        real = self._rng.standard_normal(shape)
        imag = self._rng.standard_normal(shape)
        return (real + 1j * imag) / np.sqrt(2.0)

    def dimension(self, low: int = 2, high: int = 6) -> int:
        return int(self._rng.integers(low, high + 1))

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        return float(self._rng.uniform(low, high))

    def epsilon(self) -> float:
        return self.uniform(0.0, 1.0)

    def scalar(self) -> complex:
        while True:
            value = complex(self.complex_gaussian(1)[0])
            if abs(value) > 1e-3:
                return value

    def angle(self) -> float:
        return self.uniform(0.0, 2.0 * np.pi)

    def general(self, n: int, normalize: bool = False) -> CMatrix:
        T = CMatrix(self.complex_gaussian(n, n))
        return _normalized(T) if normalize else T

    def hermitian(self, n: int, normalize: bool = False) -> CMatrix:
        A = self.complex_gaussian(n, n)
        H = CMatrix((A + A.conj().T) / 2.0)
        return _normalized(H) if normalize else H

    def positive(self, n: int, normalize: bool = False) -> CMatrix:
        A = self.complex_gaussian(n, n)
        G = A.conj().T @ A
        P = CMatrix((G + G.conj().T) / 2.0)
        return _normalized(P) if normalize else P

    def unitary(self, n: int) -> CMatrix:
        Q, R = np.linalg.qr(self.complex_gaussian(n, n))
        phases = np.diagonal(R) / np.abs(np.diagonal(R))
        return CMatrix(Q * phases[None, :])

    def nilpotent_rank_one(self, n: int) -> CMatrix:
        x = self.complex_gaussian(n)
        y = self.complex_gaussian(n)
        x = x / np.linalg.norm(x)
        y = y - np.vdot(x, y) * x
        return rank_one(x, y / np.linalg.norm(y))

    def unit_vector(self, n: int) -> UnitVector:
        return UnitVector.normalize(self.complex_gaussian(n))

    def stream(self, kind: str, count: int, n: int = None, **options) -> Iterator:
        make = getattr(self, kind, None)
        if make is None or kind.startswith('_'):
            raise ParameterError(f'unknown instance kind: {kind}')
        for _ in range(count):
            yield make(n if n is not None else self.dimension(), **options)


def _normalized(T: CMatrix) -> CMatrix:
    norm = spectral_norm(T, method='lapack')
    return T if norm == 0.0 else CMatrix(T.data / norm)
