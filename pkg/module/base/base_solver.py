# flake8: noqa E501
import logging
import math
import os
import re
from typing import Tuple

import numpy as np

from configs.solver_base_config import Base as SolverConfig
from module.linalg.linalg_core import (
    eigh_stack,
    eigvalsh_stack,
    hermitian_parts
)
from testdata.base.base_testdata import (
    TestData,
    TestDataUnitKeys
)
logger = logging.getLogger(__name__)


class Base(object):
    data: TestData
    config: SolverConfig

    # complex entries per eigensolver batch; keeps a batch near 32 MB
    CHUNK_ENTRIES = 1 << 21

    def __init__(self, config: SolverConfig, test_data: TestData = None) -> None:
        self.config = config
        self.data = test_data

    def eigvalsh(self, stack: np.ndarray) -> np.ndarray:
        return eigvalsh_stack(stack, method=self.config.eigensolver,
                              tol=self.config.jacobi_tol, max_sweeps=self.config.jacobi_max_sweeps)

    def eigh(self, stack: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return eigh_stack(stack, method=self.config.eigensolver,
                          tol=self.config.jacobi_tol, max_sweeps=self.config.jacobi_max_sweeps)

    def _chunks(self, rows: int, cols: int, n: int):
        per_chunk = max(1, self.CHUNK_ENTRIES // (n * n))
        col_step = min(cols, per_chunk)
        row_step = max(1, per_chunk // col_step)
        for r in range(0, rows, row_step):
            for c in range(0, cols, col_step):
                yield slice(r, min(r + row_step, rows)), slice(c, min(c + col_step, cols))

    def support_values(self, stack: np.ndarray, angles: np.ndarray, lowest: bool = False) -> np.ndarray:
        """Top (or bottom) eigenvalue of H_phi(A_b) for every matrix and angle, shape (B, P)."""
        stack = np.asarray(stack, dtype=np.complex128)
        angles = np.atleast_1d(np.asarray(angles, dtype=float))
        out = np.empty((stack.shape[0], angles.size))
        for rows, cols in self._chunks(stack.shape[0], angles.size, stack.shape[-1]):
            values = self.eigvalsh(hermitian_parts(stack[rows], angles[cols]))
            out[rows, cols] = values[..., 0] if lowest else values[..., -1]
        return out

    def support_values_at(self, stack: np.ndarray, angles: np.ndarray, lowest: bool = False) -> np.ndarray:
        """Same as support_values but with one angle per matrix, shape (B,)."""
        stack = np.asarray(stack, dtype=np.complex128)
        phases = np.exp(1j * np.asarray(angles, dtype=float))[:, None, None]
        rotated = phases * stack
        H = (rotated + np.conj(np.swapaxes(rotated, -1, -2))) / 2.0
        values = self.eigvalsh(H)
        return values[..., 0] if lowest else values[..., -1]

    def support_points(self, T: np.ndarray, angles: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """h(phi) and the support point <T x_phi, x_phi> for one matrix at many angles."""
        T = np.asarray(T, dtype=np.complex128)
        angles = np.atleast_1d(np.asarray(angles, dtype=float))
        values = np.empty(angles.size)
        points = np.empty(angles.size, dtype=np.complex128)
        for _, cols in self._chunks(1, angles.size, T.shape[-1]):
            w, v = self.eigh(hermitian_parts(T[None], angles[cols])[0])
            top = v[..., -1]
            values[cols] = w[..., -1]
            points[cols] = np.einsum('pi,ij,pj->p', np.conj(top), T, top)
        return values, points

    def top_vector(self, T: np.ndarray, angle: float) -> np.ndarray:
        w, v = self.eigh(hermitian_parts(np.asarray(T, dtype=np.complex128)[None], [angle])[0, 0])
        return v[:, -1]

    @staticmethod
    def testcase_name() -> str:
        current = os.environ.get('PYTEST_CURRENT_TEST', '')
        return current.split(':')[-1].split(' ')[0]

    def get_testdata_parameters(self, key: TestDataUnitKeys):
        testcase_name = self.testcase_name()
        content = self.data.data[TestDataUnitKeys.content] if self.data else {}
        for name in (testcase_name, re.sub(r'\[.*\]$', '', testcase_name)):
            if name in content:
                return content[name][key]
        logger.info(f'not found key in test data: {testcase_name}')
        return {}


class BaseAssertion:
    @classmethod
    def log_assert(cls, func, messages):
        if not func:
            logging.error(messages)
        assert func, messages

    @classmethod
    def verify_close(cls, actual: float, expected: float, tol: float, label: str = 'value'):
        cls.log_assert(math.isfinite(actual) and abs(actual - expected) <= tol,
                       "Assertion Failure, {} is not within {:g} of expected. act: {!r}, exp: {!r}".format(
                           label, tol, actual, expected))

    @classmethod
    def verify_at_most(cls, actual: float, bound: float, tol: float, label: str = 'value'):
        cls.log_assert(actual <= bound + tol,
                       "Assertion Failure, {} exceeds its bound. act: {!r}, bound: {!r}, tol: {:g}".format(
                           label, actual, bound, tol))

    @classmethod
    def verify_within(cls, actual: float, lower: float, upper: float, label: str = 'value'):
        cls.log_assert(lower <= actual <= upper,
                       "Assertion Failure, {} is outside [{!r}, {!r}]. act: {!r}".format(
                           label, lower, upper, actual))

    @classmethod
    def verify_verdict(cls, actual: bool, expected: bool, context: str = ''):
        cls.log_assert(bool(actual) == bool(expected),
                       "Assertion Failure, verdict is not expected. act: {}, exp: {} {}".format(
                           actual, expected, context))
