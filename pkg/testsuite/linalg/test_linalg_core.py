import numpy as np
import pytest
from numpy.testing import assert_allclose

from module.base.base_solver import Base, BaseAssertion
from module.base.errors import DimensionError, MatrixError, NotHermitianError
from module.linalg.linalg_core import (
    CMatrix,
    UnitVector,
    adjoint,
    eigvalsh_stack,
    hermitian_part,
    herm_eig_max,
    inner,
    jacobi_eigh,
    quadratic_form,
    rank_one,
    spectral_norm
)
from module.oracle.generators import InstanceGenerator
from module.settings import Settings
from testdata.base.base_testdata import TestDataUnitKeys


@pytest.fixture(scope="module", autouse=True)
def _setup(setup: Settings):
    setup.testsuite_controller = Base(setup.config, setup.test_data)
    yield setup


@pytest.fixture(scope="function", autouse=True)
def params(setup: Settings):
    params = setup.testsuite_controller.get_testdata_parameters(TestDataUnitKeys.parameters)
    yield params


@pytest.fixture(scope="function", autouse=True)
def expect_result(setup: Settings):
    expect_result = setup.testsuite_controller.get_testdata_parameters(TestDataUnitKeys.expect)
    yield expect_result


@pytest.fixture(scope="function")
def generator(setup: Settings) -> InstanceGenerator:
    return InstanceGenerator(setup.config.seed)


class TestCMatrix:
    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            CMatrix(np.zeros((2, 3)))

    def test_rejects_large_dimension(self):
        with pytest.raises(DimensionError):
            CMatrix.zeros(65)

    def test_rejects_non_finite_entries(self):
        with pytest.raises(MatrixError):
            CMatrix([[np.nan, 0], [0, 1]])

    def test_backing_array_is_read_only(self):
        T = CMatrix.identity(2)
        with pytest.raises(ValueError):
            T.data[0, 0] = 2.0

    def test_arithmetic_and_equality(self):
        T = CMatrix([[1, 2j], [0, -1]])
        S = CMatrix.diag([1, 1j])
        assert T + S - S == T
        assert -(-T) == T
        assert (2 * T).data[0, 1] == 4j
        assert T @ CMatrix.identity(2) == T
        assert hash(CMatrix([[0.0]])) == hash(CMatrix([[-0.0]]))
        with pytest.raises(DimensionError):
            T + CMatrix.identity(3)

    def test_unit_vector_normalization(self):
        x = UnitVector.normalize([3, 4j])
        TestLinalgValidation.verify_close(float(np.linalg.norm(x.data)), 1.0, 1e-12, 'norm')
        with pytest.raises(MatrixError):
            UnitVector([1.0, 1.0])
        with pytest.raises(MatrixError):
            UnitVector.normalize([0, 0])


class TestLinalgCore:
    def test_adjoint_is_an_involution(self, generator: InstanceGenerator):
        for T in generator.stream('general', 50):
            assert adjoint(adjoint(T)) == T

    def test_hermitian_part_is_exactly_hermitian(self, generator: InstanceGenerator):
        for T in generator.stream('general', 50):
            H = hermitian_part(T, generator.angle())
            assert np.array_equal(H.data, H.data.conj().T)

    def test_hermitian_part_quadratic_form(self, generator: InstanceGenerator):
        for T in generator.stream('general', 100):
            theta = generator.angle()
            x = generator.unit_vector(T.n)
            expected = (np.exp(1j * theta) * quadratic_form(T, x)).real
            TestLinalgValidation.verify_close(quadratic_form(hermitian_part(T, theta), x).real, expected, 1e-12,
                                              '<H_theta x, x>')

    def test_herm_eig_max_dominates_quadratic_forms(self, generator: InstanceGenerator):
        for _ in range(100):
            n = generator.dimension(2, 8)
            H = generator.hermitian(n)
            value, vector = herm_eig_max(H)
            X = generator.complex_gaussian(1000, n)
            X /= np.linalg.norm(X, axis=1, keepdims=True)
            forms = np.einsum('ki,ij,kj->k', np.conj(X), H.data, X).real
            TestLinalgValidation.verify_at_most(float(forms.max()), value, 1e-10, 'quadratic form')
            TestLinalgValidation.verify_close(quadratic_form(H, vector).real, value, 1e-10, 'Rayleigh quotient')

    def test_herm_eig_max_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            herm_eig_max(CMatrix([[0, 1], [0, 0]]))

    def test_jacobi_agrees_with_lapack(self, generator: InstanceGenerator):
        for _ in range(50):
            n = generator.dimension(1, 8)
            H = generator.hermitian(n)
            jacobi = eigvalsh_stack(H.data, method='jacobi')
            lapack = eigvalsh_stack(H.data, method='lapack')
            assert_allclose(jacobi, lapack, rtol=0, atol=1e-10)

    def test_jacobi_eigenvectors_diagonalize(self, generator: InstanceGenerator):
        stack = np.stack([generator.hermitian(5).data for _ in range(20)])
        values, vectors = jacobi_eigh(stack)
        reconstructed = vectors @ (values[..., None] * np.conj(np.swapaxes(vectors, -1, -2)))
        assert_allclose(reconstructed, stack, rtol=0, atol=1e-10)
        assert np.all(np.diff(values, axis=-1) >= 0.0)

    def test_spectral_norm_of_unitary(self, generator: InstanceGenerator):
        for _ in range(50):
            U = generator.unitary(generator.dimension())
            TestLinalgValidation.verify_close(spectral_norm(U), 1.0, 1e-9, '||U||')

    def test_spectral_norm_reference_values(self, params, expect_result):
        for name, rows in params['matrices'].items():
            TestLinalgValidation.verify_close(spectral_norm(CMatrix(rows)), expect_result['norms'][name],
                                              expect_result['tol'], name)

    def test_norm_of_sum_at_lambda_one(self, params, expect_result):
        T, S = CMatrix(params['T']), CMatrix(params['S'])
        TestLinalgValidation.verify_close(spectral_norm(T + S) ** 2, expect_result['norm_squared'],
                                          expect_result['tol'], '||T + S||^2')

    def test_rank_one_and_inner(self):
        x, y = np.array([1, 1j]), np.array([2, 0])
        M = rank_one(x, y)
        assert_allclose(M.data, [[2, 0], [2j, 0]])
        assert inner(x, y) == 2
        with pytest.raises(DimensionError):
            rank_one([1, 2], [1, 2, 3])


class TestLinalgValidation(BaseAssertion):
    pass
