import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from module.base.base_solver import BaseAssertion
from module.base.errors import DegenerateOperatorError, ParameterError
from module.linalg.linalg_core import CMatrix, quadratic_form
from module.numrange.numrange import NumericalRange, RadiusResult
from module.oracle.generators import InstanceGenerator
from module.settings import Settings
from testdata.base.base_testdata import TestDataUnitKeys


@pytest.fixture(scope="module", autouse=True)
def _setup(setup: Settings):
    setup.testsuite_controller = NumericalRange(setup.config, setup.test_data)
    yield setup


@pytest.fixture(scope="function", autouse=True)
def params(setup: Settings):
    params = setup.testsuite_controller.get_testdata_parameters(TestDataUnitKeys.parameters)
    yield params


@pytest.fixture(scope="function", autouse=True)
def expect_result(setup: Settings):
    expect_result = setup.testsuite_controller.get_testdata_parameters(TestDataUnitKeys.expect)
    yield expect_result


@pytest.mark.reference
class TestNumericalRadius:
    def test_numerical_radius_reference_values(self, setup: Settings, params, expect_result):
        for name, rows in params['cases'].items():
            result = setup.testsuite_controller.numerical_radius(CMatrix(rows))
            TestNumericalRangeValidation.verify_close(result.omega, expect_result['omega'][name],
                                                      expect_result['tol'], f'omega({name})')

    def test_radius_enclosure_is_certified(self, setup: Settings, params, expect_result):
        for name, rows in params['cases'].items():
            result = setup.testsuite_controller.numerical_radius(CMatrix(rows))
            TestNumericalRangeValidation.verify_enclosure(result, expect_result['omega'][name],
                                                          setup.config.radius_tol, expect_result['tol'])

    def test_theta_star_of_diag_i(self, setup: Settings, params, expect_result):
        result = setup.testsuite_controller.numerical_radius(CMatrix(params['T']))
        TestNumericalRangeValidation.verify_close(result.theta_star, expect_result['theta_star'],
                                                  expect_result['tol'], 'theta*')
        TestNumericalRangeValidation.verify_close(abs(result.maximizer[0]) ** 2, expect_result['maximizer_weight'],
                                                  expect_result['tol'], '|x_1|^2')

    def test_zero_matrix(self, setup: Settings):
        result = setup.testsuite_controller.numerical_radius(CMatrix.zeros(3))
        assert result.omega == 0.0
        assert result.enclosure == (0.0, 0.0)

    def test_maximizer_attains_radius(self, setup: Settings):
        generator = InstanceGenerator(setup.config.seed)
        for T in generator.stream('general', 10, normalize=True):
            result = setup.testsuite_controller.numerical_radius(T)
            TestNumericalRangeValidation.verify_close(abs(quadratic_form(T, result.maximizer)), result.omega,
                                                      1e-8, '|<Tx, x>|')

    def test_rejects_non_positive_tolerance(self, setup: Settings):
        with pytest.raises(ParameterError):
            setup.testsuite_controller.numerical_radius(CMatrix.identity(2), tol=0.0)


class TestNumericalRange:
    def test_crawford_number_values(self, setup: Settings, params, expect_result):
        for name, rows in params['cases'].items():
            value = setup.testsuite_controller.crawford_number(CMatrix(rows))
            TestNumericalRangeValidation.verify_close(value, expect_result['crawford'][name],
                                                      expect_result['tol'], f'c({name})')

    def test_boundary_points_of_identity(self, setup: Settings, params, expect_result):
        points = setup.testsuite_controller.boundary_points(CMatrix.identity(params['n']), params['count'])
        assert len(points) == params['count']
        assert_allclose(points, [expect_result['point']] * params['count'], atol=1e-12)

    def test_boundary_points_lie_inside_the_radius(self, setup: Settings):
        T = CMatrix([[1, 1], [0, -1]])
        omega = setup.testsuite_controller.numerical_radius(T).omega
        points = setup.testsuite_controller.boundary_points(T, 64)
        TestNumericalRangeValidation.verify_at_most(float(np.max(np.abs(points))), omega, 1e-10, 'max |p|')

    def test_boundary_points_needs_three_samples(self, setup: Settings):
        with pytest.raises(ParameterError):
            setup.testsuite_controller.boundary_points(CMatrix.identity(2), 2)

    def test_radius_enclosure_brackets_the_radius(self, setup: Settings):
        T = CMatrix([[0.5, 1], [0, -1]])
        lower, upper = setup.testsuite_controller.radius_enclosure(T, grid=16)
        TestNumericalRangeValidation.verify_within((1.0 + math.sqrt(13.0)) / 4.0, lower - 1e-12, upper + 1e-12,
                                                   'omega')
        with pytest.raises(ParameterError):
            setup.testsuite_controller.radius_enclosure(T, grid=4)

    def test_radius_many_matches_numerical_radius(self, setup: Settings):
        generator = InstanceGenerator(setup.config.seed)
        matrices = list(generator.stream('general', 12, n=3, normalize=True))
        omegas, _ = setup.testsuite_controller.radius_many(np.stack([T.data for T in matrices]))
        expected = [setup.testsuite_controller.numerical_radius(T).omega for T in matrices]
        assert_allclose(omegas, expected, rtol=0, atol=1e-8)


class TestNearlyTiedPeaks:
    # h peaks at pi/256 (value 1) and at pi (value 0.99995); the first sits between coarse grid angles
    T = CMatrix.diag([np.exp(-1j * math.pi / 256), -0.99995])

    def test_radius_many_resolves_the_higher_peak(self, setup: Settings):
        omegas, angles = setup.testsuite_controller.radius_many(self.T.data)
        TestNumericalRangeValidation.verify_close(omegas[0], 1.0, 1e-12, 'omega')
        TestNumericalRangeValidation.verify_close(angles[0], math.pi / 256, 1e-6, 'argmax angle')

    def test_radius_many_agrees_with_numerical_radius_on_shifts(self, setup: Settings):
        numerical_range = setup.testsuite_controller
        E = CMatrix.diag([np.exp(-1j * math.pi / 256), 0])
        lambdas = 2.0 ** -np.arange(1, 30)
        stack = self.T.data[None] + lambdas[:, None, None] * E.data[None]
        support = numerical_range.support_grid(self.T, setup.config.inner_grid)
        omegas, _ = numerical_range.radius_many(stack, support=support, rho=float(lambdas.max()))
        assert_allclose(omegas, 1.0 + lambdas, rtol=0, atol=1e-12)
        TestNumericalRangeValidation.verify_close(numerical_range.numerical_radius(self.T).omega, 1.0, 1e-12,
                                                  'omega')


class TestMaximizers:
    def test_unique_maximizer(self, setup: Settings):
        maximizers = setup.testsuite_controller.maximizers(CMatrix.diag([2, 0]))
        assert len(maximizers) >= 1
        for m in maximizers:
            TestNumericalRangeValidation.verify_close(abs(m.vector[0]), 1.0, 1e-6, '|x_1|')
            TestNumericalRangeValidation.verify_close(abs(m.value), 2.0, 1e-8, '|<Tx, x>|')

    def test_degenerate_top_eigenspace_contributes_a_basis(self, setup: Settings):
        maximizers = setup.testsuite_controller.maximizers(CMatrix.identity(2))
        vectors = np.array([m.vector.data for m in maximizers])
        assert np.linalg.matrix_rank(vectors, tol=1e-6) == 2

    def test_zero_matrix_has_no_maximizers(self, setup: Settings):
        with pytest.raises(DegenerateOperatorError):
            setup.testsuite_controller.maximizers(CMatrix.zeros(2))


class TestNumericalRangeValidation(BaseAssertion):
    @classmethod
    def verify_enclosure(cls, act: RadiusResult, exp: float, width: float, tol: float):
        cls.log_assert(act.lower <= act.omega <= act.upper,
                       f"Assertion Failure, omega is outside its enclosure. act: {act.omega!r}, enclosure: {act.enclosure}")
        cls.verify_within(exp, act.lower - tol, act.upper + tol, 'reference omega')
        cls.verify_at_most(act.width, width, 1e-12, 'enclosure width')
