import math

from testdata.base.base_testdata import TestData as TestDataBase, TestDataUnitKeys

SQRT2, SQRT5, SQRT13 = math.sqrt(2.0), math.sqrt(5.0), math.sqrt(13.0)

DIAG_I = [[1j, 0], [0, 0]]
SHIFTED_JORDAN = [[0, 1], [0, -1]]
UPPER_ONE = [[1, 1], [0, -1]]
UPPER_HALF = [[0.5, 1], [0, -1]]
JORDAN_ONE = [[1, 1], [0, 1]]
UPPER_MINUS = [[1, -1], [0, -1]]
DIAG_TWO = [[2, 0], [0, 0]]
DIAG_ONE = [[1, 0], [0, 0]]

RADII = {
    'diag-i': (DIAG_I, 1.0),
    'shifted-jordan': (SHIFTED_JORDAN, (1.0 + SQRT2) / 2.0),
    'upper-1-1-m1': (UPPER_ONE, SQRT5 / 2.0),
    'upper-half': (UPPER_HALF, (1.0 + SQRT13) / 4.0),
    'jordan-1': (JORDAN_ONE, 1.5),
    'upper-1-m1-m1': (UPPER_MINUS, SQRT5 / 2.0),
    'diag-2-0': (DIAG_TWO, 2.0),
}


class TestData(TestDataBase):
    data = {
        TestDataUnitKeys.content: {
            # linalg
            'test_spectral_norm_reference_values': {
                TestDataUnitKeys.parameters: {
                    'matrices': {'shifted-jordan': SHIFTED_JORDAN, 'diag-1-0': DIAG_ONE,
                                 'jordan-1': JORDAN_ONE}
                },
                TestDataUnitKeys.expect: {
                    'norms': {'shifted-jordan': SQRT2, 'diag-1-0': 1.0,
                              'jordan-1': (1.0 + SQRT5) / 2.0},
                    'tol': 1e-10
                }
            },
            'test_norm_of_sum_at_lambda_one': {
                TestDataUnitKeys.parameters: {'T': SHIFTED_JORDAN, 'S': DIAG_ONE},
                TestDataUnitKeys.expect: {'norm_squared': (3.0 + SQRT5) / 2.0, 'tol': 1e-10}
            },
            # numrange
            'test_numerical_radius_reference_values': {
                TestDataUnitKeys.parameters: {'cases': {k: v[0] for k, v in RADII.items()}},
                TestDataUnitKeys.expect: {'omega': {k: v[1] for k, v in RADII.items()}, 'tol': 1e-8}
            },
            'test_radius_enclosure_is_certified': {
                TestDataUnitKeys.parameters: {'cases': {k: v[0] for k, v in RADII.items()}},
                TestDataUnitKeys.expect: {'omega': {k: v[1] for k, v in RADII.items()}, 'tol': 1e-8}
            },
            'test_theta_star_of_diag_i': {
                TestDataUnitKeys.parameters: {'T': DIAG_I},
                TestDataUnitKeys.expect: {'theta_star': 1.5 * math.pi, 'maximizer_weight': 1.0, 'tol': 1e-6}
            },
            'test_crawford_number_values': {
                TestDataUnitKeys.parameters: {
                    'cases': {
                        'diag-1-2': [[1, 0], [0, 2]],
                        'diag-i': DIAG_I,
                        'shifted-disk': [[2, 1], [0, 2]],
                        'identity': [[1, 0], [0, 1]],
                        'diag-1-m1': [[1, 0], [0, -1]],
                    }
                },
                TestDataUnitKeys.expect: {
                    'crawford': {'diag-1-2': 1.0, 'diag-i': 0.0, 'shifted-disk': 1.5, 'identity': 1.0,
                                 'diag-1-m1': 0.0},
                    'tol': 1e-8
                }
            },
            'test_boundary_points_of_identity': {
                TestDataUnitKeys.parameters: {'n': 3, 'count': 4},
                TestDataUnitKeys.expect: {'point': 1.0}
            },
            # wderiv
            'test_inf_derivative_reference_values': {
                TestDataUnitKeys.parameters: {
                    'cases': {
                        'diag-i-vs-shifted-jordan': (DIAG_I, SHIFTED_JORDAN),
                        'shifted-jordan-vs-diag-i': (SHIFTED_JORDAN, DIAG_I),
                        'diag-2-0-vs-jordan-1': (DIAG_TWO, JORDAN_ONE),
                    }
                },
                TestDataUnitKeys.expect: {
                    'value': {
                        'diag-i-vs-shifted-jordan': 0.0,
                        'shifted-jordan-vs-diag-i': -1.0 / (4.0 * SQRT2),
                        'diag-2-0-vs-jordan-1': -2.0,
                    },
                    'tol': 1e-6
                }
            },
            'test_derivative_matches_maximizer_formula': {
                TestDataUnitKeys.parameters: {
                    'T': DIAG_TWO, 'S': JORDAN_ONE, 'thetas': [0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi]
                },
                TestDataUnitKeys.expect: {'tol': 1e-6}
            },
            'test_semi_inner_product_values': {
                TestDataUnitKeys.parameters: {
                    'cases': {
                        'self': (DIAG_TWO, DIAG_TWO),
                        'jordan-on-diag': (JORDAN_ONE, DIAG_TWO),
                    }
                },
                # [S, T] = Re(conj(<Tx,x>) <Sx,x>) at the maximizer x = e1 of diag(2,0)
                TestDataUnitKeys.expect: {'value': {'self': 4.0, 'jordan-on-diag': 2.0}, 'tol': 1e-6}
            },
            # ortho
            'test_omega_orthogonality_verdicts': {
                TestDataUnitKeys.parameters: {
                    'cases': [
                        ('diag-i-vs-shifted-jordan', DIAG_I, SHIFTED_JORDAN, 0.0, True),
                        ('shifted-jordan-vs-diag-i', SHIFTED_JORDAN, DIAG_I, 0.005, False),
                        ('shifted-jordan-vs-diag-1-0', SHIFTED_JORDAN, DIAG_ONE, 0.005, False),
                        ('diag-2-0-vs-jordan-1', DIAG_TWO, JORDAN_ONE, 0.0, False),
                        ('diag-2-0-vs-jordan-1', DIAG_TWO, JORDAN_ONE, 0.7, True),
                    ]
                },
                TestDataUnitKeys.expect: {}
            },
            'test_min_epsilon_reference_values': {
                TestDataUnitKeys.parameters: {
                    'cases': {
                        'diag-i-vs-shifted-jordan': (DIAG_I, SHIFTED_JORDAN),
                        'shifted-jordan-vs-diag-i': (SHIFTED_JORDAN, DIAG_I),
                        'diag-2-0-vs-jordan-1': (DIAG_TWO, JORDAN_ONE),
                    }
                },
                TestDataUnitKeys.expect: {
                    'epsilon_star': {
                        'diag-i-vs-shifted-jordan': 0.0,
                        'shifted-jordan-vs-diag-i': (2.0 - SQRT2) / 4.0,
                        'diag-2-0-vs-jordan-1': 2.0 / 3.0,
                    },
                    'tol': 1e-6
                }
            },
            'test_bj_orthogonality_verdicts': {
                TestDataUnitKeys.parameters: {
                    'cases': [
                        ('shifted-jordan-vs-diag-1-0', SHIFTED_JORDAN, DIAG_ONE, 0.0, True),
                        ('diag-1-0-vs-diag-0-1', DIAG_ONE, [[0, 0], [0, 1]], 0.0, True),
                        ('identity-vs-identity', [[1, 0], [0, 1]], [[1, 0], [0, 1]], 0.5, False),
                    ]
                },
                TestDataUnitKeys.expect: {}
            },
            # oracle
            'test_ellipse_oracle_reference_values': {
                TestDataUnitKeys.parameters: {'cases': {k: v[0] for k, v in RADII.items()}},
                TestDataUnitKeys.expect: {'omega': {k: v[1] for k, v in RADII.items()}, 'tol': 1e-10}
            },
        }
    }
