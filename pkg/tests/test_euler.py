import math

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from quatdyn import EulerAngles, euler_rotation_matrix, euler_to_quat, norm, qmul, rotation_matrix

S2 = math.sqrt(2.0) / 2.0


def half_angle(axis, angle):
    q = np.zeros(4)
    q[0] = math.cos(0.5 * angle)
    q[axis] = math.sin(0.5 * angle)
    return q


def test_conversion_examples():
    assert_array_equal(euler_to_quat((0, 0, 0)).as_array(), [1, 0, 0, 0])
    assert_allclose(
        euler_to_quat((0, 0, math.pi / 2)).as_array(),
        [math.cos(math.pi / 4), 0, 0, math.sin(math.pi / 4)],
        rtol=0,
        atol=1e-15,
    )
    assert_allclose(euler_to_quat(EulerAngles(math.pi / 2, math.pi / 2, math.pi / 2)).as_array(), [0, S2, 0, S2], rtol=0, atol=1e-15)


def test_closed_form_equals_factor_product(rng):
    for phi, theta, psi in rng.uniform(-4, 4, size=(100, 3)):
        product = qmul(qmul(half_angle(1, phi), half_angle(2, theta)), half_angle(3, psi))
        assert_allclose(euler_to_quat((phi, theta, psi)).as_array(), product.as_array(), rtol=0, atol=1e-15)


def test_unit_norm(rng):
    for a in rng.uniform(-10, 10, size=(100, 3)):
        assert abs(norm(euler_to_quat(a)) - 1.0) <= 1e-15


def test_rotation_matrix_examples():
    assert_array_equal(euler_rotation_matrix((0, 0, 0)), np.eye(3))
    assert_allclose(euler_rotation_matrix((0, 0, math.pi / 2)), [[0, -1, 0], [1, 0, 0], [0, 0, 1]], atol=1e-16)


def test_matrix_consistency(rng):
    for a in rng.uniform(-2 * math.pi, 2 * math.pi, size=(100, 3)):
        assert_allclose(rotation_matrix(euler_to_quat(a)), euler_rotation_matrix(a), rtol=0, atol=1e-12)


def test_periodicity_and_double_cover(rng):
    for a in rng.uniform(-3, 3, size=(20, 3)):
        q = euler_to_quat(a).as_array()
        for k in range(3):
            shifted = a.copy()
            shifted[k] += 2 * math.pi
            assert_allclose(euler_rotation_matrix(shifted), euler_rotation_matrix(a), atol=1e-12)
            qs = euler_to_quat(shifted).as_array()
            assert np.all(np.sign(qs[np.abs(q) > 1e-9]) == -np.sign(q[np.abs(q) > 1e-9]))
            assert_allclose(qs, -q, atol=1e-14)
