"""E/G matrix formalism for quaternion kinematics.

For a quaternion ``q`` the 3x4 matrices::

        [-q1  q0 -q3  q2]            [-q1  q0  q3 -q2]
    E = [-q2  q3  q0 -q1]        G = [-q2 -q3  q0  q1]
        [-q3 -q2  q1  q0]            [-q3  q2 -q1  q0]

satisfy ``E p = Im{p o conj(q)}`` and ``G p = Im{conj(q) o p}`` for any
4-vector ``p``. With a unit ``q`` and its rate ``qdot``::

    w  = 2 E qdot = -2 Edot q        qdot = 1/2 E^T w
    w' = 2 G qdot = -2 Gdot q        qdot = 1/2 G^T w'
    R  = E G^T,   R^T = G E^T,       Omega' = 2 G Gdot^T

where ``w`` and ``w'`` are the angular velocity in the fixed and body frame.
Both matrices are linear in their argument, so ``Edot = e_matrix(qdot)``.
"""

from __future__ import annotations

import numpy as np

from .quaternion import (
    INTERNAL_TOL,
    UNIT_TOL,
    DomainError,
    QuaternionLike,
    check_unit,
)

__all__ = [
    "cross_matrix_from_rates",
    "e_matrix",
    "g_matrix",
    "omega_body_from_qdot",
    "omega_cross_matrix",
    "omega_fixed_from_qdot",
    "qdot_from_omega_body",
    "qdot_from_omega_fixed",
    "rotation_matrix",
]


def _vec4(p) -> np.ndarray:
    return np.asarray(p, dtype=float).reshape(4)


def e_matrix(p: QuaternionLike) -> np.ndarray:
    """The 3x4 matrix ``E`` built from the 4-vector ``p``."""
    p0, p1, p2, p3 = _vec4(p)
    return np.array(
        [
            [-p1, p0, -p3, p2],
            [-p2, p3, p0, -p1],
            [-p3, -p2, p1, p0],
        ]
    )


def g_matrix(p: QuaternionLike) -> np.ndarray:
    """The 3x4 matrix ``G`` built from the 4-vector ``p``."""
    p0, p1, p2, p3 = _vec4(p)
    return np.array(
        [
            [-p1, p0, p3, -p2],
            [-p2, -p3, p0, p1],
            [-p3, p2, -p1, p0],
        ]
    )


def _unit4(q) -> np.ndarray:
    return check_unit(q).as_array()


def _check_tangent(q: np.ndarray, qdot: np.ndarray) -> None:
    # |q| = 1 forces q . qdot = 0
    dot = float(q @ qdot)
    if not abs(dot) <= UNIT_TOL * max(1.0, float(np.linalg.norm(qdot))):
        raise DomainError(f"qdot is not tangent to the unit sphere at q (q . qdot = {dot!r})")


def _rate_from_qdot(build, q, qdot) -> np.ndarray:
    q = _unit4(q)
    qdot = _vec4(qdot)
    _check_tangent(q, qdot)
    rate = 2.0 * build(q) @ qdot
    alt = -2.0 * build(qdot) @ q
    scale = max(1.0, float(np.linalg.norm(rate)))
    assert np.max(np.abs(rate - alt)) <= INTERNAL_TOL * scale
    return rate


def omega_fixed_from_qdot(q: QuaternionLike, qdot) -> np.ndarray:
    """Fixed-frame angular velocity ``w = 2 E qdot``.

    Raises:
        DomainError: if ``q`` is not unit or ``qdot`` is not tangent at ``q``.
    """
    return _rate_from_qdot(e_matrix, q, qdot)


def qdot_from_omega_fixed(q: QuaternionLike, omega) -> np.ndarray:
    """Quaternion rate ``1/2 E^T w`` from the fixed-frame angular velocity."""
    q = _unit4(q)
    return 0.5 * e_matrix(q).T @ np.asarray(omega, dtype=float).reshape(3)


def omega_body_from_qdot(q: QuaternionLike, qdot) -> np.ndarray:
    """Body-frame angular velocity ``w' = 2 G qdot``.

    Raises:
        DomainError: if ``q`` is not unit or ``qdot`` is not tangent at ``q``.
    """
    return _rate_from_qdot(g_matrix, q, qdot)


def qdot_from_omega_body(q: QuaternionLike, omega_p) -> np.ndarray:
    """Quaternion rate ``1/2 G^T w'`` from the body-frame angular velocity."""
    q = _unit4(q)
    return 0.5 * g_matrix(q).T @ np.asarray(omega_p, dtype=float).reshape(3)


def rotation_matrix(q: QuaternionLike) -> np.ndarray:
    """Body-to-fixed rotation matrix ``R = E G^T`` of a unit quaternion.

    ``R @ x_body`` equals :func:`quatdyn.quaternion.rotate_to_fixed`;
    ``R.T @ x`` equals :func:`quatdyn.quaternion.rotate_to_body`.
    """
    q = _unit4(q)
    return e_matrix(q) @ g_matrix(q).T


def omega_cross_matrix(omega_p) -> np.ndarray:
    """Skew matrix ``Omega'`` with ``Omega' @ v == cross(omega_p, v)``."""
    w1, w2, w3 = np.asarray(omega_p, dtype=float).reshape(3)
    return np.array(
        [
            [0.0, -w3, w2],
            [w3, 0.0, -w1],
            [-w2, w1, 0.0],
        ]
    )


def cross_matrix_from_rates(q: QuaternionLike, qdot) -> np.ndarray:
    """``Omega' = 2 G Gdot^T`` evaluated from a unit ``q`` and tangent ``qdot``.

    Agrees with ``omega_cross_matrix(omega_body_from_qdot(q, qdot))``; the
    agreement is checked before returning.
    """
    q4 = _unit4(q)
    qdot = _vec4(qdot)
    _check_tangent(q4, qdot)
    omega_mat = 2.0 * g_matrix(q4) @ g_matrix(qdot).T
    expected = omega_cross_matrix(2.0 * g_matrix(q4) @ qdot)
    scale = max(1.0, float(np.max(np.abs(expected))))
    assert np.max(np.abs(omega_mat - expected)) <= INTERNAL_TOL * scale
    return omega_mat
