"""Euler angles to quaternion, X-Y-Z factor order.

The attitude for angles ``(phi, theta, psi)`` is::

    R = R_x(phi) @ R_y(theta) @ R_z(psi)
    q = q_x(phi) o q_y(theta) o q_z(psi)

with ``q_x(a) = (cos a/2, sin a/2, 0, 0)`` and so on. ``R`` is the
body-to-fixed matrix, i.e. ``rotation_matrix(euler_to_quat(a))``. Other
sequences (ZYX, ZXZ, ...) give different results and are not provided, and
there is no inverse conversion.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .quaternion import Quaternion

__all__ = ["CONVENTION", "EulerAngles", "euler_rotation_matrix", "euler_to_quat"]

CONVENTION = "R = Rx(phi) Ry(theta) Rz(psi); q = qx(phi) o qy(theta) o qz(psi); R maps body to fixed"


class EulerAngles(NamedTuple):
    phi: float
    theta: float
    psi: float


def euler_to_quat(angles) -> Quaternion:
    """Quaternion ``q_x(phi) o q_y(theta) o q_z(psi)`` in closed form."""
    phi, theta, psi = (float(a) for a in angles)
    cf, sf = math.cos(0.5 * phi), math.sin(0.5 * phi)
    ct, st = math.cos(0.5 * theta), math.sin(0.5 * theta)
    cp, sp = math.cos(0.5 * psi), math.sin(0.5 * psi)
    return Quaternion(
        cf * ct * cp - sf * st * sp,
        (
            cp * ct * sf + cf * st * sp,
            cp * cf * st - ct * sf * sp,
            cf * ct * sp + cp * sf * st,
        ),
    )


def _rx(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _ry(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def _rz(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def euler_rotation_matrix(angles) -> np.ndarray:
    """``R_x(phi) @ R_y(theta) @ R_z(psi)``."""
    phi, theta, psi = (float(a) for a in angles)
    return _rx(phi) @ _ry(theta) @ _rz(psi)
