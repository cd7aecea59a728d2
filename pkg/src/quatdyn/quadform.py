"""Gradients of quaternion-dependent quadratic forms.

Every entry of ``R = E G^T`` is a quadratic form in ``q``. For fixed
3-vectors ``v`` and ``w`` there is a symmetric 4x4 matrix ``Delta[v, w]``
with ``v^T R w = q^T Delta[v, w] q``, so::

    d(v^T R w)/dq    = 2 Delta[v, w] q
    d(v^T R^T w)/dq  = 2 Delta[w, v] q
    d(u^T R J R^T u)/dq = 4 Delta[u, J R^T u] q       (J symmetric)

``Delta`` is bilinear in its two arguments.
"""

from __future__ import annotations

import numpy as np

from .kinematics import rotation_matrix
from .quaternion import check_unit

__all__ = ["delta", "grad_double", "grad_single", "grad_single_transposed"]


def delta(v, w) -> np.ndarray:
    """The symmetric block matrix::

        [ w.v         (w x v)^T              ]
        [ w x v       w v^T + v w^T - w.v I3 ]
    """
    v = np.asarray(v, dtype=float).reshape(3)
    w = np.asarray(w, dtype=float).reshape(3)
    dot = float(w @ v)
    cross = np.cross(w, v)
    out = np.empty((4, 4))
    out[0, 0] = dot
    out[0, 1:] = cross
    out[1:, 0] = cross
    out[1:, 1:] = np.outer(w, v) + np.outer(v, w) - dot * np.eye(3)
    return out


def grad_single(v, w, q) -> np.ndarray:
    """Gradient of ``v^T R(q) w`` with respect to the 4-vector ``q``.

    Polynomial identity: ``q`` need not be unit.
    """
    return 2.0 * delta(v, w) @ np.asarray(q, dtype=float).reshape(4)


def grad_single_transposed(v, w, q) -> np.ndarray:
    """Gradient of ``v^T R(q)^T w``; identical to ``grad_single(w, v, q)``."""
    return grad_single(w, v, q)


def grad_double(u, J, q) -> np.ndarray:
    """Gradient of ``u^T R J R^T u`` with respect to ``q``.

    Args:
        u: 3-vector.
        J: symmetric 3x3 matrix or :class:`~quatdyn.dynamics.InertiaMatrix`.
        q: unit quaternion.

    Raises:
        DomainError: if ``q`` is not unit within ``1e-9``.
    """
    q4 = check_unit(q).as_array()
    J = np.asarray(getattr(J, "matrix", J), dtype=float)
    u = np.asarray(u, dtype=float).reshape(3)
    R = rotation_matrix(q4)
    return 4.0 * delta(u, J @ R.T @ u) @ q4
