"""Attitude and angular-velocity composition across chained frames.

With three frames 0 (inertial), 1 (rotating) and 2 (body), ``q_ij`` is the
attitude of frame ``j`` relative to frame ``i`` and ``w_ij^j`` is the rate of
frame ``j`` relative to frame ``i``, expressed in frame ``j``. Then::

    q02    = q01 o q12
    w02^2  = conj(q12) o w01^1 o q12 + w12^2

Per-link rates are always given in the child frame.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .quaternion import (
    DomainError,
    Quaternion,
    QuaternionLike,
    check_unit,
    normalize,
    qmul,
    rotate_to_body,
)

__all__ = [
    "compose_attitude",
    "compose_chain",
    "compose_omega_body",
    "compose_omega_chain",
    "omega_inertial_from_orbital",
]

_ORTHO_TOL = 1e-6


def compose_attitude(q01: QuaternionLike, q12: QuaternionLike) -> Quaternion:
    """Attitude of frame 2 relative to frame 0, ``q01 o q12``, renormalized."""
    q01 = check_unit(q01, name="q01")
    q12 = check_unit(q12, name="q12")
    return normalize(qmul(q01, q12))


def compose_chain(links: Sequence[QuaternionLike]) -> Quaternion:
    """Compose ``q01 o q12 o ... o q(n-1)n``; an empty chain is the identity."""
    out = Quaternion.identity()
    for i, link in enumerate(links):
        out = normalize(qmul(out, check_unit(link, name=f"links[{i}]")))
    return out


def compose_omega_body(q12: QuaternionLike, omega01_in_frame1, omega12_in_frame2) -> np.ndarray:
    """Rate of frame 2 relative to frame 0, in frame 2 coordinates."""
    q12 = check_unit(q12, name="q12")
    return rotate_to_body(q12, omega01_in_frame1) + np.asarray(omega12_in_frame2, dtype=float).reshape(3)


def compose_omega_chain(links: Sequence[QuaternionLike], omegas: Sequence) -> np.ndarray:
    """Rate of the last frame relative to frame 0, in last-frame coordinates.

    ``omegas[i]`` is the rate of link ``i`` expressed in its child frame.
    """
    if len(links) != len(omegas):
        raise ValueError("links and omegas must have the same length")
    total = np.zeros(3)
    for link, omega in zip(links, omegas):
        total = compose_omega_body(link, total, omega)
    return total


def omega_inertial_from_orbital(R_noninertial, omega_o, omega_p_noninertial) -> np.ndarray:
    """Inertial body rate ``R^T w_o + w'_NI`` of a body modelled in a rotating frame.

    Args:
        R_noninertial: body-to-rotating-frame rotation matrix.
        omega_o: rate of the rotating frame, in its own coordinates.
        omega_p_noninertial: body rate relative to the rotating frame, in
            body coordinates.

    Raises:
        DomainError: if ``R_noninertial`` is not a proper rotation within ``1e-6``.
    """
    R = np.asarray(R_noninertial, dtype=float)
    if R.shape != (3, 3):
        raise DomainError(f"rotation matrix must be 3x3, got shape {R.shape}")
    ortho_err = float(np.max(np.abs(R @ R.T - np.eye(3))))
    if not ortho_err < _ORTHO_TOL or not abs(np.linalg.det(R) - 1.0) < _ORTHO_TOL:
        raise DomainError(f"matrix is not a rotation (|R R^T - I| = {ortho_err:.3g})")
    return R.T @ np.asarray(omega_o, dtype=float).reshape(3) + np.asarray(
        omega_p_noninertial, dtype=float
    ).reshape(3)
