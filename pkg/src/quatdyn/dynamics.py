"""Rotational dynamics of a free rigid body in quaternion coordinates.

The Lagrangian ``L = 1/2 w'^T J w'`` with the constraint ``q^T q = 1`` gives,
after projecting with ``G``, the coupled first-order system::

    d/dt w' = J^-1 T' - J^-1 (w' x J w')
    d/dt q  = 1/2 G^T w'

which is what :func:`state_rhs` evaluates and :func:`rk4_step` integrates.
The constraint multiplier is eliminated by the projection; its closed form
(:func:`lagrange_multiplier`) is kept for checking the unprojected equation.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .kinematics import g_matrix, qdot_from_omega_body, rotation_matrix
from .quaternion import (
    DomainError,
    Quaternion,
    QuaternionLike,
    check_unit,
    normalize,
)

__all__ = [
    "BodyState",
    "ConstantTorque",
    "InertiaMatrix",
    "NonFiniteStateError",
    "ScheduleTorque",
    "TorqueProfile",
    "ZeroTorque",
    "angular_momentum_fixed",
    "euler_lagrange_residual",
    "euler_rhs",
    "generalized_force",
    "kinetic_energy",
    "lagrange_multiplier",
    "pre_normalization_drift",
    "propagate",
    "rk4_step",
    "state_rhs",
]


class NonFiniteStateError(ArithmeticError):
    """Integration produced a NaN or infinite state."""

    def __init__(self, t: float, message: str | None = None):
        self.t = t
        super().__init__(message or f"non-finite state at t = {t!r}")


class InertiaMatrix:
    """Symmetric positive-definite inertia tensor ``J`` [kg m^2].

    The inverse is computed once at construction.

    Raises:
        DomainError: if ``J`` is not 3x3, not finite, not symmetric to
            ``1e-12``, or has a non-positive leading principal minor.
    """

    __slots__ = ("matrix", "inverse")

    def __init__(self, matrix) -> None:
        J = np.array(matrix, dtype=float)
        if J.shape != (3, 3):
            raise DomainError(f"inertia must be 3x3, got shape {J.shape}")
        if not np.all(np.isfinite(J)):
            raise DomainError("inertia has non-finite entries")
        if np.max(np.abs(J - J.T)) > 1e-12 * max(1.0, float(np.max(np.abs(J)))):
            raise DomainError("inertia must be symmetric")
        minors = (J[0, 0], np.linalg.det(J[:2, :2]), np.linalg.det(J))
        if not all(m > 0.0 for m in minors):
            raise DomainError(f"inertia must be positive definite (leading minors {minors})")
        J.setflags(write=False)
        inv = np.linalg.inv(J)
        inv.setflags(write=False)
        object.__setattr__(self, "matrix", J)
        object.__setattr__(self, "inverse", inv)

    def __setattr__(self, name, value):
        raise AttributeError("InertiaMatrix is immutable")

    @classmethod
    def diag(cls, j1: float, j2: float, j3: float) -> "InertiaMatrix":
        return cls(np.diag([j1, j2, j3]))

    @classmethod
    def from_components(
        cls, jxx: float, jyy: float, jzz: float, jxy: float = 0.0, jxz: float = 0.0, jyz: float = 0.0
    ) -> "InertiaMatrix":
        return cls([[jxx, jxy, jxz], [jxy, jyy, jyz], [jxz, jyz, jzz]])

    def __repr__(self) -> str:
        return f"InertiaMatrix({self.matrix.tolist()})"


def _as_inertia(J) -> InertiaMatrix:
    return J if isinstance(J, InertiaMatrix) else InertiaMatrix(J)


@dataclass(frozen=True)
class BodyState:
    """Attitude ``q`` (body relative to fixed) and body angular velocity ``omega_p`` [rad/s]."""

    q: Quaternion
    omega_p: np.ndarray

    def __post_init__(self) -> None:
        w = np.array(self.omega_p, dtype=float).reshape(3)
        w.setflags(write=False)
        object.__setattr__(self, "q", check_unit(self.q))
        object.__setattr__(self, "omega_p", w)

    def as_vector(self) -> np.ndarray:
        """Flat 7-vector ``(q0, q1, q2, q3, w1, w2, w3)``."""
        return np.concatenate((self.q.as_array(), self.omega_p))


# --- torque profiles -------------------------------------------------------

TorqueProfile = Callable[[float], np.ndarray]
"""Any callable mapping time [s] to a body-frame torque 3-vector [N m]."""


class ZeroTorque:
    def __call__(self, t: float) -> np.ndarray:
        return np.zeros(3)

    def __repr__(self) -> str:
        return "ZeroTorque()"


class ConstantTorque:
    def __init__(self, torque: Iterable[float]) -> None:
        self.torque = np.array(torque, dtype=float).reshape(3)
        if not np.all(np.isfinite(self.torque)):
            raise DomainError("torque must be finite")

    def __call__(self, t: float) -> np.ndarray:
        return self.torque.copy()

    def __repr__(self) -> str:
        return f"ConstantTorque({self.torque.tolist()})"


class ScheduleTorque:
    """Piecewise-constant torque.

    ``schedule`` is a sequence of ``(t_start, torque)`` pairs with strictly
    increasing start times. The torque of an entry holds on
    ``[t_start, next t_start)``; the last entry holds forever and the torque
    is zero before the first start time.
    """

    def __init__(self, schedule: Sequence[tuple[float, Iterable[float]]]) -> None:
        if not schedule:
            raise DomainError("torque schedule is empty")
        times = [float(t) for t, _ in schedule]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise DomainError("torque schedule times must be strictly increasing")
        values = [np.array(v, dtype=float).reshape(3) for _, v in schedule]
        if not all(np.all(np.isfinite(v)) for v in values) or not all(np.isfinite(times)):
            raise DomainError("torque schedule must be finite")
        self.times = times
        self.values = values

    def __call__(self, t: float) -> np.ndarray:
        i = bisect.bisect_right(self.times, t) - 1
        if i < 0:
            return np.zeros(3)
        return self.values[i].copy()

    def __repr__(self) -> str:
        pairs = [(t, v.tolist()) for t, v in zip(self.times, self.values)]
        return f"ScheduleTorque({pairs})"


# --- equations of motion ---------------------------------------------------


def kinetic_energy(J, omega_p) -> float:
    """Rotational kinetic energy ``1/2 w'^T J w'``."""
    J = _as_inertia(J).matrix
    w = np.asarray(omega_p, dtype=float).reshape(3)
    return 0.5 * float(w @ J @ w)


def generalized_force(q: QuaternionLike, torque_body) -> np.ndarray:
    """Generalized force ``F_q = 2 G^T T'`` conjugate to the quaternion coordinates."""
    q = check_unit(q)
    return 2.0 * g_matrix(q).T @ np.asarray(torque_body, dtype=float).reshape(3)


def euler_rhs(J, omega_p, torque_body) -> np.ndarray:
    """Angular acceleration ``J^-1 (T' - w' x J w')`` in the body frame."""
    J = _as_inertia(J)
    w = np.asarray(omega_p, dtype=float).reshape(3)
    T = np.asarray(torque_body, dtype=float).reshape(3)
    return J.inverse @ (T - np.cross(w, J.matrix @ w))


def state_rhs(J, state: BodyState, torque_body) -> tuple[np.ndarray, np.ndarray]:
    """Time derivative ``(qdot, omega_dot)`` of a body state under torque ``T'``."""
    qdot = qdot_from_omega_body(state.q, state.omega_p)
    return qdot, euler_rhs(J, state.omega_p, torque_body)


def lagrange_multiplier(J, omega_p) -> float:
    """Constraint multiplier ``lambda = -2 w'^T J w'`` of the unprojected equations."""
    return -4.0 * kinetic_energy(J, omega_p)


def euler_lagrange_residual(J, q: QuaternionLike, omega_p, omega_dot, torque_body) -> np.ndarray:
    """Residual ``4 Gdot^T J w' + 2 G^T J wdot' - 2 G^T T' - lambda q`` of the 4D equations.

    ``Gdot`` is built from ``qdot = 1/2 G^T w'``. Vanishes when ``omega_dot``
    solves the Euler equations.
    """
    J = _as_inertia(J)
    q4 = check_unit(q).as_array()
    w = np.asarray(omega_p, dtype=float).reshape(3)
    wdot = np.asarray(omega_dot, dtype=float).reshape(3)
    G = g_matrix(q4)
    Gdot = g_matrix(0.5 * G.T @ w)
    lam = lagrange_multiplier(J, w)
    return (
        4.0 * Gdot.T @ J.matrix @ w
        + 2.0 * G.T @ J.matrix @ wdot
        - generalized_force(q4, torque_body)
        - lam * q4
    )


def angular_momentum_fixed(J, state: BodyState) -> np.ndarray:
    """Fixed-frame angular momentum ``R J w'``."""
    J = _as_inertia(J)
    return rotation_matrix(state.q) @ (J.matrix @ state.omega_p)


# --- integration -----------------------------------------------------------


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # np.cross carries too much overhead for the RK4 inner loop
    a1, a2, a3 = a
    b1, b2, b3 = b
    return np.array([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])


def _derivative(J: InertiaMatrix, x: np.ndarray, torque: np.ndarray) -> np.ndarray:
    # Evaluated on the raw 7-vector: RK4 stages are not on the unit sphere.
    q, w = x[:4], x[4:]
    qdot = 0.5 * g_matrix(q).T @ w
    wdot = J.inverse @ (torque - _cross(w, J.matrix @ w))
    return np.concatenate((qdot, wdot))


def _rk4_update(J: InertiaMatrix, x: np.ndarray, torque: TorqueProfile, t: float, dt: float) -> np.ndarray:
    half = 0.5 * dt
    tau_mid = np.asarray(torque(t + half), dtype=float)
    k1 = _derivative(J, x, np.asarray(torque(t), dtype=float))
    k2 = _derivative(J, x + half * k1, tau_mid)
    k3 = _derivative(J, x + half * k2, tau_mid)
    k4 = _derivative(J, x + dt * k3, np.asarray(torque(t + dt), dtype=float))
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_step(J, state: BodyState, torque: TorqueProfile, t: float, dt: float) -> BodyState:
    """Advance ``state`` from ``t`` to ``t + dt`` with classical RK4.

    The quaternion is renormalized after the step.

    Raises:
        DomainError: if ``dt <= 0``.
        NonFiniteStateError: if the stepped state contains NaN or inf.
    """
    if not dt > 0.0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    J = _as_inertia(J)
    x = state.as_vector()
    if not np.all(np.isfinite(x)):
        raise NonFiniteStateError(t)

    x_new = _rk4_update(J, x, torque, t, dt)

    if not np.all(np.isfinite(x_new)):
        raise NonFiniteStateError(t + dt)
    return BodyState(normalize(x_new[:4]), x_new[4:])


def propagate(
    J,
    state: BodyState,
    torque: TorqueProfile,
    dt: float,
    n_steps: int,
    t0: float = 0.0,
) -> list[BodyState]:
    """Run ``n_steps`` RK4 steps and return all ``n_steps + 1`` states.

    Step ``i`` starts at ``t0 + i * dt`` (times are not accumulated).
    """
    J = _as_inertia(J)
    states = [state]
    for i in range(n_steps):
        state = rk4_step(J, state, torque, t0 + i * dt, dt)
        states.append(state)
    return states


def pre_normalization_drift(J, state: BodyState, torque: TorqueProfile, t: float, dt: float) -> float:
    """``| |q| - 1 |`` of the raw RK4 update before renormalization."""
    x_new = _rk4_update(_as_inertia(J), state.as_vector(), torque, t, dt)
    return abs(float(np.linalg.norm(x_new[:4])) - 1.0)
