"""Quaternion rigid-body attitude kinematics and dynamics."""

from .dynamics import (
    BodyState,
    ConstantTorque,
    InertiaMatrix,
    NonFiniteStateError,
    ScheduleTorque,
    ZeroTorque,
    angular_momentum_fixed,
    euler_lagrange_residual,
    euler_rhs,
    generalized_force,
    kinetic_energy,
    lagrange_multiplier,
    propagate,
    rk4_step,
    state_rhs,
)
from .euler import EulerAngles, euler_rotation_matrix, euler_to_quat
from .frames import (
    compose_attitude,
    compose_chain,
    compose_omega_body,
    compose_omega_chain,
    omega_inertial_from_orbital,
)
from .kinematics import (
    cross_matrix_from_rates,
    e_matrix,
    g_matrix,
    omega_body_from_qdot,
    omega_cross_matrix,
    omega_fixed_from_qdot,
    qdot_from_omega_body,
    qdot_from_omega_fixed,
    rotation_matrix,
)
from .quadform import delta, grad_double, grad_single, grad_single_transposed
from .quaternion import (
    DomainError,
    Quaternion,
    conj,
    from_axis_angle,
    norm,
    normalize,
    qmul,
    rotate_to_body,
    rotate_to_fixed,
)

__version__ = "0.1.0"
