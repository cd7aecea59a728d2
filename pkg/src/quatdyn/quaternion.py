"""Quaternion value type and the basic algebra on it.

Components are stored scalar first, ``(q0, q1, q2, q3)``, and the product is
the Hamilton product::

    q o p = (q0 p0 - q.p,  q0 p + p0 q + q x p)

Rotation convention
-------------------
A unit quaternion ``q`` describes the attitude of the body frame with respect
to the fixed frame. Vectors are moved between frames with the sandwich
products::

    x' = conj(q) o x o q      (fixed -> body, :func:`rotate_to_body`)
    x  = q o x' o conj(q)     (body -> fixed, :func:`rotate_to_fixed`)

This is the opposite assignment to the "active rotation" convention used by
many graphics libraries, where ``q o v o conj(q)`` rotates a vector within a
single frame. Check which one your data uses before mixing code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

__all__ = [
    "DomainError",
    "Quaternion",
    "QuaternionLike",
    "UNIT_TOL",
    "as_quaternion",
    "check_unit",
    "conj",
    "from_axis_angle",
    "normalize",
    "norm",
    "qmul",
    "rotate_to_body",
    "rotate_to_fixed",
]

# Unit-norm tolerance applied to caller-supplied quaternions.
UNIT_TOL = 1e-9
# Tolerance for invariants the library guarantees internally.
INTERNAL_TOL = 1e-12
_MIN_NORM = 1e-30
# Norms this close to 1 are rounding noise; dividing would only perturb the last bit.
_ROUNDING = 4 * np.finfo(float).eps


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


@dataclass(frozen=True, eq=False)
class Quaternion:
    """Immutable quaternion ``(q0, qv)`` with scalar part first.

    Args:
        q0: Real (scalar) part.
        qv: Imaginary part ``(q1, q2, q3)``.
    """

    q0: float
    qv: np.ndarray

    def __post_init__(self) -> None:
        qv = np.array(self.qv, dtype=float).reshape(3)
        qv.setflags(write=False)
        object.__setattr__(self, "q0", float(self.q0))
        object.__setattr__(self, "qv", qv)

    @classmethod
    def from_array(cls, values: Iterable[float]) -> "Quaternion":
        arr = np.asarray(values, dtype=float).reshape(4)
        return cls(arr[0], arr[1:])

    @classmethod
    def identity(cls) -> "Quaternion":
        return cls(1.0, np.zeros(3))

    @classmethod
    def pure(cls, x: Iterable[float]) -> "Quaternion":
        """Embed a 3-vector as the quaternion ``(0, x)``."""
        return cls(0.0, np.asarray(x, dtype=float))

    def as_array(self) -> np.ndarray:
        """Return the 4-vector ``(q0, q1, q2, q3)`` as a new array."""
        return np.concatenate(([self.q0], self.qv))

    def __array__(self, dtype=None, copy=None):
        arr = self.as_array()
        return arr if dtype is None else arr.astype(dtype)

    def __iter__(self):
        return iter(self.as_array())

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return qmul(self, other)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.q0, -self.qv)

    def __repr__(self) -> str:
        q1, q2, q3 = self.qv
        return f"Quaternion({self.q0!r}, ({q1!r}, {q2!r}, {q3!r}))"


QuaternionLike = Union[Quaternion, Iterable[float]]


def as_quaternion(q: QuaternionLike) -> Quaternion:
    """Coerce a ``Quaternion`` or any 4-element sequence to ``Quaternion``."""
    if isinstance(q, Quaternion):
        return q
    return Quaternion.from_array(q)


def qmul(q: QuaternionLike, p: QuaternionLike) -> Quaternion:
    """Hamilton product ``q o p``. Not commutative; no renormalization."""
    q = as_quaternion(q)
    p = as_quaternion(p)
    scalar = q.q0 * p.q0 - float(np.dot(q.qv, p.qv))
    vector = q.q0 * p.qv + p.q0 * q.qv + np.cross(q.qv, p.qv)
    return Quaternion(scalar, vector)


def conj(q: QuaternionLike) -> Quaternion:
    q = as_quaternion(q)
    return Quaternion(q.q0, -q.qv)


def norm(q: QuaternionLike) -> float:
    """Euclidean norm of the 4-vector."""
    return float(np.linalg.norm(as_quaternion(q).as_array()))


def normalize(q: QuaternionLike) -> Quaternion:
    """Scale ``q`` to unit norm.

    Raises:
        DomainError: if ``|q| <= 1e-30``.
    """
    q = as_quaternion(q)
    n = norm(q)
    if not n > _MIN_NORM:
        raise DomainError(f"cannot normalize quaternion with norm {n!r}")
    if abs(n - 1.0) <= _ROUNDING:
        return q
    return Quaternion(q.q0 / n, q.qv / n)


def check_unit(q: QuaternionLike, tol: float = UNIT_TOL, name: str = "q") -> Quaternion:
    """Return ``q`` as a ``Quaternion`` after checking ``| |q| - 1 | <= tol``."""
    q = as_quaternion(q)
    n = norm(q)
    if not abs(n - 1.0) <= tol:
        raise DomainError(f"{name} must be a unit quaternion, got norm {n!r}")
    return q


def from_axis_angle(n: Iterable[float], phi: float) -> Quaternion:
    """Unit quaternion ``(cos(phi/2), sin(phi/2) n)`` for a rotation by ``phi`` about ``n``.

    Raises:
        DomainError: if ``n`` is not unit length within ``1e-9``.
    """
    axis = np.asarray(n, dtype=float).reshape(3)
    length = float(np.linalg.norm(axis))
    if not abs(length - 1.0) <= UNIT_TOL:
        raise DomainError(f"rotation axis must be a unit vector, got length {length!r}")
    half = 0.5 * phi
    return Quaternion(math.cos(half), math.sin(half) * axis)


def _sandwich(left: Quaternion, x: Iterable[float], right: Quaternion) -> np.ndarray:
    out = qmul(qmul(left, Quaternion.pure(x)), right)
    scale = max(1.0, float(np.linalg.norm(out.qv)))
    assert abs(out.q0) <= INTERNAL_TOL * scale, "sandwich product left a real part"
    return np.array(out.qv)


def rotate_to_body(q: QuaternionLike, x: Iterable[float]) -> np.ndarray:
    """Express the fixed-frame vector ``x`` in body coordinates: ``Im{conj(q) o x o q}``."""
    q = check_unit(q)
    return _sandwich(conj(q), x, q)


def rotate_to_fixed(q: QuaternionLike, x_body: Iterable[float]) -> np.ndarray:
    """Express the body-frame vector ``x_body`` in fixed coordinates: ``Im{q o x' o conj(q)}``."""
    q = check_unit(q)
    return _sandwich(q, x_body, conj(q))
