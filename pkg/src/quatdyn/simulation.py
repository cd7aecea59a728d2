"""Scenario configuration, validation and trajectory generation.

A scenario is a flat text file with one ``key = value`` pair per line.
``#`` starts a comment and vectors are comma separated::

    inertia = 1, 2, 3, 0, 0, 0     # Jxx, Jyy, Jzz, Jxy, Jxz, Jyz  [kg m^2]
    q0 = 1, 0, 0, 0                # scalar first; renormalized if within 1e-3 of unit
    omega0 = 1, 1, 1               # body rate [rad/s]
    torque = zero                  # or: constant 0, 0, 0.1
                                   # or: schedule 0: 0,0,0.1; 2.5: 0,0,0
    dt = 0.001
    duration = 10
    output_every = 1
    attitude_input = quaternion    # or: euler phi, theta, psi   [rad]
    frame = inertial               # or: orbital (needs omega_o)
    omega_o = 0, 0.0011, 0         # rotating-frame rate, in its own axes [rad/s]

With ``frame = orbital`` the initial attitude and body rate are taken
relative to a frame rotating at ``omega_o`` that coincides with the inertial
frame at t = 0. The body rate is converted to its inertial equivalent
``R^T omega_o + omega0`` and the inertial equations are integrated, so every
output row carries inertial attitude and inertial body rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .dynamics import (
    BodyState,
    ConstantTorque,
    InertiaMatrix,
    NonFiniteStateError,
    ScheduleTorque,
    ZeroTorque,
    angular_momentum_fixed,
    kinetic_energy,
    rk4_step,
)
from .euler import CONVENTION, euler_to_quat
from .frames import omega_inertial_from_orbital
from .kinematics import rotation_matrix
from .quaternion import DomainError, normalize

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "SimConfig",
    "SimResult",
    "Violation",
    "format_csv",
    "load_config",
    "parse_config",
    "run_simulation",
    "step_count",
    "validate",
]

KEYS = (
    "inertia",
    "q0",
    "omega0",
    "torque",
    "dt",
    "duration",
    "output_every",
    "attitude_input",
    "frame",
    "omega_o",
)
CSV_HEADER = "t,q0,q1,q2,q3,w1,w2,w3,energy,Lx,Ly,Lz"
Q0_RENORM_TOL = 1e-3


class Violation(NamedTuple):
    key: str
    value: object
    constraint: str

    def __str__(self) -> str:
        return f"{self.key} = {self.value!r}: {self.constraint}"


class ConfigError(ValueError):
    """A scenario could not be parsed or failed validation."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class SimConfig:
    """Scenario description. Field values are not checked here, see :func:`validate`."""

    inertia: tuple[float, ...]
    omega0: tuple[float, ...]
    dt: float
    duration: float
    q0: tuple[float, ...] | None = (1.0, 0.0, 0.0, 0.0)
    torque: tuple = ("zero",)
    output_every: int = 1
    attitude_input: str = "quaternion"
    euler_angles: tuple[float, ...] | None = None
    frame: str = "inertial"
    omega_o: tuple[float, ...] | None = None

    def with_overrides(self, **changes) -> "SimConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


# --- parsing ---------------------------------------------------------------


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(","))


def _parse_torque(text: str) -> tuple:
    kind, _, rest = text.strip().partition(" ")
    kind = kind.lower()
    if kind == "zero" and not rest.strip():
        return ("zero",)
    if kind == "constant":
        return ("constant", _floats(rest))
    if kind == "schedule":
        entries = []
        for item in rest.split(";"):
            if not item.strip():
                continue
            t, sep, vec = item.partition(":")
            if not sep:
                raise ValueError(f"schedule entry {item.strip()!r} lacks 't:'")
            entries.append((float(t), _floats(vec)))
        return ("schedule", tuple(entries))
    raise ValueError("expected 'zero', 'constant x,y,z' or 'schedule t:x,y,z; ...'")


def parse_config(text: str) -> SimConfig:
    """Parse scenario text.

    Raises:
        ConfigError: on unknown or duplicate keys, malformed lines or
            values, and missing required keys.
    """
    raw: dict[str, str] = {}
    problems: list[Violation] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            problems.append(Violation(f"line {lineno}", line, "expected 'key = value'"))
        elif key not in KEYS:
            problems.append(Violation(key, value, f"unknown key (expected one of {', '.join(KEYS)})"))
        elif key in raw:
            problems.append(Violation(key, value, "duplicate key"))
        else:
            raw[key] = value

    values: dict[str, object] = {}

    def convert(key, fn, constraint):
        if key not in raw:
            return
        try:
            values[key] = fn(raw[key])
        except ValueError as exc:
            problems.append(Violation(key, raw[key], f"{constraint} ({exc})"))

    convert("inertia", _floats, "expected 6 comma-separated reals")
    convert("q0", _floats, "expected 4 comma-separated reals")
    convert("omega0", _floats, "expected 3 comma-separated reals")
    convert("omega_o", _floats, "expected 3 comma-separated reals")
    convert("dt", float, "expected a real")
    convert("duration", float, "expected a real")
    convert("output_every", int, "expected an integer")
    convert("torque", _parse_torque, "malformed torque")

    if "attitude_input" in raw:
        kind, _, rest = raw["attitude_input"].partition(" ")
        kind = kind.lower()
        if kind == "quaternion" and not rest.strip():
            values["attitude_input"] = "quaternion"
        elif kind == "euler":
            values["attitude_input"] = "euler"
            try:
                values["euler_angles"] = _floats(rest)
            except ValueError as exc:
                problems.append(Violation("attitude_input", raw["attitude_input"], f"expected 'euler phi, theta, psi' ({exc})"))
        else:
            problems.append(Violation("attitude_input", raw["attitude_input"], "expected 'quaternion' or 'euler phi, theta, psi'"))
    if "frame" in raw:
        frame = raw["frame"].lower()
        if frame in ("inertial", "orbital"):
            values["frame"] = frame
        else:
            problems.append(Violation("frame", raw["frame"], "expected 'inertial' or 'orbital'"))

    for key in ("inertia", "omega0", "dt", "duration"):
        if key not in raw:
            problems.append(Violation(key, None, "required key is missing"))
    if values.get("attitude_input", "quaternion") == "quaternion" and "q0" not in raw:
        problems.append(Violation("q0", None, "required when attitude_input = quaternion"))

    if problems:
        raise ConfigError(problems)
    if values.get("attitude_input") == "euler":
        values.setdefault("q0", None)
    return SimConfig(**values)


def load_config(path) -> SimConfig:
    return parse_config(Path(path).read_text())


# --- validation ------------------------------------------------------------


def _finite(values) -> bool:
    return all(math.isfinite(v) for v in values)


def _check_vector(violations, key, value, size):
    if value is None:
        violations.append(Violation(key, value, "required"))
    elif len(value) != size or not _finite(value):
        violations.append(Violation(key, value, f"expected {size} finite reals"))
    else:
        return True
    return False


def validate(config: SimConfig) -> list[Violation]:
    """List every violated scenario constraint; empty when the config is usable."""
    out: list[Violation] = []

    if _check_vector(out, "inertia", config.inertia, 6):
        try:
            InertiaMatrix.from_components(*config.inertia)
        except DomainError as exc:
            out.append(Violation("inertia", config.inertia, f"must be symmetric positive definite ({exc})"))

    if config.attitude_input == "quaternion":
        if _check_vector(out, "q0", config.q0, 4):
            n = math.sqrt(sum(c * c for c in config.q0))
            if not abs(n - 1.0) <= Q0_RENORM_TOL:
                out.append(Violation("q0", config.q0, f"norm {n:.6g} is not within {Q0_RENORM_TOL} of 1"))
    elif config.attitude_input == "euler":
        _check_vector(out, "attitude_input", config.euler_angles, 3)
    else:
        out.append(Violation("attitude_input", config.attitude_input, "expected 'quaternion' or 'euler'"))

    _check_vector(out, "omega0", config.omega0, 3)

    kind = config.torque[0] if config.torque else None
    if kind == "constant":
        _check_vector(out, "torque", config.torque[1], 3)
    elif kind == "schedule":
        entries = config.torque[1]
        times = [t for t, _ in entries]
        if not entries:
            out.append(Violation("torque", config.torque, "schedule needs at least one entry"))
        elif not all(len(v) == 3 and _finite(v) for _, v in entries) or not _finite(times):
            out.append(Violation("torque", config.torque, "schedule entries must be finite t: x, y, z"))
        elif any(b <= a for a, b in zip(times, times[1:])):
            out.append(Violation("torque", config.torque, "schedule times must be strictly increasing"))
    elif kind != "zero":
        out.append(Violation("torque", config.torque, "expected zero, constant or schedule"))

    duration_ok = math.isfinite(config.duration) and config.duration > 0.0
    if not duration_ok:
        out.append(Violation("duration", config.duration, "must be finite and > 0"))
    if not (math.isfinite(config.dt) and config.dt > 0.0):
        out.append(Violation("dt", config.dt, "must be finite and > 0"))
    elif duration_ok and config.dt > config.duration:
        out.append(Violation("dt", config.dt, f"must not exceed duration ({config.duration!r})"))

    if isinstance(config.output_every, bool) or not isinstance(config.output_every, int) or config.output_every < 1:
        out.append(Violation("output_every", config.output_every, "must be an integer >= 1"))

    if config.frame == "orbital":
        _check_vector(out, "omega_o", config.omega_o, 3)
    elif config.frame != "inertial":
        out.append(Violation("frame", config.frame, "expected 'inertial' or 'orbital'"))

    return out


# --- running ---------------------------------------------------------------


def step_count(duration: float, dt: float) -> int:
    """Number of whole steps of size ``dt`` in ``duration``, forgiving round-off."""
    return int(math.floor(duration / dt * (1.0 + 1e-12)))


def _torque_profile(spec: tuple):
    if spec[0] == "constant":
        return ConstantTorque(spec[1])
    if spec[0] == "schedule":
        return ScheduleTorque(spec[1])
    return ZeroTorque()


def initial_state(config: SimConfig) -> BodyState:
    if config.attitude_input == "euler":
        q = euler_to_quat(config.euler_angles)
    else:
        q = normalize(config.q0)
    omega = np.asarray(config.omega0, dtype=float)
    if config.frame == "orbital":
        omega = omega_inertial_from_orbital(rotation_matrix(q), config.omega_o, omega)
    return BodyState(q, omega)


@dataclass
class SimResult:
    rows: list[np.ndarray] = field(default_factory=list)
    steps: int = 0
    max_norm_drift: float = 0.0
    energy_drift_rel: float = 0.0
    momentum_drift_max: float = 0.0

    def summary(self, config: SimConfig) -> dict:
        return {
            "steps": self.steps,
            "rows": len(self.rows),
            "dt": config.dt,
            "duration": config.duration,
            "max_norm_drift": self.max_norm_drift,
            "energy_drift_rel": self.energy_drift_rel,
            "momentum_drift_max": self.momentum_drift_max,
            "frame": config.frame,
            "attitude_input": config.attitude_input,
            "euler_convention": CONVENTION,
        }


def _row(t: float, J: InertiaMatrix, state: BodyState) -> np.ndarray:
    return np.concatenate(
        (
            [t],
            state.q.as_array(),
            state.omega_p,
            [kinetic_energy(J, state.omega_p)],
            angular_momentum_fixed(J, state),
        )
    )


def iter_states(config: SimConfig) -> Iterator[tuple[float, BodyState]]:
    """Yield ``(t, state)`` for every step, starting with the initial state."""
    J = InertiaMatrix.from_components(*config.inertia)
    torque = _torque_profile(config.torque)
    state = initial_state(config)
    yield 0.0, state
    for i in range(step_count(config.duration, config.dt)):
        t = i * config.dt
        with np.errstate(over="ignore", invalid="ignore"):
            state = rk4_step(J, state, torque, t, config.dt)
        yield (i + 1) * config.dt, state


def run_simulation(config: SimConfig) -> SimResult:
    """Integrate a validated scenario.

    Raises:
        ConfigError: if :func:`validate` reports violations.
        NonFiniteStateError: if the state blows up; carries the time.
    """
    violations = validate(config)
    if violations:
        raise ConfigError(violations)
    J = InertiaMatrix.from_components(*config.inertia)
    result = SimResult()
    e0 = L0 = None
    for i, (t, state) in enumerate(iter_states(config)):
        with np.errstate(over="ignore", invalid="ignore"):
            energy = kinetic_energy(J, state.omega_p)
            momentum = angular_momentum_fixed(J, state)
        if not (math.isfinite(energy) and np.all(np.isfinite(momentum))):
            raise NonFiniteStateError(t)
        if e0 is None:
            e0, L0 = energy, momentum
        result.steps = i
        result.max_norm_drift = max(result.max_norm_drift, abs(float(np.linalg.norm(state.q.as_array())) - 1.0))
        scale = abs(e0) if e0 > 0.0 else 1.0
        result.energy_drift_rel = max(result.energy_drift_rel, abs(energy - e0) / scale)
        result.momentum_drift_max = max(result.momentum_drift_max, float(np.max(np.abs(momentum - L0))))
        if i % config.output_every == 0:
            result.rows.append(_row(t, J, state))
    return result


def format_csv(rows: Sequence[np.ndarray]) -> str:
    """CSV text with :data:`CSV_HEADER`; floats use shortest round-trip repr."""
    lines = [CSV_HEADER]
    lines.extend(",".join(repr(float(v)) for v in row) for row in rows)
    return "\n".join(lines) + "\n"
