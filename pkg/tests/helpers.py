"""Independent oracles shared by the test modules."""

import numpy as np

from quatdyn import Quaternion, conj, qmul


def random_unit_quats(rng, n):
    q = rng.normal(size=(n, 4))
    return q / np.linalg.norm(q, axis=1, keepdims=True)


def random_spd(rng, scale=1.0):
    A = rng.normal(size=(3, 3))
    return scale * (A @ A.T + 0.5 * np.eye(3))


def sandwich_matrix(q):
    """Body-to-fixed matrix built column by column from q o e_i o conj(q).

    Uses only the quaternion product, so it is independent of E and G.
    Valid for any q (entries scale with |q|^2).
    """
    q = Quaternion.from_array(q)
    cols = [qmul(qmul(q, Quaternion.pure(e)), conj(q)).qv for e in np.eye(3)]
    return np.column_stack(cols)


class PolyPath:
    """Smooth unit-quaternion path q(t) = p(t)/|p(t)|, p quadratic in t."""

    def __init__(self, rng):
        self.a = rng.normal(size=4)
        self.b = rng.normal(size=4)
        self.c = 0.5 * rng.normal(size=4)

    def raw(self, t):
        return self.a + self.b * t + self.c * t * t

    def __call__(self, t):
        p = self.raw(t)
        return p / np.linalg.norm(p)

    def rate(self, t):
        p = self.raw(t)
        pdot = self.b + 2.0 * self.c * t
        n = np.linalg.norm(p)
        return pdot / n - p * (p @ pdot) / n**3


def central_diff(f, t, h=1e-6):
    return (np.asarray(f(t + h)) - np.asarray(f(t - h))) / (2.0 * h)


def central_grad(f, x, h=1e-5):
    """Raw gradient of scalar f at x by central differences on each coordinate."""
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return g


def rel_err(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300))
