"""Independent reference computations used to derive frozen test values.

Nothing here imports the integration or interpolation paths under test.
"""

import math

import numpy as np


def rk4_fundamental(wavelength, n_t, dn, spatial_freq, length, steps, checkpoints):
    """Fixed-step classical RK4 for u, v, theta directly in z (nm).

    The state is (u, u', v, v', theta) with theta' = beta0 / rho^2 and
    rho^2 = (beta0 u)^2 + v^2.  Returns {z: (u, u', v, v', theta)} for each
    checkpoint, which must fall on a step boundary.
    """
    k0 = 2 * math.pi / wavelength
    bt2 = (k0 * n_t) ** 2
    c2 = (k0 * dn) ** 2
    b0 = math.sqrt(bt2 + c2)

    def f(z, y):
        u, up, v, vp, _ = y
        b2 = bt2 + c2 * math.cos(spatial_freq * z) ** 2
        r2 = (b0 * u) ** 2 + v * v
        return (up, -b2 * u, vp, -b2 * v, b0 / r2)

    h = length / steps
    marks = {int(round(c / h)): c for c in checkpoints}
    y = (0.0, 1.0, 1.0, 0.0, 0.0)
    out = {}
    if 0 in marks:
        out[marks[0]] = y
    for i in range(steps):
        z = i * h
        k1 = f(z, y)
        k2 = f(z + h / 2, tuple(a + h / 2 * b for a, b in zip(y, k1)))
        k3 = f(z + h / 2, tuple(a + h / 2 * b for a, b in zip(y, k2)))
        k4 = f(z + h, tuple(a + h * b for a, b in zip(y, k3)))
        y = tuple(a + h / 6 * (b1 + 2 * b2 + 2 * b3 + b4) for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4))
        if i + 1 in marks:
            out[marks[i + 1]] = y
    return out


def richardson_rk4(*args, steps, checkpoints):
    """RK4 at n and 2n steps combined to cancel the h^4 error term."""
    coarse = rk4_fundamental(*args, steps, checkpoints)
    fine = rk4_fundamental(*args, 2 * steps, checkpoints)
    return {
        c: tuple((16 * b - a) / 15 for a, b in zip(coarse[c], fine[c])) for c in checkpoints
    }


def trapezoid_weights(x):
    w = np.gradient(x) * 0 + (x[1] - x[0])
    w[0] = w[-1] = 0.5 * (x[1] - x[0])
    return w
