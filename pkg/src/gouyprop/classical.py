"""
Classical mode propagation: fundamental solutions, Ermakov-Pinney amplitude,
accumulated phase and the Lewis-Ermakov invariant.

The real field coefficient obeys q'' + beta(z)^2 q = 0.  Two fundamental
solutions u, v with u(0) = v'(0) = 0, u'(0) = v(0) = 1 are integrated together
with the phase theta' = beta0 / rho^2 and the comoving length s' = 1 / rho^2,
where

    rho(z) = sqrt((beta0 u)^2 + v^2)

is rebuilt algebraically from (u, v) at every step.  That rho solves the
Pinney equation rho'' + beta^2 rho = beta0^2 / rho^3 with rho(0) = 1,
rho'(0) = 0, and theta = beta0 * s holds identically.

Integration runs in the scaled coordinate zeta = k0 z so that the effective
index beta / k0 = O(1) sets the step size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, IntegrationError
from .media import MediumSpec

__all__ = [
    "ClassicalSolution",
    "ClassicalTrajectory",
    "solve_fundamental",
    "rho_at",
    "rho_prime_at",
    "theta_at",
    "comoving_transform",
    "fundamental_trajectory",
    "invariant_value",
    "diagnostics",
    "pinney_residual",
]

REL_TOL_RANGE = (1e-13, 1e-6)


@dataclass(frozen=True)
class ClassicalSolution:
    """Fundamental solutions sampled on a uniform grid over [0, L].

    ``u`` is in nm and ``u_prime`` is dimensionless (u'(0) = 1), so that
    ``beta0 * u`` and ``v`` are both dimensionless.  ``theta`` is in rad and
    ``s`` in nm.
    """

    medium: MediumSpec
    z: np.ndarray
    u: np.ndarray
    u_prime: np.ndarray
    v: np.ndarray
    v_prime: np.ndarray
    rho: np.ndarray
    rho_prime: np.ndarray
    theta: np.ndarray
    s: np.ndarray
    rel_tol: float
    wronskian_residual: float
    pinney_residual: float
    dense: Callable | None = field(default=None, repr=False, compare=False)

    @property
    def beta0(self):
        return self.medium.beta0

    @property
    def n_eff(self):
        return np.sqrt(self.medium.index_squared(self.z))


@dataclass(frozen=True)
class ClassicalTrajectory:
    """Field coefficient q and its z-derivative p (scalars or aligned arrays)."""

    q: np.ndarray | float
    p: np.ndarray | float


def _rhs(medium, n0):
    nt2 = medium.n_transverse**2
    dn2 = medium.delta_n**2
    k0 = medium.k0
    profile = medium.profile
    z_end = medium.length_nm

    def f(zeta, y):
        u, up, v, vp = y[0], y[1], y[2], y[3]
        # zeta / k0 can round just past L on the final step
        h = profile(min(zeta / k0, z_end))
        n2 = nt2 + dn2 * h * h
        inv_r2 = 1.0 / ((n0 * u) ** 2 + v * v)
        return np.array([up, -n2 * u, vp, -n2 * v, n0 * inv_r2, inv_r2])

    return f


def solve_fundamental(
    medium: MediumSpec,
    rel_tol: float = 1e-10,
    grid_points: int = 2001,
    abs_tol: float | None = None,
    check_tolerance: bool = True,
) -> ClassicalSolution:
    """Integrate the two fundamental solutions across the medium.

    Uses the embedded Dormand-Prince 8(5,3) pair.  Its 7th-order dense output
    samples ``grid_points`` uniform points over [0, L] and is kept on the
    solution for off-grid queries (``rho_at``, ``theta_at``).

    Parameters
    ----------
    medium : MediumSpec
    rel_tol : float
        Relative tolerance, restricted to [1e-13, 1e-6] unless
        ``check_tolerance`` is False (used by the self-verification suite to
        run deliberately degraded integrations).
    grid_points : int
        Number of output samples, at least 16.
    abs_tol : float, optional
        Absolute tolerance; defaults to min(1e-12, rel_tol / 100).

    Raises
    ------
    DomainError
        Tolerance or grid size out of range.
    IntegrationError
        Step-size underflow; carries the z where integration stopped.
    """
    lo, hi = REL_TOL_RANGE
    if check_tolerance and not lo <= rel_tol <= hi:
        raise DomainError(f"rel_tol must lie in [{lo:g}, {hi:g}], got {rel_tol:g}")
    if not 0 < rel_tol < 1:
        raise DomainError(f"rel_tol must lie in (0, 1), got {rel_tol:g}")
    if grid_points < 16:
        raise DomainError(f"grid_points must be >= 16, got {grid_points}")
    if abs_tol is None:
        abs_tol = min(1e-12, rel_tol * 1e-2)

    k0 = medium.k0
    n0 = medium.beta0 / k0
    zeta_end = k0 * medium.length_nm
    zeta = np.linspace(0.0, zeta_end, int(grid_points))

    res = solve_ivp(
        _rhs(medium, n0),
        (0.0, zeta_end),
        [0.0, 1.0, 1.0, 0.0, 0.0, 0.0],
        method="DOP853",
        t_eval=zeta,
        dense_output=True,
        rtol=rel_tol,
        atol=abs_tol,
    )
    if res.status != 0:
        raise IntegrationError(res.message, z=float(res.t[-1]) / k0)

    u_s, up, v, vp_s, th, s_s = res.y
    z = zeta / k0
    z[-1] = medium.length_nm
    # back to physical units: d/dz = k0 d/dzeta
    u = u_s / k0
    vp = vp_s * k0
    s = s_s / k0
    th[0] = 0.0
    s[0] = 0.0

    beta0 = medium.beta0
    rho = np.sqrt((beta0 * u) ** 2 + v**2)
    rho_p = (beta0**2 * u * up + v * vp) / rho
    wr = float(np.max(np.abs(up * v - vp * u - 1.0)))

    sol = ClassicalSolution(
        medium=medium,
        z=z,
        u=u,
        u_prime=up,
        v=v,
        v_prime=vp,
        rho=rho,
        rho_prime=rho_p,
        theta=th,
        s=s,
        rel_tol=rel_tol,
        wronskian_residual=wr,
        pinney_residual=float("nan"),
        dense=res.sol,
    )
    object.__setattr__(sol, "pinney_residual", pinney_residual(sol))
    return sol


def pinney_residual(sol: ClassicalSolution) -> float:
    """max |rho'' + beta^2 rho - beta0^2 / rho^3| / beta0^2 over interior points.

    rho'' comes from centred second differences on the (uniform) grid, so the
    result is limited by truncation error on coarse grids.
    """
    if sol.z.size < 3:
        return float("nan")
    h = sol.z[1] - sol.z[0]
    rho = sol.rho
    rpp = (rho[2:] - 2.0 * rho[1:-1] + rho[:-2]) / h**2
    beta2 = sol.medium.k0**2 * sol.medium.index_squared(sol.z[1:-1])
    b02 = sol.beta0**2
    r = rho[1:-1]
    return float(np.max(np.abs(rpp + beta2 * r - b02 / r**3)) / b02)


def _check_z(sol, z):
    z = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(z)) or np.any(z < sol.z[0]) or np.any(z > sol.z[-1]):
        raise DomainError(f"z must lie in [{sol.z[0]}, {sol.z[-1]}] nm")
    return z


def _state_at(sol, z):
    """Dense-output state (u, u', v, v', theta, s) in physical units."""
    z = _check_z(sol, z)
    k0 = sol.medium.k0
    y = sol.dense(np.clip(k0 * z, 0.0, k0 * sol.z[-1]))
    return y[0] / k0, y[1], y[2], y[3] * k0, y[4], y[5] / k0


def _uv_at(sol, z):
    return _state_at(sol, z)[:4]


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def rho_at(sol: ClassicalSolution, z):
    """Ermakov-Pinney amplitude sqrt((beta0 u)^2 + v^2) at arbitrary z."""
    u, _, v, _ = _uv_at(sol, z)
    return _scalar(np.sqrt((sol.beta0 * u) ** 2 + v**2))


def rho_prime_at(sol: ClassicalSolution, z):
    """z-derivative of rho, (beta0^2 u u' + v v') / rho."""
    u, up, v, vp = _uv_at(sol, z)
    b02 = sol.beta0**2
    return _scalar((b02 * u * up + v * vp) / np.sqrt(b02 * u * u + v * v))


def theta_at(sol: ClassicalSolution, z):
    """Accumulated phase theta(z) from the co-integrated dense output."""
    return _scalar(_state_at(sol, z)[4])


def comoving_transform(traj: ClassicalTrajectory, rho, rho_dot):
    """Map (q, p) to comoving coordinates (Q, P).

    Q = q / rho and P = rho p - (rho_dot / rho) Q, where ``rho_dot`` is the
    derivative of rho with respect to the comoving length s.  Since
    ds = dz / rho^2, rho_dot = rho^2 rho' and P reduces to rho p - q rho'.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise DomainError("rho must be positive")
    Q = np.asarray(traj.q) / rho
    P = rho * np.asarray(traj.p) - (np.asarray(rho_dot) / rho) * Q
    return _scalar(Q), _scalar(P)


def fundamental_trajectory(sol: ClassicalSolution, which: str = "u") -> ClassicalTrajectory:
    """The u or v fundamental solution as a (q, p) trajectory on the grid."""
    if which == "u":
        return ClassicalTrajectory(sol.u, sol.u_prime)
    if which == "v":
        return ClassicalTrajectory(sol.v, sol.v_prime)
    raise ValueError(f"which must be 'u' or 'v', got {which!r}")


def invariant_value(traj: ClassicalTrajectory, sol: ClassicalSolution, z):
    """Lewis-Ermakov invariant 1/2 [(rho p - q rho')^2 + beta0^2 (q / rho)^2].

    ``traj`` must hold the field sampled at ``z``.  The value is constant
    along any solution of the mode equation.
    """
    if np.array_equal(np.asarray(z), sol.z):
        rho, rho_p = sol.rho, sol.rho_prime
    else:
        rho, rho_p = rho_at(sol, z), rho_prime_at(sol, z)
    q = np.asarray(traj.q, dtype=float)
    p = np.asarray(traj.p, dtype=float)
    val = 0.5 * ((rho * p - q * rho_p) ** 2 + sol.beta0**2 * (q / rho) ** 2)
    return _scalar(val)


def diagnostics(sol: ClassicalSolution):
    """Residual summary (wronskian, pinney, theta consistency).

    Coarse grids report large Pinney residuals rather than failing; only
    grids with fewer than 5 points raise DomainError.
    """
    if sol.z.size < 5:
        raise DomainError("diagnostics need at least 5 grid points")
    theta_consistency = float(np.max(np.abs(sol.theta - sol.beta0 * sol.s)))
    return sol.wronskian_residual, pinney_residual(sol), theta_consistency
