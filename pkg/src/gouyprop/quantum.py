"""
Single-mode quantum states in the optical field-strength (OFS) representation.

The OFS variable E is dimensionless, so only the accumulated phase theta
enters.  Evolution by theta multiplies the Fock state |N> by
exp(i (N + 1/2) theta); the matching propagator is the Mehler kernel

    K(E, E0; theta) = (i / (pi sin theta))^(1/2)
                      exp(-i / sin theta [cos theta (E^2 + E0^2) - 2 E E0]).

Gaussian states are evolved in closed form.  A Gaussian with input noise
D0 = dE0^2 keeps a Gaussian shape exp(-a (E - c)^2) whose complex width
coefficient is

    a(theta) = (cos theta / D0 - i sin theta) / (cos theta - i sin theta / D0),

so the noise is dE^2 = 1 / Re a = sin^2 theta / D0 + D0 cos^2 theta and the
Gouy phase is Theta = arctan(tan theta / D0), unwrapped.  For squeezed inputs
Im a != 0: the packet carries a quadratic phase (chirp) in addition to the
noise and Gouy phase.  ``propagate_numeric`` integrates the kernel directly and
serves as an independent check on the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CausticError, DomainError, ResolutionError

__all__ = [
    "MAX_FOCK",
    "CAUSTIC_EPS",
    "OfsGrid",
    "GaussianStateSpec",
    "EvolvedGaussian",
    "PropagatorKernel",
    "fock_wavefunction",
    "fock_states",
    "fock_propagated",
    "gaussian_input",
    "evolve_noise",
    "gouy_phase",
    "evolve_gaussian",
    "evolved_gaussian",
    "kernel_value",
    "mehler_kernel",
    "required_points",
    "default_grid",
    "propagate_numeric",
    "l2_norm",
    "l2_distance",
]

MAX_FOCK = 60
CAUSTIC_EPS = 1e-6


@dataclass(frozen=True)
class OfsGrid:
    """Uniform grid of OFS values on [e_min, e_max]."""

    e_min: float
    e_max: float
    points: int

    def __post_init__(self):
        if not self.e_min < 0 < self.e_max:
            raise DomainError(f"OFS grid must straddle 0, got [{self.e_min}, {self.e_max}]")
        if self.points < 64:
            raise DomainError(f"OFS grid needs >= 64 points, got {self.points}")

    @classmethod
    def symmetric(cls, e_max, points):
        return cls(-e_max, e_max, int(points))

    @property
    def values(self):
        return np.linspace(self.e_min, self.e_max, self.points)

    @property
    def spacing(self):
        return (self.e_max - self.e_min) / (self.points - 1)

    @property
    def weights(self):
        """Trapezoidal quadrature weights."""
        w = np.full(self.points, self.spacing)
        w[0] = w[-1] = 0.5 * self.spacing
        return w


@dataclass(frozen=True)
class GaussianStateSpec:
    """Single-mode Gaussian input with amplitude |alpha|, phase phi and noise dE0^2."""

    amplitude: float = 1.0
    phase: float = 0.0
    noise0: float = 1.0

    def __post_init__(self):
        if not (self.amplitude >= 0 and math.isfinite(self.amplitude)):
            raise DomainError(f"amplitude must be finite and >= 0, got {self.amplitude}")
        if not math.isfinite(self.phase):
            raise DomainError(f"phase must be finite, got {self.phase}")
        if not (self.noise0 > 0 and math.isfinite(self.noise0)):
            raise DomainError(f"input noise must be positive, got {self.noise0}")

    @property
    def is_coherent(self):
        return self.noise0 == 1.0


@dataclass(frozen=True)
class EvolvedGaussian:
    """Parameters of a Gaussian state after accumulating phase theta.

    The wavefunction is

        (2 / (pi noise))^(1/4) exp(i gouy / 2) exp(-i delta(E))
            exp(-(1 / noise + i chirp) (E - center)^2)

    with delta(E) = delta_coefficients[0] + delta_coefficients[1] * E.
    """

    theta: float
    noise: float
    gouy_phase: float
    center: float
    delta_coefficients: tuple
    chirp: float

    def __call__(self, e):
        e = np.asarray(e, dtype=float)
        d0, d1 = self.delta_coefficients
        width = 1.0 / self.noise + 1j * self.chirp
        return (
            (2.0 / (math.pi * self.noise)) ** 0.25
            * np.exp(1j * (0.5 * self.gouy_phase - d0 - d1 * e))
            * np.exp(-width * (e - self.center) ** 2)
        )


def _check_fock(n):
    if not (isinstance(n, (int, np.integer)) and 0 <= n <= MAX_FOCK):
        raise DomainError(f"Fock index must be an integer in [0, {MAX_FOCK}], got {n}")


def fock_states(n_max, e):
    """All eigenfunctions Psi_0..Psi_{n_max} at e, shape (n_max + 1, *e.shape).

    Uses the upward three-term recurrence on the normalised Hermite functions,
    which never forms H_N or N! explicitly and so does not overflow.
    """
    _check_fock(n_max)
    e = np.asarray(e, dtype=float)
    x = math.sqrt(2.0) * e
    out = np.empty((n_max + 1,) + e.shape)
    out[0] = 2.0**0.25 * math.pi**-0.25 * np.exp(-e * e)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * x * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def fock_wavefunction(n: int, e):
    """Number state Psi_N(E) = 2^(1/4) H_N(sqrt(2) E) exp(-E^2) / sqrt(2^N sqrt(pi) N!)."""
    psi = fock_states(n, e)[n].astype(complex)
    return complex(psi) if psi.ndim == 0 else psi


def fock_propagated(n: int, e, theta: float):
    """Number state after phase theta: exp(i (N + 1/2) theta) Psi_N(E)."""
    return np.exp(1j * (n + 0.5) * theta) * fock_wavefunction(n, e)


def gaussian_input(state: GaussianStateSpec, e):
    """Input Gaussian wavefunction at the start of the medium (unit L2 norm)."""
    return evolve_gaussian(state, 0.0)(e)


def evolve_noise(state: GaussianStateSpec, theta):
    """Quadrature noise dE^2 = sin^2 theta / dE0^2 + cos^2 theta dE0^2."""
    d0 = state.noise0
    return np.sin(theta) ** 2 / d0 + np.cos(theta) ** 2 * d0


def gouy_phase(state: GaussianStateSpec, theta):
    """Quantum Gouy phase arctan(tan theta / dE0^2), continuous in theta.

    Written as theta + arctan(sin cos (1 - D0) / (D0 cos^2 + sin^2)); the
    denominator is positive, so this is the branch that starts at 0, never
    jumps, and equals theta wherever sin(2 theta) = 0.
    """
    d0 = state.noise0
    s = np.sin(theta)
    c = np.cos(theta)
    return theta + np.arctan(s * c * (1.0 - d0) / (d0 * c * c + s * s))


def evolve_gaussian(state: GaussianStateSpec, theta: float) -> EvolvedGaussian:
    """Closed-form parameters of the Gaussian state after phase theta."""
    s = math.sin(theta)
    c = math.cos(theta)
    inv_d0 = 1.0 / state.noise0
    width = (c * inv_d0 - 1j * s) / (c - 1j * s * inv_d0)
    a = state.amplitude
    ph = state.phase + theta
    return EvolvedGaussian(
        theta=theta,
        noise=float(evolve_noise(state, theta)),
        gouy_phase=float(gouy_phase(state, theta)),
        center=a * math.cos(ph),
        delta_coefficients=(math.sin(ph) * a * a * math.cos(ph), -2.0 * a * math.sin(ph)),
        chirp=width.imag,
    )


def evolved_gaussian(state: GaussianStateSpec, theta: float, e):
    """Wavefunction of the evolved Gaussian state at OFS value(s) e."""
    return evolve_gaussian(state, theta)(e)


@dataclass(frozen=True)
class PropagatorKernel:
    """Single-mode Mehler kernel at fixed accumulated phase theta."""

    theta: float
    caustic_eps: float = CAUSTIC_EPS

    @property
    def near_caustic(self):
        return abs(math.sin(self.theta)) < self.caustic_eps

    @property
    def prefactor(self):
        """(i / (pi sin theta))^(1/2) on the branch continuous from theta = 0+.

        Each caustic theta = m pi adds pi / 2 to the phase (m = floor(theta / pi)).
        """
        m = math.floor(self.theta / math.pi)
        phase = math.pi / 4 + m * math.pi / 2
        return complex(math.cos(phase), math.sin(phase)) / math.sqrt(
            math.pi * abs(math.sin(self.theta))
        )


def mehler_kernel(theta, e, e0):
    """Mehler kernel for complex theta with 0 < Re theta < pi and Im theta >= 0.

    Analytic continuation used to compare against the damped eigenfunction
    series sum_N Psi_N(E) Psi_N(E0) w^(N + 1/2), w = exp(i theta), |w| < 1.
    """
    theta = complex(theta)
    sn = np.sin(theta)
    e = np.asarray(e, dtype=float)
    e0 = np.asarray(e0, dtype=float)
    return np.sqrt(1j / (np.pi * sn)) * np.exp(
        -1j / sn * (np.cos(theta) * (e * e + e0 * e0) - 2.0 * e * e0)
    )


def _caustic_message(theta):
    return (
        f"theta = {theta:.12g} is within {CAUSTIC_EPS:g} of a caustic (sin theta = 0); "
        "evaluate at theta +/- eps or use the closed-form evolution"
    )


def kernel_value(kernel: PropagatorKernel, e, e0):
    """K(E, E0; theta) for real theta away from caustics."""
    if kernel.near_caustic:
        raise CausticError(_caustic_message(kernel.theta))
    th = kernel.theta
    e = np.asarray(e, dtype=float)
    e0 = np.asarray(e0, dtype=float)
    val = kernel.prefactor * np.exp(
        -1j / math.sin(th) * (math.cos(th) * (e * e + e0 * e0) - 2.0 * e * e0)
    )
    return complex(val) if val.ndim == 0 else val


def required_points(grid: OfsGrid, theta: float) -> int:
    """Smallest grid size keeping the kernel phase step below pi / 4.

    The phase gradient along E0 is 2 (cos theta E0 - E) / sin theta, bounded on
    the grid by 2 (|cos theta| + 1) max|E| / |sin theta|.
    """
    s = abs(math.sin(theta))
    if s < CAUSTIC_EPS:
        raise CausticError(_caustic_message(theta))
    emax = max(abs(grid.e_min), abs(grid.e_max))
    gradient = 2.0 * (abs(math.cos(theta)) + 1.0) * emax / s
    h_max = (math.pi / 4) / gradient
    return int(math.ceil((grid.e_max - grid.e_min) / h_max)) + 1


def default_grid(state: GaussianStateSpec, theta: float | None = None, points: int = 2048):
    """Symmetric grid wide enough for the state at every theta.

    Half-width is |alpha| + 6 max(dE0, 1/dE0); the point count doubles from
    ``points`` until the kernel sampling criterion at ``theta`` holds.
    """
    d = math.sqrt(state.noise0)
    e_max = state.amplitude + 6.0 * max(d, 1.0 / d)
    grid = OfsGrid.symmetric(e_max, points)
    if theta is not None:
        while grid.points < required_points(grid, theta):
            grid = OfsGrid.symmetric(e_max, 2 * grid.points)
    return grid


def propagate_numeric(psi, grid: OfsGrid, theta: float, block: int = 512):
    """Apply the Mehler kernel to sampled wavefunction ``psi`` by trapezoidal quadrature.

    Output is sampled on the same grid.  ``psi`` should be negligible
    (< 1e-12) at the grid edges.

    Raises
    ------
    CausticError
        |sin theta| < 1e-6.
    ResolutionError
        Grid spacing violates the kernel sampling criterion.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (grid.points,):
        raise DomainError(f"psi has shape {psi.shape}, grid has {grid.points} points")
    kernel = PropagatorKernel(theta)
    if kernel.near_caustic:
        raise CausticError(_caustic_message(theta))
    need = required_points(grid, theta)
    if grid.points < need:
        raise ResolutionError(
            f"OFS grid with {grid.points} points under-resolves the kernel at theta = {theta:g}",
            need,
        )
    e = grid.values
    s = math.sin(theta)
    # K = pref * chirp(E) * exp(2i E E0 / s) * chirp(E0)
    chirp = np.exp(-1j * math.cos(theta) / s * e * e)
    src = grid.weights * chirp * psi
    out = np.empty(grid.points, dtype=complex)
    for i in range(0, grid.points, block):
        rows = e[i : i + block]
        out[i : i + block] = np.exp((2j / s) * np.outer(rows, e)) @ src
    return kernel.prefactor * chirp * out


def l2_norm(psi, grid: OfsGrid):
    return float(np.sqrt(np.sum(grid.weights * np.abs(psi) ** 2)))


def l2_distance(a, b, grid: OfsGrid, relative: bool = True):
    """L2 distance between two sampled wavefunctions, relative to ||b|| by default."""
    d = l2_norm(np.asarray(a) - np.asarray(b), grid)
    return d / l2_norm(b, grid) if relative else d
