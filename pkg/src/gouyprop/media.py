"""
Separable longitudinally inhomogeneous media.

The squared index is n^2(x, y, z) = n0^2 f^2(x, y) + dn^2 h^2(z).  The transverse
part enters only through the effective transverse index N_t = beta_t / k0, so a
medium is fully described by the wavelength, N_t, the contrast dn and the
longitudinal profile h(z).  The local propagation constant is

    beta(z) = sqrt(beta_t^2 + k0^2 dn^2 h(z)^2).

Lengths are in nanometres and propagation constants in rad/nm throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError

__all__ = [
    "Constant",
    "Cosine",
    "Tabulated",
    "MediumSpec",
    "beta_local",
    "effective_index_curve",
]


@dataclass(frozen=True)
class Constant:
    """Uniform longitudinal profile h(z) = level."""

    level: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.level):
            raise DomainError(f"constant profile level must be finite, got {self.level}")

    def __call__(self, z):
        return np.full_like(np.asarray(z, dtype=float), self.level)

    @property
    def domain(self):
        return (-math.inf, math.inf)


@dataclass(frozen=True)
class Cosine:
    """h(z) = cos(spatial_frequency * z), spatial_frequency in rad/nm."""

    spatial_frequency: float

    def __post_init__(self):
        if not (self.spatial_frequency > 0 and math.isfinite(self.spatial_frequency)):
            raise DomainError(
                f"cosine spatial frequency must be positive, got {self.spatial_frequency}"
            )

    def __call__(self, z):
        return np.cos(self.spatial_frequency * np.asarray(z, dtype=float))

    @property
    def domain(self):
        return (-math.inf, math.inf)

    @property
    def period(self):
        """Period of h(z); h^2 completes two oscillations over it."""
        return 2.0 * math.pi / self.spatial_frequency


@dataclass(frozen=True)
class Tabulated:
    """Sampled profile, interpolated with a monotone (PCHIP) cubic on h.

    Interpolating h rather than h^2 keeps the sign structure of the samples and
    never overshoots the data, so beta^2 stays >= beta_t^2.
    """

    z: tuple
    h: tuple
    _interp: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        h = np.asarray(self.h, dtype=float)
        if z.ndim != 1 or z.shape != h.shape:
            raise DomainError("tabulated profile needs matching 1-D z and h samples")
        if z.size < 2:
            raise DomainError("tabulated profile needs at least two samples")
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(h))):
            raise DomainError("tabulated profile samples must be finite")
        if np.any(np.diff(z) <= 0):
            raise DomainError("tabulated profile z samples must be strictly increasing")
        object.__setattr__(self, "z", tuple(z.tolist()))
        object.__setattr__(self, "h", tuple(h.tolist()))
        object.__setattr__(self, "_interp", PchipInterpolator(z, h, extrapolate=False))

    @classmethod
    def from_pairs(cls, samples):
        samples = list(samples)
        return cls(tuple(s[0] for s in samples), tuple(s[1] for s in samples))

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        lo, hi = self.domain
        if np.any(z < lo) or np.any(z > hi):
            raise DomainError(
                f"tabulated profile evaluated outside its sampled range [{lo}, {hi}] nm"
            )
        return self._interp(z)

    @property
    def domain(self):
        return (self.z[0], self.z[-1])


@dataclass(frozen=True)
class MediumSpec:
    """A separable waveguide medium.

    Parameters
    ----------
    wavelength_nm : float
        Vacuum wavelength.
    n_transverse : float
        Effective transverse index N_t = beta_t / k0.
    delta_n : float
        Index contrast of the longitudinal part.
    profile : Constant | Cosine | Tabulated
        Longitudinal profile h(z).
    length_nm : float, optional
        Medium length L.  Defaults to one profile period for a cosine profile
        and is required otherwise.
    """

    wavelength_nm: float
    n_transverse: float
    delta_n: float
    profile: Constant | Cosine | Tabulated
    length_nm: float | None = None

    def __post_init__(self):
        if not self.wavelength_nm > 0:
            raise DomainError(f"wavelength must be positive, got {self.wavelength_nm}")
        if not self.n_transverse > 0:
            raise DomainError(f"transverse index must be positive, got {self.n_transverse}")
        if not self.delta_n >= 0:
            raise DomainError(f"index contrast must be non-negative, got {self.delta_n}")
        if self.length_nm is None:
            if not isinstance(self.profile, Cosine):
                raise DomainError("length_nm is required unless the profile is a cosine")
            object.__setattr__(self, "length_nm", self.profile.period)
        if not (self.length_nm > 0 and math.isfinite(self.length_nm)):
            raise DomainError(f"length must be positive and finite, got {self.length_nm}")
        lo, hi = self.profile.domain
        if lo > 0 or hi < self.length_nm:
            raise DomainError(
                f"profile samples cover [{lo}, {hi}] nm but the medium spans "
                f"[0, {self.length_nm}] nm"
            )

    @property
    def k0(self):
        """Vacuum wavenumber 2 pi / lambda (rad/nm)."""
        return 2.0 * math.pi / self.wavelength_nm

    @property
    def beta_t(self):
        return self.k0 * self.n_transverse

    @property
    def beta0(self):
        """beta(0), computed from h(0) so any profile is admissible."""
        return float(self.k0 * self.index_squared(0.0) ** 0.5)

    def index_squared(self, z):
        """(beta(z) / k0)^2 without range checks; used inside the integrator."""
        h = self.profile(z)
        return self.n_transverse**2 + self.delta_n**2 * h * h

    def with_contrast(self, delta_n):
        """Copy of this medium with a different index contrast (same length)."""
        return MediumSpec(
            self.wavelength_nm, self.n_transverse, delta_n, self.profile, self.length_nm
        )


def _check_range(medium, z):
    z = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(z)) or np.any(z < 0) or np.any(z > medium.length_nm):
        raise DomainError(f"z must lie in [0, {medium.length_nm}] nm")
    return z


def beta_local(medium: MediumSpec, z):
    """Local propagation constant beta(z) in rad/nm (scalar or array z)."""
    z = _check_range(medium, z)
    beta = medium.k0 * np.sqrt(medium.index_squared(z))
    return float(beta) if beta.ndim == 0 else beta


def effective_index_curve(medium: MediumSpec, grid_points: int):
    """Uniform samples of N(z) = beta(z) / k0 over [0, L].

    Returns
    -------
    z, n_eff : ndarray
    """
    if grid_points < 2:
        raise DomainError(f"grid_points must be >= 2, got {grid_points}")
    z = np.linspace(0.0, medium.length_nm, int(grid_points))
    return z, beta_local(medium, z) / medium.k0
