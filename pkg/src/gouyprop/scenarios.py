"""Experiment drivers binding media, classical solutions and quantum evolution."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classical import ClassicalSolution, diagnostics, solve_fundamental, theta_at
from .errors import DomainError
from .media import Constant, Cosine, MediumSpec
from .quantum import GaussianStateSpec, default_grid, evolve_noise, evolved_gaussian, gouy_phase

__all__ = [
    "OUTPUT_KINDS",
    "REFERENCE_STATES",
    "ExperimentConfig",
    "ExperimentResult",
    "Snapshot",
    "reference_medium",
    "homogeneous_counterpart",
    "run_experiment",
    "run_cosine_experiment",
    "run_homogeneous_baseline",
    "sweep_noise",
    "SWEEP_COLUMNS",
]

OUTPUT_KINDS = ("effective_index", "classical_phase", "noise", "gouy", "wavefunction_snapshots")

# Noise and Gouy phase do not depend on |alpha| or phi; |alpha| = 1, phi = 0 is
# an arbitrary but fixed choice for the wavefunction snapshots.
REFERENCE_STATES = (
    GaussianStateSpec(1.0, 0.0, 1.0),
    GaussianStateSpec(1.0, 0.0, 1.5),
    GaussianStateSpec(1.0, 0.0, 0.5),
)

SWEEP_COLUMNS = ("noise0", "z_nm", "noise", "gouy_rad")


def reference_medium():
    """Cosine medium of the reference experiment.

    lambda = 653 nm, N_t = 1.515, dn = 0.5, Lambda = k0 / 50 and L = 2 pi / Lambda.
    """
    k0 = 2.0 * math.pi / 653.0
    return MediumSpec(653.0, 1.515, 0.5, Cosine(k0 / 50.0))


def homogeneous_counterpart(medium: MediumSpec):
    """Same waveguide with the longitudinal contrast switched off."""
    return MediumSpec(medium.wavelength_nm, medium.n_transverse, 0.0, Constant(), medium.length_nm)


@dataclass(frozen=True)
class ExperimentConfig:
    medium: MediumSpec
    states: tuple = REFERENCE_STATES
    z_samples: int = 2001
    outputs: tuple = ("effective_index", "classical_phase", "noise", "gouy")
    rel_tol: float = 1e-10
    snapshot_z_nm: tuple = ()
    ofs_points: int = 2048

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "snapshot_z_nm", tuple(float(z) for z in self.snapshot_z_nm))
        # the classical solver needs 16 samples to difference rho''
        if self.z_samples < 16:
            raise DomainError(f"z_samples must be >= 16, got {self.z_samples}")
        unknown = set(self.outputs) - set(OUTPUT_KINDS)
        if unknown:
            raise DomainError(f"unknown output kinds {sorted(unknown)}; choose from {OUTPUT_KINDS}")
        quantum = {"noise", "gouy", "wavefunction_snapshots"} & set(self.outputs)
        if quantum and not self.states:
            raise DomainError(f"outputs {sorted(quantum)} need at least one state")
        for z in self.snapshot_z_nm:
            if not 0 <= z <= self.medium.length_nm:
                raise DomainError(f"snapshot z = {z} nm outside [0, {self.medium.length_nm}] nm")


@dataclass(frozen=True)
class Snapshot:
    state_index: int
    z_nm: float
    theta: float
    e: np.ndarray
    psi: np.ndarray


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    solution: ClassicalSolution
    noise: np.ndarray  # (n_states, n_z)
    gouy: np.ndarray  # (n_states, n_z)
    snapshots: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    @property
    def z(self):
        return self.solution.z

    @property
    def theta(self):
        return self.solution.theta

    @property
    def n_eff(self):
        return self.solution.n_eff


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Solve the classical problem and evolve every configured state along z."""
    sol = solve_fundamental(config.medium, config.rel_tol, config.z_samples)
    theta = sol.theta
    noise = np.array([evolve_noise(st, theta) for st in config.states]).reshape(-1, theta.size)
    gouy = np.array([gouy_phase(st, theta) for st in config.states]).reshape(-1, theta.size)

    snaps = []
    if "wavefunction_snapshots" in config.outputs:
        for z in config.snapshot_z_nm:
            th = theta_at(sol, z)
            for i, st in enumerate(config.states):
                e = default_grid(st, points=config.ofs_points).values
                snaps.append(Snapshot(i, z, th, e, evolved_gaussian(st, th, e)))

    wr, pin, tc = diagnostics(sol)
    diag = {
        "wronskian_residual": wr,
        "pinney_residual": pin,
        "theta_consistency": tc,
        "theta_end_rad": float(theta[-1]),
    }
    return ExperimentResult(config, sol, noise, gouy, tuple(snaps), diag)


def run_cosine_experiment(config: ExperimentConfig) -> ExperimentResult:
    """N(z), theta(z), noise and Gouy phase curves for a cosine medium."""
    if not isinstance(config.medium.profile, Cosine):
        raise DomainError("run_cosine_experiment needs a cosine profile")
    return run_experiment(config)


def run_homogeneous_baseline(config: ExperimentConfig) -> ExperimentResult:
    """Same outputs for a homogeneous medium, where theta(z) = beta z is linear.

    With dn = 0 the slope is beta_t; a constant profile with dn > 0 is also
    homogeneous and gives slope beta0.
    """
    m = config.medium
    if not (m.delta_n == 0 or isinstance(m.profile, Constant)):
        raise DomainError("homogeneous baseline needs delta_n = 0 or a constant profile")
    return run_experiment(config)


def sweep_noise(medium: MediumSpec, noise_values, z_samples: int, rel_tol: float = 1e-10):
    """Full-factorial table of noise and Gouy phase over input noise and z.

    Returns
    -------
    ndarray, shape (len(noise_values) * z_samples, 4)
        Columns as in ``SWEEP_COLUMNS``; rows grouped by input noise.
    """
    noise_values = [float(x) for x in noise_values]
    if any(not x > 0 for x in noise_values):
        raise DomainError("all input noise values must be positive")
    sol = solve_fundamental(medium, rel_tol, z_samples)
    blocks = []
    for d0 in noise_values:
        st = GaussianStateSpec(0.0, 0.0, d0)
        blocks.append(
            np.column_stack(
                [
                    np.full(sol.z.size, d0),
                    sol.z,
                    evolve_noise(st, sol.theta),
                    gouy_phase(st, sol.theta),
                ]
            )
        )
    return np.vstack(blocks)
