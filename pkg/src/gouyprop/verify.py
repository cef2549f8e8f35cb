"""Self-verification checks behind ``gouyprop verify``."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .classical import fundamental_trajectory, invariant_value, pinney_residual, solve_fundamental
from .quantum import (
    GaussianStateSpec,
    OfsGrid,
    default_grid,
    evolve_noise,
    evolved_gaussian,
    fock_states,
    fock_wavefunction,
    gaussian_input,
    gouy_phase,
    l2_distance,
    propagate_numeric,
)

__all__ = ["Check", "run_checks", "format_table"]

LEVELS = ("fast", "full")


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    threshold: float

    @property
    def passed(self):
        return bool(self.measured < self.threshold)


def _classical_checks(cfg):
    exp = cfg.experiment
    sol = solve_fundamental(exp.medium, exp.rel_tol, exp.z_samples, check_tolerance=False)
    inv = invariant_value(fundamental_trajectory(sol, "u"), sol, sol.z)
    dtheta = np.diff(sol.theta)
    n_eff = sol.n_eff
    yield Check("wronskian |u'v - v'u - 1|", sol.wronskian_residual, 1e-8)
    yield Check("pinney residual / beta0^2", sol.pinney_residual, 1e-5)
    yield Check(
        "theta - beta0 s",
        float(np.max(np.abs(sol.theta - sol.beta0 * sol.s))),
        1e-9 * max(1.0, float(sol.theta[-1])),
    )
    yield Check("invariant relative drift", float(np.max(np.abs(inv / inv[0] - 1.0))), 1e-8)
    # measured is 0 when monotone, otherwise the largest backwards step
    yield Check("theta monotone (max backward step)", float(max(0.0, -dtheta.min())), 1e-300)
    yield Check(
        "N_eff >= N_t (max deficit)",
        float(max(0.0, exp.medium.n_transverse - n_eff.min())),
        1e-12,
    )


def _state_checks(states):
    theta = np.linspace(0.0, 2.0 * math.pi, 4001)  # contains every m pi / 2
    planes = np.arange(0, 9) * (math.pi / 2)
    coh = GaussianStateSpec(1.0, 0.0, 1.0)
    yield Check("coherent noise - 1", float(np.max(np.abs(evolve_noise(coh, theta) - 1.0))), 1e-12)
    yield Check("coherent gouy - theta", float(np.max(np.abs(gouy_phase(coh, theta) - theta))), 1e-9)
    for st in states:
        d = st.noise0
        noise = evolve_noise(st, theta)
        err = max(abs(noise.max() - max(d, 1 / d)), abs(noise.min() - min(d, 1 / d)))
        yield Check(f"noise extrema (noise0={d:g})", float(err), 1e-9)
        pin = float(np.max(np.abs(gouy_phase(st, planes) - planes)))
        yield Check(f"gouy pinning (noise0={d:g})", pin, 1e-9)
        g = gouy_phase(st, theta)
        # slope of the Gouy phase is bounded by max(D, 1/D)
        bound = max(d, 1 / d) * (theta[1] - theta[0]) * 1.01
        yield Check(f"gouy continuity (noise0={d:g}) jump/bound", float(np.max(np.abs(np.diff(g))) / bound), 1.0)


def _fock_checks():
    grid = OfsGrid.symmetric(10.0, 4001)
    f = fock_states(10, grid.values)
    gram = (f * grid.weights) @ f.T
    yield Check("Fock orthonormality N<=10", float(np.max(np.abs(gram - np.eye(11)))), 1e-8)


def _oracle(st, theta):
    grid = default_grid(st, theta)
    e = grid.values
    out = propagate_numeric(gaussian_input(st, e), grid, theta)
    return l2_distance(out, evolved_gaussian(st, theta, e), grid)


def run_checks(cfg, level="fast"):
    """Run the invariant and oracle checks for a configuration."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    checks = list(_classical_checks(cfg))
    checks += list(_state_checks(cfg.experiment.states))
    checks += list(_fock_checks())
    for st in cfg.experiment.states:
        checks.append(
            Check(f"oracle theta=1 (|a|={st.amplitude:g}, noise0={st.noise0:g})", _oracle(st, 1.0), 1e-5)
        )
    if level == "full":
        worst = max(
            _oracle(GaussianStateSpec(a, phi, d), th)
            for a, phi, d, th in itertools.product(
                (0.0, 2.0), (0.0, 0.7), (0.5, 1.0, 1.5), (0.3, 1.0, 2.0, 2.8)
            )
        )
        checks.append(Check("oracle sweep (48 cases, worst)", worst, 1e-5))

        st = GaussianStateSpec(1.0, 0.0, 1.0)
        grid = default_grid(st, 0.4)
        p0 = gaussian_input(st, grid.values)
        two = propagate_numeric(propagate_numeric(p0, grid, 0.4), grid, 0.7)
        checks.append(Check("propagator semigroup 0.4+0.7", l2_distance(two, propagate_numeric(p0, grid, 1.1), grid), 1e-5))

        grid = OfsGrid.symmetric(8.0, 2048)
        psi = fock_wavefunction(0, grid.values)
        out = propagate_numeric(psi, grid, 0.5)
        checks.append(Check("Fock N=0 eigenphase", l2_distance(out, np.exp(0.25j) * psi, grid), 1e-6))

        exp = cfg.experiment
        n = exp.z_samples
        coarse = solve_fundamental(exp.medium, exp.rel_tol, n, check_tolerance=False)
        fine = solve_fundamental(exp.medium, exp.rel_tol, 2 * n - 1, check_tolerance=False)
        checks.append(
            Check("pinney residual ratio fine/coarse", pinney_residual(fine) / pinney_residual(coarse), 1.0)
        )
    return checks


def format_table(checks):
    width = max(len(c.name) for c in checks)
    lines = [f"{'check':<{width}}  result  {'measured':>12}  {'threshold':>12}"]
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{c.name:<{width}}  {status:<6}  {c.measured:12.3e}  {c.threshold:12.3e}")
    return "\n".join(lines)
