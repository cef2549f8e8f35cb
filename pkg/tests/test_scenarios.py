import math

import numpy as np
import pytest

from gouyprop.classical import theta_at
from gouyprop.errors import DomainError
from gouyprop.media import Constant, MediumSpec
from gouyprop.quantum import GaussianStateSpec, gouy_phase
from gouyprop.scenarios import (
    REFERENCE_STATES,
    ExperimentConfig,
    homogeneous_counterpart,
    run_cosine_experiment,
    run_homogeneous_baseline,
    sweep_noise,
)

GOLD_THETA_L4 = 122.16457490997364  # see test_classical


@pytest.fixture(scope="module")
def cosine_result(medium):
    return run_cosine_experiment(ExperimentConfig(medium))


@pytest.fixture(scope="module")
def baseline(medium):
    return run_homogeneous_baseline(ExperimentConfig(homogeneous_counterpart(medium)))


def test_default_states_are_reference_noises():
    assert [s.noise0 for s in REFERENCE_STATES] == [1.0, 1.5, 0.5]


def test_coherent_flat(cosine_result):
    np.testing.assert_allclose(cosine_result.noise[0], 1.0, atol=1e-12)
    np.testing.assert_allclose(cosine_result.gouy[0], cosine_result.theta, atol=1e-9)


def test_squeezed_bounds(cosine_result):
    for row, d in zip(cosine_result.noise[1:], (1.5, 0.5)):
        lo, hi = min(d, 1 / d), max(d, 1 / d)
        assert row.min() >= lo - 1e-12 and row.max() <= hi + 1e-12
        # theta(L) spans ~300 quarter periods, so both extremes are approached
        assert row.max() > hi - 1e-3 and row.min() < lo + 1e-3


def test_gouy_curves_coincide_at_quarter_planes(cosine_result):
    sol = cosine_result.solution
    m = np.arange(1, int(sol.theta[-1] / (math.pi / 2)))
    z_planes = np.interp(m * math.pi / 2, sol.theta, sol.z)
    th = theta_at(sol, z_planes)
    curves = [gouy_phase(s, th) for s in REFERENCE_STATES]
    for c in curves[1:]:
        np.testing.assert_allclose(c, curves[0], atol=1e-6)


def test_index_and_phase_outputs(cosine_result, medium):
    n = cosine_result.n_eff
    assert n.min() == pytest.approx(1.515, abs=1e-12)
    assert n.max() == pytest.approx(math.sqrt(1.515**2 + 0.25), abs=1e-12)
    assert np.all(np.diff(cosine_result.theta) > 0)
    assert cosine_result.z[-1] == medium.length_nm


def test_baseline_linear_theta(baseline):
    m = baseline.config.medium
    np.testing.assert_allclose(baseline.theta, m.beta_t * baseline.z, rtol=1e-9, atol=1e-12)


def test_baseline_extrema_planes(baseline):
    m = baseline.config.medium
    st = GaussianStateSpec(1.0, 0.0, 0.5)
    z_planes = np.arange(1, 40) * math.pi / (2 * m.beta_t)
    th = theta_at(baseline.solution, z_planes)
    noise = np.sin(th) ** 2 / st.noise0 + np.cos(th) ** 2 * st.noise0
    expected = np.where(np.arange(1, 40) % 2 == 1, 1 / st.noise0, st.noise0)
    np.testing.assert_allclose(noise, expected, atol=1e-9)


def test_cosine_and_homogeneous_extrema_planes_differ(cosine_result, baseline):
    m = np.arange(1, 200)
    zc = np.interp(m * math.pi / 2, cosine_result.theta, cosine_result.z)
    zh = np.interp(m * math.pi / 2, baseline.theta, baseline.z)
    # the cosine medium has the larger local index, so its planes come first
    assert np.all(zc < zh)
    assert zh[-1] - zc[-1] > 100.0


def test_baseline_rejects_inhomogeneous(medium):
    with pytest.raises(DomainError):
        run_homogeneous_baseline(ExperimentConfig(medium))


def test_cosine_experiment_rejects_constant():
    m = MediumSpec(653.0, 1.5, 0.2, Constant(), 1000.0)
    with pytest.raises(DomainError):
        run_cosine_experiment(ExperimentConfig(m))


def test_baseline_constant_profile_slope_beta0():
    m = MediumSpec(653.0, 1.5, 0.2, Constant(), 5000.0)
    r = run_homogeneous_baseline(ExperimentConfig(m, z_samples=101))
    np.testing.assert_allclose(r.theta, m.beta0 * r.z, rtol=1e-9, atol=1e-12)


def test_doubled_samples_agree(medium):
    a = run_cosine_experiment(ExperimentConfig(medium, z_samples=501))
    b = run_cosine_experiment(ExperimentConfig(medium, z_samples=1001))
    np.testing.assert_allclose(b.theta[::2], a.theta, atol=1e-9)
    np.testing.assert_allclose(b.noise[:, ::2], a.noise, atol=1e-9)
    np.testing.assert_allclose(b.gouy[:, ::2], a.gouy, atol=1e-9)


def test_deterministic(medium):
    a = run_cosine_experiment(ExperimentConfig(medium, z_samples=201))
    b = run_cosine_experiment(ExperimentConfig(medium, z_samples=201))
    np.testing.assert_array_equal(a.theta, b.theta)
    np.testing.assert_array_equal(a.gouy, b.gouy)


def test_snapshot_at_caustic_uses_closed_form(cosine_result, medium):
    sol = cosine_result.solution
    z_pi = float(np.interp(math.pi, sol.theta, sol.z))
    cfg = ExperimentConfig(
        medium,
        z_samples=2001,
        outputs=("noise", "wavefunction_snapshots"),
        snapshot_z_nm=(z_pi,),
    )
    r = run_cosine_experiment(cfg)
    assert len(r.snapshots) == 3
    snap = r.snapshots[1]
    assert abs(math.sin(snap.theta)) < 1e-6
    w = np.gradient(snap.e)
    assert np.sum(np.abs(snap.psi) ** 2 * w) == pytest.approx(1.0, abs=1e-6)


class TestConfigValidation:
    def test_sample_count(self, medium):
        with pytest.raises(DomainError):
            ExperimentConfig(medium, z_samples=8)

    def test_unknown_output(self, medium):
        with pytest.raises(DomainError, match="unknown output"):
            ExperimentConfig(medium, outputs=("figures",))

    def test_quantum_outputs_need_states(self, medium):
        with pytest.raises(DomainError):
            ExperimentConfig(medium, states=(), outputs=("noise",))
        ExperimentConfig(medium, states=(), outputs=("effective_index",))

    def test_snapshot_inside_medium(self, medium):
        with pytest.raises(DomainError):
            ExperimentConfig(medium, snapshot_z_nm=(-1.0,))


class TestSweep:
    def test_coherent_row_flat(self, medium):
        t = sweep_noise(medium, [1.0], 101)
        np.testing.assert_allclose(t[:, 2], 1.0, atol=1e-12)

    def test_reciprocal_pair_reflection(self, medium):
        x = 2.5
        t = sweep_noise(medium, [x, 1 / x], 401)
        a, b = t[:401], t[401:]
        # noise(x) * noise(1/x) at quarter planes: both hit x and 1/x
        np.testing.assert_allclose(a[:, 1], b[:, 1])
        assert a[:, 2].max() == pytest.approx(b[:, 2].max(), rel=1e-3)
        assert a[:, 2].min() == pytest.approx(b[:, 2].min(), rel=1e-3)
        np.testing.assert_allclose(a[0, 2], x)
        np.testing.assert_allclose(b[0, 2], 1 / x)

    def test_rejects_nonpositive(self, medium):
        with pytest.raises(DomainError):
            sweep_noise(medium, [1.0, 0.0], 20)

    def test_reference_sweep_golden(self, medium):
        noise0 = np.geomspace(1 / 3, 3, 101)
        t = sweep_noise(medium, noise0, 2001)
        assert t.shape == (101 * 2001, 4)
        # rows at z = L/4 against the oracle phase and the direct formulas
        rows = t[500::2001]
        np.testing.assert_allclose(rows[:, 1], medium.length_nm / 4)
        th = GOLD_THETA_L4
        d = noise0
        np.testing.assert_allclose(rows[:, 2], np.sin(th) ** 2 / d + np.cos(th) ** 2 * d, atol=1e-6)
        m = math.floor(th / math.pi + 0.5)
        np.testing.assert_allclose(rows[:, 3], np.arctan(math.tan(th) / d) + m * math.pi, atol=1e-6)
