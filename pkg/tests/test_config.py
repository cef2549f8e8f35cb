import math

import pytest

from gouyprop.config import reference_config_dict, parse_config
from gouyprop.errors import ConfigError
from gouyprop.media import Constant, Cosine, Tabulated


def test_reference_defaults():
    cfg = parse_config(reference_config_dict())
    m = cfg.medium
    assert isinstance(m.profile, Cosine)
    assert m.profile.spatial_frequency == pytest.approx(2 * math.pi / 653 / 50)
    assert m.length_nm == pytest.approx(2 * math.pi / m.profile.spatial_frequency)
    assert [s.noise0 for s in cfg.experiment.states] == [1.0, 1.5, 0.5]


def test_states_default_when_absent():
    data = reference_config_dict()
    del data["states"]
    assert len(parse_config(data).experiment.states) == 3


def test_yaml_style_exponent_string():
    data = reference_config_dict()
    data["run"]["rel_tol"] = "1e-11"
    assert parse_config(data).rel_tol == 1e-11


@pytest.mark.parametrize(
    "path, value, match",
    [
        (("medium", "delta_n"), "big", "medium.delta_n"),
        (("medium", "wavelength_nm"), -1, "wavelength_nm"),
        (("run", "z_samples"), 10.5, "run.z_samples"),
        (("run", "z_samples"), True, "run.z_samples"),
        (("run", "grid_points"), 10, "grid_points"),
        (("run", "outputs"), ["plots"], "run.outputs"),
        (("medium", "profile"), {"type": "gaussian"}, "profile.type"),
        (("medium", "profile"), {"type": "cosine", "lambda_per_k0": 50, "phase": 1}, "phase"),
        (("medium", "profile"), {"type": "cosine", "lambda_per_k0": 0}, "lambda_per_k0"),
    ],
)
def test_bad_values(path, value, match):
    data = reference_config_dict()
    data[path[0]][path[1]] = value
    with pytest.raises(ConfigError, match=match):
        parse_config(data)


def test_bad_state():
    data = reference_config_dict()
    data["states"] = [{"alpha_abs": 1.0, "noise0": -2}]
    with pytest.raises(ConfigError, match=r"states\[0\]"):
        parse_config(data)
    data["states"] = [{"alpha": 1.0}]
    with pytest.raises(ConfigError, match="alpha"):
        parse_config(data)


def test_missing_medium():
    with pytest.raises(ConfigError, match="medium"):
        parse_config({"run": {}})


def test_constant_and_tabulated_profiles():
    data = reference_config_dict()
    data["medium"]["profile"] = {"type": "constant", "level": 0.5}
    data["medium"]["length_nm"] = 1000.0
    cfg = parse_config(data)
    assert cfg.medium.profile == Constant(0.5)

    data["medium"]["profile"] = {"type": "tabulated", "samples": [[0, 1.0], [500, 0.2], [1000, 0.0]]}
    cfg = parse_config(data)
    assert isinstance(cfg.medium.profile, Tabulated)
    assert cfg.resolved["medium"]["profile"]["samples"][1] == [500.0, 0.2]


def test_tabulated_must_increase():
    data = reference_config_dict()
    data["medium"]["profile"] = {"type": "tabulated", "samples": [[0, 1.0], [0, 0.2]]}
    data["medium"]["length_nm"] = 1.0
    with pytest.raises(ConfigError, match="increasing"):
        parse_config(data)


def test_non_cosine_needs_length():
    data = reference_config_dict()
    data["medium"]["profile"] = {"type": "constant"}
    with pytest.raises(ConfigError, match="length_nm"):
        parse_config(data)


def test_loose_tolerance_only_when_requested():
    data = reference_config_dict()
    data["run"]["rel_tol"] = 1e-2
    with pytest.raises(ConfigError):
        parse_config(data)
    assert parse_config(data, strict_tolerance=False).rel_tol == 1e-2


def test_snapshots_enable_output():
    data = reference_config_dict()
    data["run"]["snapshot_z_nm"] = [100.0]
    cfg = parse_config(data)
    assert "wavefunction_snapshots" in cfg.experiment.outputs
    assert cfg.resolved["run"]["snapshot_z_nm"] == [100.0]
