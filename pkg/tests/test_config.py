import pytest

from cavmag import config


def test_parse_config_text():
    text = """
    # reference setup
    omega_a_hz = 1.0e10
    kappa_a_hz = 5e6   # amplitude decay
    r = 1.5

    temperature_k = 0.1
    """
    values = config.parse_config_text(text)
    assert values == {"omega_a_hz": 1.0e10, "kappa_a_hz": 5e6,
                      "r": 1.5, "temperature_k": 0.1}


def test_parse_rejects_unknown_key():
    with pytest.raises(ValueError, match="unknown key"):
        config.parse_config_text("bogus = 1\n")


def test_parse_rejects_bad_number():
    with pytest.raises(ValueError, match="not a number"):
        config.parse_config_text("r = fast\n")


def test_parse_rejects_missing_equals():
    with pytest.raises(ValueError, match="key = value"):
        config.parse_config_text("r 2\n")


def test_parse_reports_line_numbers():
    with pytest.raises(ValueError, match=":3:"):
        config.parse_config_text("r = 1\n\nbogus = 2\n")


def test_overrides():
    values = config.parse_overrides(["r=2", "g2_hz=0"])
    assert values == {"r": 2.0, "g2_hz": 0.0}
    with pytest.raises(ValueError, match="key=value"):
        config.parse_overrides(["r"])


def test_merge_precedence():
    merged = config.merge({"r": 1.0, "g1_hz": 1e6}, {"r": 0.5})
    assert merged["r"] == 0.5          # later layer wins
    assert merged["g1_hz"] == 1e6      # file layer kept
    assert merged["kappa_a_hz"] == 5e6  # default kept


def test_defaults_cover_all_keys():
    assert set(config.DEFAULTS) == set(config.CONFIG_KEYS)


def test_system_params_conversion():
    params = config.system_params(config.merge())
    assert params.omega_a == 10000.0
    assert params.kappa_a == 5.0
    assert params.g1 == 20.0


def test_load_config(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("r = 0.5\ntheta_rad = 1.0\n", encoding="utf-8")
    assert config.load_config(path) == {"r": 0.5, "theta_rad": 1.0}
