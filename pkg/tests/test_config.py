"""TOML configuration"""

from fractions import Fraction

from turanflag.config import DEFAULT_CONFIG, ConfigManager, get_config, reset_config


def test_defaults(tmp_path):
    config = ConfigManager(str(tmp_path / "missing.toml"))
    assert config.solver_path is None
    assert config.solver_timeout == 3600
    assert config.solver_kind == "auto"
    assert config.denominators == [1 << 10, 1 << 16, 1 << 20, 1 << 24, 1 << 28, 1 << 32]
    assert config.epsilons[0] == 0
    assert config.epsilons[1] == Fraction(1, 1000)
    assert config.epsilons[-1] == Fraction(1, 10 ** 9)
    assert config.restarts == 200
    assert config.workers == 1


def test_load_merges_known_keys(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text(
        '[solver]\npath = "/opt/csdp"\ntimeout = 60\nkind = "sdpa"\n'
        "[rounding]\ndenominators = [65536, 1024]\nepsilons = [\"0\", \"1/100\", \"bogus\"]\n"
        "[compute]\nworkers = 4\nunknown = 1\n"
        "[display]\ntheme = \"dark\"\n"
    )
    config = ConfigManager(str(path))
    assert config.solver_path == "/opt/csdp"
    assert config.solver_timeout == 60
    assert config.solver_kind == "sdpa"
    assert config.denominators == [1024, 65536]
    assert config.epsilons == [Fraction(0), Fraction(1, 100)]
    assert config.workers == 4
    assert "unknown" not in config.config["compute"]
    assert "display" not in config.config


def test_invalid_file_falls_back_to_defaults(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("[solver\ntimeout = ")
    config = ConfigManager(str(path))
    assert config.config == DEFAULT_CONFIG


def test_values_are_clamped(tmp_path):
    path = tmp_path / "c.toml"
    path.write_text(
        '[solver]\ntimeout = 0\nkind = "mosek"\n'
        "[rounding]\ndenominators = [0, -5]\nsharp_tolerance = -1.0\n"
        "[lagrangian]\nrestarts = 0\n"
        "[compute]\nworkers = -3\n"
    )
    config = ConfigManager(str(path))
    assert config.solver_timeout == 1
    assert config.workers == 1
    assert config.restarts == 1
    assert config.sharp_tolerance == 0.0
    assert config.solver_kind == "auto"
    assert config.denominators == DEFAULT_CONFIG["rounding"]["denominators"]


def test_default_path_follows_xdg(tmp_path, monkeypatch):
    monkeypatch.setattr("sys.platform", "linux")
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path))
    assert ConfigManager().config_path == tmp_path / "turanflag" / "config.toml"


def test_global_instance():
    first = get_config()
    assert get_config() is first
    reset_config()
    assert get_config() is not first
