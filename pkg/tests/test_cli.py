"""
Tests for the command-line front end and its configuration files.
"""

import json
from pathlib import Path

import pytest

from cv_storage.cli import RunConfig, load_config, main, parse_grid
from cv_storage.exceptions import ConfigError
from cv_storage.memory import LossNoiseConvention
from cv_storage.presets import PRESETS

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture
def identical_cells_config(tmp_path):
    path = tmp_path / "identical.ini"
    path.write_text(
        "[input_state]\ns = 4\n\n"
        "[cell1]\ng = 0.9\ndelta_at = 0.8\ndelta_q = 0.1\ndelta_p = 0.2\n\n"
        "[cell2]\ng = 0.9\ndelta_at = 0.8\ndelta_q = 0.1\ndelta_p = 0.2\n",
        encoding="utf-8",
    )
    return path


class TestConfig:
    def test_shipped_configs_load(self):
        """Every shipped .ini file parses into a RunConfig."""
        for path in sorted(CONFIG_DIR.glob("*.ini")):
            config = load_config(path)
            assert isinstance(config, RunConfig)

    def test_worked_example_config(self):
        """The worked example config carries its cells and convention."""
        config = load_config(CONFIG_DIR / "worked_example.ini")
        assert config.input_state.s == 4.0
        assert (config.cell1.delta_at, config.cell2.delta_at) == (0.6, 1.0)
        assert config.convention is LossNoiseConvention.ATTENUATION
        assert config.axes == ()

    def test_sweep_config(self):
        """Sweep axes and output settings are read from the config."""
        config = load_config(CONFIG_DIR / "atomic_noise_map.ini")
        assert [a.target for a in config.axes] == ["cell1.delta_at", "cell2.delta_at"]
        assert config.output_format == "csv"
        assert config.output_path == Path("atomic_noise_map.csv")

    def test_direct_channel(self, tmp_path):
        """A [channel] section bypasses the cell model."""
        path = tmp_path / "channel.ini"
        path.write_text("[channel]\nxi1 = 0.9\nxi2 = 0.9\ny_q1 = 0.2\ny_q2 = 0.5\n", encoding="utf-8")
        channel = load_config(path).channel()
        assert (channel.xi1, channel.y_q2, channel.y_p1) == (0.9, 0.5, 0.0)

    def test_convention_defaults_and_aliases(self, tmp_path, identical_cells_config):
        """Configs without [run] use literal; aliases resolve."""
        assert load_config(identical_cells_config).convention is LossNoiseConvention.LITERAL
        path = tmp_path / "alias.ini"
        path.write_text("[run]\nconvention = attenuation_standard\n", encoding="utf-8")
        assert load_config(path).convention is LossNoiseConvention.INPUT_REFERRED

    def test_shipped_configs_pin_attenuation(self):
        """Shipped configs reproduce the reference experiments."""
        for path in sorted(CONFIG_DIR.glob("*.ini")):
            assert load_config(path).convention is LossNoiseConvention.ATTENUATION, path.name

    @pytest.mark.parametrize(
        "text, message",
        [
            ("[cell3]\ng = 1\n", "unknown section"),
            ("[cell1]\ngain = 1\n", "unknown key"),
            ("[cell1]\ng = high\n", "not a number"),
            ("[run]\nseed = 1.5\n", "integer"),
            ("[output]\nformat = xml\n", "output format"),
            ("g = 1\n", "section"),
        ],
    )
    def test_invalid_config(self, tmp_path, text, message):
        """Malformed configs raise ConfigError with a useful message."""
        path = tmp_path / "bad.ini"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(ConfigError, match=message):
            load_config(path)

    @pytest.mark.parametrize("text, steps", [("25", (25,)), ("13x7", (13, 7)), ("5X5", (5, 5))])
    def test_parse_grid(self, text, steps):
        """Grid strings give one or two step counts."""
        assert parse_grid(text) == steps

    @pytest.mark.parametrize("text", ["1", "3x", "axb", "2x2x2"])
    def test_parse_grid_invalid(self, text):
        """Malformed grid strings are rejected."""
        with pytest.raises(ConfigError):
            parse_grid(text)

    def test_with_grid(self):
        """A grid override resizes existing axes only."""
        config = RunConfig.from_preset(PRESETS["loss-map-stable"])
        assert [a.steps for a in config.with_grid((5,)).axes] == [5, 5]
        assert [a.steps for a in config.with_grid((5, 3)).axes] == [5, 3]
        with pytest.raises(ConfigError):
            RunConfig().with_grid((5,))


class TestCompareCommand:
    def test_worked_example(self, capsys, tmp_path):
        """compare prints the decision and writes JSON."""
        out = tmp_path / "compare.json"
        assert main(["compare", "--preset", "worked-example", "--out", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "negativity criterion: store entanglement" in stdout
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["a"]["log_neg"] == pytest.approx(1.06, abs=0.01)
        assert payload["b"]["log_neg"] == pytest.approx(0.94, abs=0.01)
        assert payload["criteria"]["negativity"]["prefer_entanglement"] is True
        assert payload["channel_physical"] is True

    def test_identical_cells(self, capsys, identical_cells_config):
        """Identical cells are reported as equivalent."""
        assert main(["compare", "--config", str(identical_cells_config)]) == 0
        stdout = capsys.readouterr().out
        assert "choices equivalent" in stdout
        assert "delta E_N = E_N(b) - E_N(a) = +0.000000" in stdout or "= -0.000000" in stdout

    def test_flip_report(self, capsys):
        """The flip preset reports a separable and an entangled option."""
        assert main(["compare", "--preset", "flip"]) == 0
        stdout = capsys.readouterr().out
        state_line = next(line for line in stdout.splitlines() if line.startswith("state"))
        assert state_line.split()[1:] == ["separable", "entangled"]

    def test_convention_override(self, capsys, tmp_path):
        """--convention replaces the preset's loss-noise reading."""
        out = tmp_path / "literal.json"
        assert main(["compare", "--preset", "flip", "--convention", "literal", "--out", str(out)]) == 0
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["convention"] == "literal"
        assert payload["channel"]["y_p1"] == pytest.approx(0.4)

    def test_unphysical_channel_is_a_warning(self, capsys, tmp_path):
        """An unphysical channel is reported, not rejected."""
        path = tmp_path / "lossy.ini"
        path.write_text("[channel]\nxi1 = 0.5\nxi2 = 0.5\n", encoding="utf-8")
        assert main(["compare", "--config", str(path)]) == 0
        assert "channel physical: NO" in capsys.readouterr().out


class TestSweepCommand:
    def test_writes_csv_and_summary(self, capsys, tmp_path):
        """sweep writes one CSV row per grid point."""
        out = tmp_path / "map.csv"
        code = main(["sweep", "--config", str(CONFIG_DIR / "atomic_noise_map.ini"), "--grid", "3x4", "--out", str(out)])
        assert code == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("cell1.delta_at,cell2.delta_at,e_n_a")
        assert len(lines) == 13
        assert "12 points" in capsys.readouterr().out

    def test_json_output(self, tmp_path):
        """--format json writes the records as JSON."""
        out = tmp_path / "map.json"
        assert main(["sweep", "--preset", "loss-map-stable", "--grid", "3", "--format", "json", "--out", str(out)]) == 0
        assert len(json.loads(out.read_text(encoding="utf-8"))["records"]) == 9

    def test_identical_runs_are_byte_identical(self, tmp_path):
        """Serial and parallel sweeps write the same bytes."""
        args = ["sweep", "--preset", "atomic-noise-map", "--grid", "4x4"]
        main(args + ["--out", str(tmp_path / "one.csv")])
        main(args + ["--out", str(tmp_path / "two.csv"), "--jobs", "2"])
        assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "two.csv").read_bytes()

    def test_sweep_without_axes(self, capsys):
        """A sweep with no axes exits with a usage error."""
        assert main(["sweep", "--preset", "worked-example"]) == 2
        assert "error:" in capsys.readouterr().err


class TestExitCodes:
    def test_presets(self, capsys):
        """presets lists every named experiment."""
        assert main(["presets"]) == 0
        stdout = capsys.readouterr().out
        for name in PRESETS:
            assert name in stdout

    def test_unknown_preset(self, capsys):
        """An unknown preset name exits with code 2."""
        assert main(["compare", "--preset", "nope"]) == 2
        assert "unknown preset" in capsys.readouterr().err

    def test_invalid_cell_parameter(self, tmp_path):
        """Out-of-range cell parameters exit with code 2."""
        path = tmp_path / "bad.ini"
        path.write_text("[cell1]\ng = 1.5\n", encoding="utf-8")
        assert main(["compare", "--config", str(path)]) == 2

    def test_missing_config_file(self, tmp_path):
        """A missing config file exits with code 3."""
        assert main(["compare", "--config", str(tmp_path / "missing.ini")]) == 3

    def test_unwritable_output(self, tmp_path):
        """An unwritable output path exits with code 3."""
        out = tmp_path / "no-such-dir" / "map.csv"
        assert main(["sweep", "--preset", "loss-map-stable", "--grid", "2", "--out", str(out)]) == 3

    def test_verify(self, capsys):
        """verify prints one line per check."""
        assert main(["verify", "core", "--samples", "5", "-q"]) == 0
        stdout = capsys.readouterr().out
        assert "[PASS] beam-splitter is symplectic" in stdout

    def test_verify_failure_exit_code(self, monkeypatch, capsys):
        """A failing hard check exits with code 1."""
        from cv_storage import verification
        from cv_storage.verification import CheckResult

        monkeypatch.setattr(
            verification, "SUITE_CHECKS", {"core": (lambda settings: CheckResult("always fails", False),)}
        )
        assert main(["verify", "core"]) == 1
        assert "[FAIL] always fails" in capsys.readouterr().out
