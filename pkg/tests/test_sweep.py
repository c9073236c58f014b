"""
Tests for grid sweeps and their CSV/JSON output.
"""

import json

import numpy as np
import pytest

from cv_storage.exceptions import ConfigError
from cv_storage.memory import MemoryCellParams, ideal_channel
from cv_storage.presets import ATOMIC_NOISE_MAP, LOSS_MAP_REVERSIBLE
from cv_storage.scenarios import InputStateParams
from cv_storage.sweep import (
    METRIC_COLUMNS,
    Baseline,
    SweepAxis,
    SweepRunner,
    write_csv,
    write_json,
    write_result,
)


@pytest.fixture
def cell_baseline():
    return Baseline(
        input_state=InputStateParams(s=8.0, n1=1.4, n2=1.2),
        cell1=MemoryCellParams(g=0.95, delta_at=0.8, delta_q=0.1, delta_p=0.3),
        cell2=MemoryCellParams(g=0.95, delta_at=0.8, delta_q=0.1, delta_p=0.3),
    )


@pytest.fixture
def small_result(cell_baseline):
    axes = [SweepAxis("cell1.delta_at", 0.0, 1.2, 3), SweepAxis("cell2.delta_at", 0.0, 1.2, 4)]
    return SweepRunner(cell_baseline).run(axes)


class TestSweepAxis:
    def test_values(self):
        """Axis values are evenly spaced and include both ends."""
        assert np.allclose(SweepAxis("cell2.g", 0.7, 1.0, 4).values(), [0.7, 0.8, 0.9, 1.0])

    @pytest.mark.parametrize(
        "target, steps",
        [("cell3.g", 5), ("cell1.gain", 5), ("input_state.s", 1), ("bogus", 5)],
    )
    def test_validation(self, target, steps):
        """Unknown targets and single-step axes are rejected."""
        with pytest.raises(ConfigError):
            SweepAxis(target, 0.0, 1.0, steps)

    def test_parse(self):
        """"target start stop steps" parses into an axis."""
        axis = SweepAxis.parse("channel.y_q2 0 1.5 7")
        assert axis == SweepAxis("channel.y_q2", 0.0, 1.5, 7)
        assert (axis.section, axis.key) == ("channel", "y_q2")

    @pytest.mark.parametrize("text", ["cell1.g 0 1", "cell1.g zero 1 5", "cell1.g 0 1 5.5"])
    def test_parse_malformed(self, text):
        """Malformed axis strings raise ConfigError."""
        with pytest.raises(ConfigError):
            SweepAxis.parse(text)


class TestSweepRunner:
    def test_row_major_order(self, small_result):
        """Records run over the second axis fastest."""
        assert len(small_result.records) == 12
        assert small_result.records[0].axis_values == (0.0, 0.0)
        assert small_result.records[1].axis_values == pytest.approx((0.0, 0.4))
        assert small_result.records[4].axis_values == pytest.approx((0.6, 0.0))
        assert small_result.delta_grid().shape == (3, 4)

    def test_columns(self, small_result):
        """Columns are the axis targets followed by the metrics."""
        assert small_result.columns == ("cell1.delta_at", "cell2.delta_at") + METRIC_COLUMNS

    def test_deltas_are_recomputed_differences(self, small_result):
        """Each record's deltas are b minus a."""
        for record in small_result.records:
            assert record.delta_e_n == pytest.approx(record.e_n_b - record.e_n_a, abs=1e-12)
            assert record.delta_f_bar == pytest.approx(max(record.f_b, 0.5) - max(record.f_a, 0.5), abs=1e-12)

    def test_zero_noise_sweep_has_no_differences(self):
        """Without noise both storage orders agree everywhere."""
        baseline = Baseline(input_state=InputStateParams(), channel=ideal_channel(0.0, 0.0))
        result = SweepRunner(baseline).run([SweepAxis("input_state.s", 1.0, 8.0, 6)])
        assert all(r.delta_e_n == 0.0 and r.delta_f_bar == 0.0 for r in result.records)

    def test_sweep_over_direct_channel(self):
        """delta E_N changes sign where the q-noises cross."""
        baseline = Baseline(input_state=InputStateParams(s=4.0), channel=ideal_channel(0.4, 0.4))
        result = SweepRunner(baseline).run([SweepAxis("channel.y_q2", 0.0, 0.8, 5)])
        signs = [np.sign(r.delta_e_n) for r in result.records]
        assert signs[0] > 0 and signs[-1] < 0
        assert abs(result.records[2].delta_e_n) < 1e-12

    def test_cells_cannot_be_swept_with_direct_channel(self):
        """Cell axes need a cell baseline."""
        baseline = Baseline(input_state=InputStateParams(), channel=ideal_channel(0.1, 0.2))
        with pytest.raises(ConfigError):
            SweepRunner(baseline).run([SweepAxis("cell1.g", 0.8, 1.0, 3)])

    def test_baseline_needs_a_channel_source(self):
        """A baseline needs both cells or a channel."""
        with pytest.raises(ConfigError):
            Baseline(input_state=InputStateParams(), cell1=MemoryCellParams())

    @pytest.mark.parametrize(
        "axes",
        [
            [],
            [SweepAxis("cell1.g", 0.8, 1.0, 2)] * 2,
            [SweepAxis("cell1.g", 0.8, 1.0, 2), SweepAxis("cell2.g", 0.8, 1.0, 2), SweepAxis("input_state.s", 1, 2, 2)],
        ],
        ids=["none", "duplicate", "three"],
    )
    def test_axis_count(self, cell_baseline, axes):
        """Sweeps take one or two distinct axes."""
        with pytest.raises(ConfigError):
            SweepRunner(cell_baseline).run(axes)

    def test_atomic_noise_sign_rule(self):
        """delta E_N > 0 exactly where Delta_At1 > Delta_At2."""
        preset = ATOMIC_NOISE_MAP
        axes = [SweepAxis(a.target, a.start, a.stop, 7) for a in preset.axes]
        baseline = Baseline(preset.input_state, preset.cell1, preset.cell2, convention=preset.convention)
        result = SweepRunner(baseline).run(axes)
        for record in result.records:
            at1, at2 = record.axis_values
            if at1 > at2:
                assert record.delta_e_n > 0.0
            elif at1 < at2:
                assert record.delta_e_n < 0.0
            else:
                assert abs(record.delta_e_n) < 1e-9

    def test_reversible_loss_map_has_both_signs(self):
        """The reversible loss map has both signs of delta E_N."""
        preset = LOSS_MAP_REVERSIBLE
        baseline = Baseline(preset.input_state, preset.cell1, preset.cell2, convention=preset.convention)
        result = SweepRunner(baseline).run(preset.axes)
        grid = result.delta_grid()
        assert grid[-1, -1] < 0.0
        assert np.any(grid > 0.0)

    def test_summary(self, small_result):
        """The summary counts points and both signs."""
        summary = small_result.summary()
        assert summary.points == 12
        assert summary.positive_delta_e > 0.0 and summary.negative_delta_e > 0.0
        assert summary.min_delta_e < 0.0 < summary.max_delta_e
        assert summary.unphysical_channels == 0


class TestOutput:
    def test_csv_format(self, small_result, tmp_path):
        """CSV uses LF, a header and 12 significant digits."""
        path = write_csv(small_result, tmp_path / "grid.csv")
        raw = path.read_bytes()
        assert b"\r\n" not in raw
        lines = raw.decode("utf-8").splitlines()
        assert lines[0] == ",".join(small_result.columns)
        assert len(lines) == 13
        first = lines[1].split(",")
        assert first[-3:] == ["true", "true", "true"]
        assert first[2] == f"{small_result.records[0].e_n_a:.12g}"

    def test_csv_is_deterministic_across_workers(self, cell_baseline, tmp_path):
        """Worker count does not change the CSV bytes."""
        axes = [SweepAxis("cell1.g", 0.8, 1.0, 3), SweepAxis("cell2.delta_at", 0.2, 1.0, 3)]
        serial = write_csv(SweepRunner(cell_baseline, jobs=1).run(axes), tmp_path / "serial.csv")
        parallel = write_csv(SweepRunner(cell_baseline, jobs=2).run(axes), tmp_path / "parallel.csv")
        assert serial.read_bytes() == parallel.read_bytes()

    def test_json_format(self, small_result, tmp_path):
        """JSON carries columns, axes and one object per record."""
        path = write_json(small_result, tmp_path / "grid.json")
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload["columns"] == list(small_result.columns)
        assert len(payload["records"]) == 12
        assert set(payload["records"][0]) == set(small_result.columns)
        assert payload["axes"][0] == {"target": "cell1.delta_at", "start": 0.0, "stop": 1.2, "steps": 3}
        assert payload["records"][0]["channel_physical"] is True

    def test_write_result_dispatch(self, small_result, tmp_path):
        """write_result picks the writer by format name."""
        assert write_result(small_result, tmp_path / "g.json", "json").suffix == ".json"
        with pytest.raises(ConfigError):
            write_result(small_result, tmp_path / "g.xlsx", "xlsx")
