"""
Tests for the memory-cell model and the channel it induces.
"""

import math

import pytest

from cv_storage.exceptions import DomainError
from cv_storage.memory import (
    DEFAULT_CONVENTION,
    LossNoiseConvention,
    MemoryCellParams,
    MemoryChannel,
    channel_from_cells,
    ideal_channel,
)
from cv_storage.presets import PRESETS, REFERENCE_CONVENTION


class TestLossNoiseConvention:
    """The three readings of the loss-noise term."""

    @pytest.mark.parametrize(
        "convention, expected",
        [
            (LossNoiseConvention.LITERAL, 0.0),
            (LossNoiseConvention.ATTENUATION, 1.0 - 0.85 ** 2),
            (LossNoiseConvention.INPUT_REFERRED, 1.0 / 0.85 ** 2 - 1.0),
        ],
    )
    def test_loss_noise(self, convention, expected):
        """Each convention turns G = 0.85 into its own noise term."""
        assert convention.loss_noise(0.85) == pytest.approx(expected)

    @pytest.mark.parametrize("convention", list(LossNoiseConvention))
    def test_no_loss_no_noise(self, convention):
        """No convention adds noise without loss."""
        assert convention.loss_noise(1.0) == 0.0

    def test_default_is_literal(self):
        """Unpinned callers get the floored literal reading."""
        assert DEFAULT_CONVENTION is LossNoiseConvention.LITERAL

    def test_presets_pin_attenuation(self):
        """Every reference experiment is reproduced under 1 - G^2."""
        for preset in PRESETS.values():
            assert preset.convention is REFERENCE_CONVENTION is LossNoiseConvention.ATTENUATION

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("literal", LossNoiseConvention.LITERAL),
            ("literal_floor_zero", LossNoiseConvention.LITERAL),
            (" Attenuation ", LossNoiseConvention.ATTENUATION),
            ("attenuation_standard", LossNoiseConvention.INPUT_REFERRED),
            ("input-referred", LossNoiseConvention.INPUT_REFERRED),
            ("input_referred", LossNoiseConvention.INPUT_REFERRED),
        ],
    )
    def test_parse(self, text, expected):
        """Names and aliases parse case-insensitively."""
        assert LossNoiseConvention.parse(text) is expected

    def test_parse_unknown(self):
        """Unknown convention names raise DomainError."""
        with pytest.raises(DomainError, match="unknown loss-noise convention"):
            LossNoiseConvention.parse("amplifier")


class TestMemoryCellParams:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"g": 0.0},
            {"g": 1.1},
            {"z_sq": 0.5},
            {"delta_at": -0.1},
            {"delta_q": -1.0},
            {"delta_p": float("nan")},
        ],
    )
    def test_validation(self, kwargs):
        """Out-of-range cell parameters raise DomainError."""
        with pytest.raises(DomainError):
            MemoryCellParams(**kwargs)

    def test_atomic_noise(self):
        """Atomic noise is (1 - 1/Z^2) Delta_At."""
        assert MemoryCellParams(z_sq=6.4, delta_at=0.6).atomic_noise == pytest.approx(0.50625)

    def test_infinite_detuning_leaves_full_atomic_noise(self):
        """Z^2 = inf leaves Delta_At untouched."""
        assert MemoryCellParams(z_sq=math.inf, delta_at=0.7).atomic_noise == 0.7

    def test_noise_terms(self):
        """Atomic, loss and spurious noise add on q; p has no atomic term."""
        cell = MemoryCellParams(g=0.9, z_sq=6.4, delta_at=0.8, delta_q=0.1, delta_p=0.3)
        loss = 1.0 - 0.81
        assert cell.y_q(LossNoiseConvention.ATTENUATION) == pytest.approx(0.84375 * 0.8 + loss + 0.1)
        assert cell.y_p(LossNoiseConvention.ATTENUATION) == pytest.approx(loss + 0.3)
        assert cell.y_p(LossNoiseConvention.LITERAL) == pytest.approx(0.3)


class TestMemoryChannel:
    def test_worked_example_channel(self):
        """Lossless cells give the worked example's q-noise and no p-noise."""
        channel = channel_from_cells(
            MemoryCellParams(g=1.0, z_sq=6.4, delta_at=0.6),
            MemoryCellParams(g=1.0, z_sq=6.4, delta_at=1.0),
        )
        assert channel.xi1 == channel.xi2 == 1.0
        assert channel.y_q1 == pytest.approx(0.50625)
        assert channel.y_q2 == pytest.approx(0.84375)
        assert channel.y_p1 == channel.y_p2 == 0.0
        assert channel.ideal

    def test_losses_map_to_xi(self):
        """The channel's xi are the cells' G."""
        channel = channel_from_cells(MemoryCellParams(g=0.8), MemoryCellParams(g=0.95))
        assert (channel.xi1, channel.xi2) == (0.8, 0.95)
        assert not channel.equal_losses

    def test_differences(self):
        """delta_q and delta_p are cell 2 minus cell 1."""
        channel = MemoryChannel(1.0, 1.0, 0.2, 0.5, 0.7, 0.1)
        assert channel.delta_q == pytest.approx(0.5)
        assert channel.delta_p == pytest.approx(-0.4)

    def test_symmetric(self):
        """Only identical cells make a symmetric channel."""
        assert MemoryChannel(0.9, 0.9, 0.3, 0.4, 0.3, 0.4).symmetric
        assert not MemoryChannel(0.9, 0.9, 0.3, 0.4, 0.3, 0.5).symmetric

    def test_swapped(self):
        """Swapping exchanges the cells and is an involution."""
        channel = MemoryChannel(0.8, 0.9, 0.1, 0.2, 0.3, 0.4)
        assert channel.swapped() == MemoryChannel(0.9, 0.8, 0.3, 0.4, 0.1, 0.2)
        assert channel.swapped().swapped() == channel

    def test_ideal_channel(self):
        """An ideal channel is lossless with noise on q only."""
        channel = ideal_channel(0.2, 0.7)
        assert channel.ideal
        assert channel.delta_q == pytest.approx(0.5)

    def test_ideal_channel_rejects_negative_noise(self):
        """Negative q-noise raises DomainError."""
        with pytest.raises(DomainError):
            ideal_channel(-0.1, 0.2)
