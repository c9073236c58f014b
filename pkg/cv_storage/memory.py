"""
memory.py
=========

Memory-cell model: maps the experimental parameters of a QND-feedback memory
cell onto the diagonal Gaussian channel (X, Y) that the cell applies to the
light stored in it.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

from cv_storage.exceptions import DomainError

logger = logging.getLogger(__name__)


class LossNoiseConvention(str, Enum):
    """
    How the loss factor G contributes additive noise.

    The per-cell noise model carries a (1 - 1/G^2) term that is negative for
    G < 1; the conventions below are the ways of turning it into a noise.
    LITERAL is the default. The reference experiments in :mod:`cv_storage.presets`
    pin ATTENUATION, the only reading under which the noisy flip example holds.
    The configuration alias ``attenuation_standard`` names 1/G^2 - 1.
    """

    LITERAL = "literal"  # max(0, 1 - 1/G^2)
    ATTENUATION = "attenuation"  # 1 - G^2
    INPUT_REFERRED = "input-referred"  # 1/G^2 - 1

    def loss_noise(self, g: float) -> float:
        if self is LossNoiseConvention.LITERAL:
            return max(0.0, 1.0 - 1.0 / g ** 2)
        if self is LossNoiseConvention.ATTENUATION:
            return 1.0 - g ** 2
        return 1.0 / g ** 2 - 1.0

    @classmethod
    def parse(cls, value: str) -> "LossNoiseConvention":
        aliases = {
            "literal_floor_zero": cls.LITERAL,
            "attenuation_standard": cls.INPUT_REFERRED,
            "input_referred": cls.INPUT_REFERRED,
        }
        key = value.strip().lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            names = ", ".join(c.value for c in cls)
            raise DomainError(f"unknown loss-noise convention {value!r} (expected one of {names})") from None


DEFAULT_CONVENTION = LossNoiseConvention.LITERAL


@dataclass(frozen=True)
class MemoryCellParams:
    """
    Experimental description of one memory cell.

    Attributes:
        g: Loss factor G, 0 < G <= 1
        z_sq: Detuning parameter Z^2 of the swap interaction, >= 1
        delta_at: Initial variance of the addressed atomic pseudo-spin quadrature
        delta_q: Spurious additive noise on q
        delta_p: Spurious additive noise on p
    """

    g: float = 1.0
    z_sq: float = 6.4
    delta_at: float = 0.8
    delta_q: float = 0.0
    delta_p: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.g <= 1.0:
            raise DomainError(f"loss factor G must lie in (0, 1], got {self.g}")
        if not self.z_sq >= 1.0:
            raise DomainError(f"Z^2 must be at least 1, got {self.z_sq}")
        for name in ("delta_at", "delta_q", "delta_p"):
            value = getattr(self, name)
            if not value >= 0.0:
                raise DomainError(f"{name} must be non-negative, got {value}")

    @property
    def atomic_noise(self) -> float:
        """(1 - 1/Z^2) * Delta_At, the noise left by the unaddressed pseudo-spin."""
        if math.isinf(self.z_sq):
            return self.delta_at
        return (1.0 - 1.0 / self.z_sq) * self.delta_at

    def y_q(self, convention: LossNoiseConvention = DEFAULT_CONVENTION) -> float:
        return self.atomic_noise + convention.loss_noise(self.g) + self.delta_q

    def y_p(self, convention: LossNoiseConvention = DEFAULT_CONVENTION) -> float:
        return convention.loss_noise(self.g) + self.delta_p


@dataclass(frozen=True)
class MemoryChannel:
    """
    The Gaussian channel sigma -> X sigma X^T + Y of a pair of memory cells.

    X = diag(xi1, xi1, xi2, xi2), Y = diag(y_q1, y_p1, y_q2, y_p2).
    """

    xi1: float = 1.0
    xi2: float = 1.0
    y_q1: float = 0.0
    y_p1: float = 0.0
    y_q2: float = 0.0
    y_p2: float = 0.0

    @property
    def delta_q(self) -> float:
        return self.y_q2 - self.y_q1

    @property
    def delta_p(self) -> float:
        return self.y_p2 - self.y_p1

    @property
    def equal_losses(self) -> bool:
        return abs(self.xi1 - self.xi2) <= 1e-12

    @property
    def symmetric(self) -> bool:
        """True when both cells act identically, so the beam-splitter commutes with the channel."""
        return self.equal_losses and self.y_q1 == self.y_q2 and self.y_p1 == self.y_p2

    @property
    def ideal(self) -> bool:
        """No p-noise and equal losses: the regime of the sharp storage criterion."""
        return self.equal_losses and abs(self.y_p1) <= 1e-12 and abs(self.y_p2) <= 1e-12

    def swapped(self) -> "MemoryChannel":
        return MemoryChannel(self.xi2, self.xi1, self.y_q2, self.y_p2, self.y_q1, self.y_p1)


def channel_from_cells(
    cell1: MemoryCellParams,
    cell2: MemoryCellParams,
    convention: LossNoiseConvention = DEFAULT_CONVENTION,
) -> MemoryChannel:
    """
    Build the two-cell channel from experimental cell parameters.

    xi_i = G_i,
    y_qi = (1 - 1/Z_i^2) Delta_Ati + loss(G_i) + Delta_qi,
    y_pi = loss(G_i) + Delta_pi,
    with loss(G) chosen by ``convention``.

    Args:
        cell1: Parameters of the cell storing mode 1
        cell2: Parameters of the cell storing mode 2
        convention: Loss-noise convention (see :class:`LossNoiseConvention`)

    Returns:
        The corresponding MemoryChannel
    """
    channel = MemoryChannel(
        xi1=cell1.g,
        xi2=cell2.g,
        y_q1=cell1.y_q(convention),
        y_p1=cell1.y_p(convention),
        y_q2=cell2.y_q(convention),
        y_p2=cell2.y_p(convention),
    )
    logger.debug("channel from cells (%s convention): %s", convention.value, channel)
    return channel


def ideal_channel(y_q1: float, y_q2: float) -> MemoryChannel:
    """Channel of two ideal memories: no loss, noise on q only."""
    if y_q1 < 0.0 or y_q2 < 0.0:
        raise DomainError(f"additive noise must be non-negative, got {y_q1}, {y_q2}")
    return MemoryChannel(xi1=1.0, xi2=1.0, y_q1=y_q1, y_p1=0.0, y_q2=y_q2, y_p2=0.0)
