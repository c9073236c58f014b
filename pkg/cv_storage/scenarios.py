"""
scenarios.py
============

The two storage strategies and the family that interpolates between them.

Case a stores entanglement: the squeezed inputs are mixed on a balanced
beam-splitter first and the two modes are then written into the memory cells.
Case b stores squeezing: each squeezed mode goes into its cell and the
beam-splitter acts on the retrieved light.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from cv_storage.exceptions import DomainError, UnsupportedConfiguration
from cv_storage.gaussian_core import (
    ScenarioMetrics,
    apply_channel,
    beam_splitter,
    channel_is_physical,
    congruence,
    evaluate,
    is_physical,
)
from cv_storage.memory import MemoryChannel

logger = logging.getLogger(__name__)

ENTANGLING_ANGLE = math.pi / 4
ASSUMPTION_TOL = 1e-12


@dataclass(frozen=True)
class InputStateParams:
    """
    Two squeezed thermal inputs, sigma_0 = diag(s N1, N1/s, N2/s, N2 s).

    s >= 1 puts the squeezing on p1 and q2, the phase choice under which the
    ideal-memory criterion is stated. s < 1 is accepted to reach the other
    orientation.
    """

    s: float = 4.0
    n1: float = 1.0
    n2: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.s) and self.s > 0.0):
            raise DomainError(f"squeezing parameter s must be positive and finite, got {self.s}")
        for name in ("n1", "n2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 1.0):
                raise DomainError(f"thermal factor {name} must be at least 1, got {value}")

    @property
    def assumption_holds(self) -> bool:
        """1/s^2 <= N2/N1 <= s^2."""
        ratio = self.n2 / self.n1
        s_sq = self.s * self.s
        return 1.0 / s_sq - ASSUMPTION_TOL <= ratio <= s_sq + ASSUMPTION_TOL


@lru_cache(maxsize=None)
def _balanced_splitter() -> np.ndarray:
    splitter = beam_splitter(ENTANGLING_ANGLE)
    splitter.setflags(write=False)
    return splitter


def input_cm(params: InputStateParams) -> np.ndarray:
    s, n1, n2 = params.s, params.n1, params.n2
    return np.diag([s * n1, n1 / s, n2 / s, n2 * s])


def sigma_a(params: InputStateParams, channel: MemoryChannel) -> np.ndarray:
    """Store entanglement: sigma_a = X R sigma_0 R^T X^T + Y."""
    mixed = congruence(_balanced_splitter(), input_cm(params))
    return apply_channel(mixed, channel)


def sigma_b(params: InputStateParams, channel: MemoryChannel) -> np.ndarray:
    """Store squeezing: sigma_b = R (X sigma_0 X^T + Y) R^T."""
    stored = apply_channel(input_cm(params), channel)
    return congruence(_balanced_splitter(), stored)


def sigma_theta(params: InputStateParams, channel: MemoryChannel, theta: float) -> np.ndarray:
    """
    sigma_theta = R sigma_0' R^T + R_theta Y R_theta^T, with sigma_0' = xi^2 sigma_0.

    theta = 0 gives sigma_a and theta = pi/4 gives sigma_b. A common loss factor
    is absorbed into the thermal factors (N_i -> N_i xi^2), so sigma_0' need not
    be a physical CM.

    Raises:
        UnsupportedConfiguration: If the two cells have different loss factors
    """
    if not channel.equal_losses:
        raise UnsupportedConfiguration(
            f"the interpolating family needs xi1 == xi2, got {channel.xi1} and {channel.xi2}"
        )
    xi_sq = channel.xi1 * channel.xi1
    mixed = congruence(_balanced_splitter(), xi_sq * input_cm(params))
    noise = np.diag([channel.y_q1, channel.y_p1, channel.y_q2, channel.y_p2])
    return mixed + congruence(beam_splitter(theta), noise)


def fidelity_closed_form_a(params: InputStateParams, channel: MemoryChannel) -> float:
    """Fidelity of sigma_a from the factorised determinant."""
    s, n1, n2 = params.s, params.n1, params.n2
    plus = (channel.xi1 + channel.xi2) ** 2 / 4.0
    minus = (channel.xi1 - channel.xi2) ** 2 / 4.0
    mean_q = 0.5 * (channel.y_q1 + channel.y_q2)
    mean_p = 0.5 * (channel.y_p1 + channel.y_p2)
    inv_sq = (1.0 + mean_p + n1 / s * plus + n2 * s * minus) * (1.0 + mean_q + n2 / s * plus + n1 * s * minus)
    return 1.0 / math.sqrt(inv_sq)


def fidelity_closed_form_b(params: InputStateParams, channel: MemoryChannel) -> float:
    """Fidelity of sigma_b: 1/F_b^2 = (1 + y_p1 + xi1^2 N1/s)(1 + y_q2 + xi2^2 N2/s)."""
    s, n1, n2 = params.s, params.n1, params.n2
    inv_sq = (1.0 + channel.y_p1 + channel.xi1 ** 2 * n1 / s) * (1.0 + channel.y_q2 + channel.xi2 ** 2 * n2 / s)
    return 1.0 / math.sqrt(inv_sq)


def nu_tilde_closed_form_b(params: InputStateParams, channel: MemoryChannel) -> float:
    """
    nu~ of sigma_b from the stored diagonal state diag(a1, b1, c2, d2).

    The partially transposed spectrum of R diag(a1, b1, c2, d2) R^T is
    {sqrt(b1 c2), sqrt(a1 d2)}.
    """
    stored = np.diag(apply_channel(input_cm(params), channel))
    a1, b1, c2, d2 = stored
    return math.sqrt(min(b1 * c2, a1 * d2))


@dataclass(frozen=True)
class ScenarioPair:
    """Both final states, their figures of merit and the differences b - a."""

    sigma_a: np.ndarray
    sigma_b: np.ndarray
    metrics_a: ScenarioMetrics
    metrics_b: ScenarioMetrics
    delta_logneg: float
    delta_fidelity: float
    channel_physical: bool = True
    state_a_physical: bool = True
    state_b_physical: bool = True

    @property
    def states_physical(self) -> bool:
        return self.state_a_physical and self.state_b_physical

    @property
    def delta_fidelity_raw(self) -> float:
        """F_b - F_a without the classical clamp."""
        return self.metrics_b.fidelity - self.metrics_a.fidelity

    def signs_agree(self, threshold: float = 1e-9) -> bool:
        """
        Whether the negativity and raw fidelity differences point the same way.

        Differences at or below ``threshold`` carry no sign and always agree.
        """
        d_e, d_f = self.delta_logneg, self.delta_fidelity_raw
        if abs(d_e) <= threshold or abs(d_f) <= threshold:
            return True
        return (d_e > 0.0) == (d_f > 0.0)


def compare(params: InputStateParams, channel: MemoryChannel) -> ScenarioPair:
    """
    Evaluate both storage strategies for one input state and channel.

    Unphysical channels are evaluated anyway and flagged on the result.
    """
    physical_channel = channel_is_physical(channel)
    if not physical_channel:
        logger.warning("channel %s violates xi^2 >= 1 - sqrt(y_q y_p)", channel)

    state_a = sigma_a(params, channel)
    state_b = sigma_b(params, channel)
    metrics_a = evaluate(state_a)
    metrics_b = evaluate(state_b)

    pair = ScenarioPair(
        sigma_a=state_a,
        sigma_b=state_b,
        metrics_a=metrics_a,
        metrics_b=metrics_b,
        delta_logneg=metrics_b.log_neg - metrics_a.log_neg,
        delta_fidelity=metrics_b.clamped_fidelity - metrics_a.clamped_fidelity,
        channel_physical=physical_channel,
        state_a_physical=is_physical(state_a),
        state_b_physical=is_physical(state_b),
    )
    logger.debug(
        "compare s=%g N=(%g, %g): E_a=%.6f E_b=%.6f F_a=%.6f F_b=%.6f",
        params.s, params.n1, params.n2,
        metrics_a.log_neg, metrics_b.log_neg, metrics_a.fidelity, metrics_b.fidelity,
    )
    return pair
