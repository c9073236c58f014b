"""Squeezing versus entanglement storage in noisy Gaussian quantum memories."""

__version__ = "0.1.0"

from cv_storage.gaussian_core import ScenarioMetrics, evaluate, log_negativity, nu_tilde, teleportation_fidelity
from cv_storage.memory import LossNoiseConvention, MemoryCellParams, MemoryChannel, channel_from_cells, ideal_channel
from cv_storage.scenarios import InputStateParams, ScenarioPair, compare, sigma_a, sigma_b, sigma_theta
from cv_storage.analysis import fidelity_criterion, ideal_criterion

__all__ = [
    "InputStateParams",
    "LossNoiseConvention",
    "MemoryCellParams",
    "MemoryChannel",
    "ScenarioMetrics",
    "ScenarioPair",
    "channel_from_cells",
    "compare",
    "evaluate",
    "fidelity_criterion",
    "ideal_channel",
    "ideal_criterion",
    "log_negativity",
    "nu_tilde",
    "sigma_a",
    "sigma_b",
    "sigma_theta",
    "teleportation_fidelity",
]
