"""
gaussian_core.py
================

Covariance-matrix algebra for two bosonic modes.

States are 4x4 real covariance matrices (CMs) in units of vacuum noise, with
the canonical operators ordered as (q1, p1, q2, p2); the vacuum is the identity.
Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import expm

from cv_storage.exceptions import DomainError, InvariantViolation

if TYPE_CHECKING:
    from cv_storage.memory import MemoryChannel

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12
DISCRIMINANT_FLOOR = -1e-9

# J_jk = delta_{j+2,k} - delta_{j,k+2}
GENERATOR = np.array(
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ]
)

SYMPLECTIC_FORM = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))

# p2 -> -p2
PARTIAL_TRANSPOSE = np.diag([1.0, 1.0, 1.0, -1.0])

SIGMA_Z = np.diag([1.0, -1.0])


def as_covariance(matrix) -> np.ndarray:
    """
    Validate and copy a candidate covariance matrix.

    Physicality is deliberately not required here; use :func:`is_physical`.

    Args:
        matrix: Any 4x4 array-like of reals

    Returns:
        A float64 copy of the matrix

    Raises:
        InvariantViolation: If the matrix is not 4x4, not symmetric to 1e-12,
            or has a non-positive diagonal entry
    """
    sigma = np.array(matrix, dtype=float)
    if sigma.shape != (4, 4):
        raise InvariantViolation(f"expected a 4x4 covariance matrix, got shape {sigma.shape}")
    if np.max(np.abs(sigma - sigma.T)) > SYMMETRY_TOL:
        raise InvariantViolation("covariance matrix is not symmetric")
    if np.any(np.diag(sigma) <= 0.0):
        raise InvariantViolation("covariance matrix has a non-positive variance")
    return sigma


def is_physical(sigma: np.ndarray, tol: float = 1e-10) -> bool:
    """Robertson-Schroedinger test: sigma + i*Omega must be positive semidefinite."""
    eigenvalues = np.linalg.eigvalsh(np.asarray(sigma, dtype=complex) + 1j * SYMPLECTIC_FORM)
    return bool(eigenvalues.min() >= -tol)


def beam_splitter(theta: float) -> np.ndarray:
    """
    Phase-space action of a beam-splitter, R_theta = exp(theta * J).

    theta = pi/4 is the balanced (50:50) splitter used by both storage scenarios.
    """
    if not math.isfinite(theta):
        raise DomainError(f"beam-splitter angle must be finite, got {theta}")
    return expm(theta * GENERATOR)


def congruence(transform: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Return S sigma S^T, symmetrised to remove round-off asymmetry."""
    image = transform @ sigma @ transform.T
    return 0.5 * (image + image.T)


def apply_channel(sigma: np.ndarray, channel: MemoryChannel) -> np.ndarray:
    """
    Apply the diagonal Gaussian memory channel sigma -> X sigma X^T + Y.

    X = diag(xi1, xi1, xi2, xi2) and Y = diag(y_q1, y_p1, y_q2, y_p2). The
    product is formed elementwise so a symmetric input gives a bitwise
    symmetric output.
    """
    gains = np.array([channel.xi1, channel.xi1, channel.xi2, channel.xi2])
    noise = np.array([channel.y_q1, channel.y_p1, channel.y_q2, channel.y_p2])
    if not (np.all(np.isfinite(gains)) and np.all(np.isfinite(noise))):
        raise DomainError("channel parameters must be finite")
    return np.asarray(sigma, dtype=float) * np.outer(gains, gains) + np.diag(noise)


def channel_is_physical(channel: MemoryChannel) -> bool:
    """
    Check xi_i^2 >= 1 - sqrt(y_qi * y_pi) for both modes.

    Raises:
        DomainError: If any additive noise entry is negative
    """
    modes = (
        (channel.xi1, channel.y_q1, channel.y_p1),
        (channel.xi2, channel.y_q2, channel.y_p2),
    )
    for xi, y_q, y_p in modes:
        if y_q < 0.0 or y_p < 0.0:
            raise DomainError(f"additive noise must be non-negative, got y_q={y_q}, y_p={y_p}")
        if xi * xi < 1.0 - math.sqrt(y_q * y_p) - SYMMETRY_TOL:
            return False
    return True


@dataclass(frozen=True)
class BlockDecomposition:
    """The 2x2 blocks of a two-mode CM: [[alpha, gamma], [gamma^T, beta]]."""

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray

    def assemble(self) -> np.ndarray:
        return np.block([[self.alpha, self.gamma], [self.gamma.T, self.beta]])


def blocks(sigma: np.ndarray) -> BlockDecomposition:
    sigma = np.asarray(sigma, dtype=float)
    return BlockDecomposition(
        alpha=sigma[:2, :2].copy(),
        beta=sigma[2:, 2:].copy(),
        gamma=sigma[:2, 2:].copy(),
    )


@dataclass(frozen=True)
class PtInvariants:
    """Symplectic invariants of the partially transposed CM."""

    det_sigma: float
    delta_tilde: float

    @property
    def discriminant(self) -> float:
        return self.delta_tilde ** 2 - 4.0 * self.det_sigma


def pt_invariants(sigma: np.ndarray) -> PtInvariants:
    """
    Compute det(sigma) and the partially transposed seralian.

    Delta~ = det(alpha) + det(beta) - 2 det(gamma).

    Raises:
        InvariantViolation: If sigma is not a symmetric 4x4 matrix with a
            positive diagonal
    """
    sigma = as_covariance(sigma)
    parts = blocks(sigma)
    delta_tilde = (
        np.linalg.det(parts.alpha) + np.linalg.det(parts.beta) - 2.0 * np.linalg.det(parts.gamma)
    )
    return PtInvariants(det_sigma=float(np.linalg.det(sigma)), delta_tilde=float(delta_tilde))


def nu_tilde(inv: PtInvariants) -> float:
    """
    Smallest partially transposed symplectic eigenvalue.

    Solves 2 nu~^2 = Delta~ - sqrt(Delta~^2 - 4 det sigma). The smaller root is
    evaluated as 2 det / (Delta~ + sqrt(disc)), which is the same number without
    the cancellation between Delta~ and the square root.

    Raises:
        InvariantViolation: If the discriminant is below -1e-9 or the root is
            negative, neither of which can happen for a covariance matrix
    """
    disc = inv.discriminant
    if disc < DISCRIMINANT_FLOOR:
        raise InvariantViolation(
            f"partially transposed discriminant {disc:.3e} is negative; input is not a CM"
        )
    root = math.sqrt(max(disc, 0.0))
    if inv.delta_tilde > 0.0:
        nu_sq = 2.0 * inv.det_sigma / (inv.delta_tilde + root)
    else:
        nu_sq = 0.5 * (inv.delta_tilde - root)
    if nu_sq < 0.0:
        raise InvariantViolation(f"negative squared symplectic eigenvalue {nu_sq:.3e}")
    return math.sqrt(nu_sq)


def log_negativity(nu: float) -> float:
    """Logarithmic negativity in ebits, max(0, -log2 nu)."""
    if not nu > 0.0:
        raise DomainError(f"symplectic eigenvalue must be positive, got {nu}")
    return max(0.0, -math.log2(nu))


def teleportation_fidelity(sigma: np.ndarray) -> float:
    """
    Coherent-state teleportation fidelity of a two-mode resource.

    F = 2 / sqrt(det(2*1 + V)), V the covariance of (q1 + q2, p1 - p2), the
    pair squeezed by the balanced splitter R = exp(J pi/4):

        V = alpha + sigma_z beta sigma_z + gamma sigma_z + sigma_z gamma^T

    Without q-p correlations V reduces to alpha + beta + 2 sigma_z gamma. The
    vacuum gives the classical 1/2.

    Raises:
        InvariantViolation: If sigma fails the checks of :func:`as_covariance`
        DomainError: If the determinant is not positive
    """
    parts = blocks(as_covariance(sigma))
    added_noise = (
        parts.alpha
        + SIGMA_Z @ parts.beta @ SIGMA_Z
        + parts.gamma @ SIGMA_Z
        + SIGMA_Z @ parts.gamma.T
    )
    det = float(np.linalg.det(2.0 * np.eye(2) + added_noise))
    if not det > 0.0:
        raise DomainError(f"fidelity determinant {det:.3e} is not positive; input is not a CM")
    return 2.0 / math.sqrt(det)


@dataclass(frozen=True)
class ScenarioMetrics:
    """The figures of merit of one final state."""

    nu_tilde: float
    log_neg: float
    fidelity: float

    @property
    def entangled(self) -> bool:
        return self.nu_tilde < 1.0

    @property
    def clamped_fidelity(self) -> float:
        """max(F, 1/2): fidelity above what measure-and-prepare achieves anyway."""
        return max(self.fidelity, 0.5)


def evaluate(sigma: np.ndarray) -> ScenarioMetrics:
    """Compute nu~, E_N and F for a final state."""
    nu = nu_tilde(pt_invariants(sigma))
    return ScenarioMetrics(nu_tilde=nu, log_neg=log_negativity(nu), fidelity=teleportation_fidelity(sigma))


def swap_modes(sigma: np.ndarray) -> np.ndarray:
    """Relabel mode 1 <-> mode 2."""
    order = [2, 3, 0, 1]
    return np.asarray(sigma)[np.ix_(order, order)]
