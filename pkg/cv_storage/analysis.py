"""
analysis.py
===========

Decision criteria for choosing between the two storage strategies, the
derivative identities behind them, and Monte-Carlo evidence for the
noisy-memory rules.

Sampling is reproducible: sample ``index`` of a run seeded with ``seed`` draws
from ``numpy.random.default_rng([seed, index])``, so results do not depend on
how many joblib workers evaluate the samples.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from cv_storage.exceptions import DomainError, UnsupportedConfiguration
from cv_storage.gaussian_core import PtInvariants, nu_tilde
from cv_storage.memory import (
    DEFAULT_CONVENTION,
    LossNoiseConvention,
    MemoryCellParams,
    MemoryChannel,
    channel_from_cells,
    ideal_channel,
)
from cv_storage.scenarios import ENTANGLING_ANGLE, InputStateParams, ScenarioPair, compare, sigma_theta

logger = logging.getLogger(__name__)

TIE_TOL = 1e-12
SIGN_THRESHOLD = 1e-9
FD_STEP = 1e-5
DERIVATIVE_RTOL = 1e-6
DERIVATIVE_ATOL = 1e-7
SINGULAR_DISCRIMINANT = 1e-12

Range = Tuple[float, float]


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriterionVerdict:
    """
    Outcome of an analytic storage criterion.

    ``prefer_entanglement`` and ``margin`` are None when the criterion does not
    apply; ``reason`` then says which precondition failed.
    """

    applicable: bool
    prefer_entanglement: Optional[bool] = None
    margin: Optional[float] = None
    reason: str = ""

    @property
    def tie(self) -> bool:
        return self.applicable and abs(self.margin) <= TIE_TOL

    def describe(self) -> str:
        if not self.applicable:
            return f"not applicable ({self.reason})"
        if self.tie:
            return "either choice optimal (y_q2 = y_q1)"
        choice = "store entanglement" if self.prefer_entanglement else "store squeezing"
        return f"{choice} (y_q2 - y_q1 = {self.margin:+.6g})"


def _ideal_memory_gaps(channel: MemoryChannel) -> List[str]:
    gaps = []
    if not channel.equal_losses:
        gaps.append("xi1 != xi2")
    if abs(channel.y_p1) > TIE_TOL or abs(channel.y_p2) > TIE_TOL:
        gaps.append("p-noise present")
    return gaps


def _verdict(channel: MemoryChannel, gaps: Sequence[str]) -> CriterionVerdict:
    if gaps:
        return CriterionVerdict(applicable=False, reason="; ".join(gaps))
    margin = channel.delta_q
    return CriterionVerdict(applicable=True, prefer_entanglement=margin >= -TIE_TOL, margin=margin)


def ideal_criterion(params: InputStateParams, channel: MemoryChannel) -> CriterionVerdict:
    """
    Negativity criterion for ideal memories: E_N(a) >= E_N(b) iff y_q2 >= y_q1.

    Applies when y_p1 = y_p2 = 0, xi1 = xi2 and 1/s^2 <= N2/N1 <= s^2.
    """
    gaps = _ideal_memory_gaps(channel)
    if not params.assumption_holds:
        gaps.append("N2/N1 outside [1/s^2, s^2]")
    return _verdict(channel, gaps)


def fidelity_criterion(params: InputStateParams, channel: MemoryChannel) -> CriterionVerdict:
    """
    Fidelity criterion: F_a >= F_b iff y_q2 >= y_q1.

    Needs only y_p1 = y_p2 = 0 and xi1 = xi2; the closed-form fidelities make
    the ordering independent of s, N1 and N2.
    """
    return _verdict(channel, _ideal_memory_gaps(channel))


# ---------------------------------------------------------------------------
# Interpolating-family derivatives
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AppendixCoefficients:
    """
    Shorthand of the derivative identities, with the common loss absorbed.

    a = N1 s xi^2, b = N1/s xi^2, c = N2/s xi^2, d = N2 s xi^2. big_c and big_d
    are carried for completeness; no formula here depends on them.
    """

    a: float
    b: float
    c: float
    d: float
    delta_q: float
    delta_p: float
    big_a: float
    big_b: float
    big_c: float
    big_d: float


def appendix_coefficients(params: InputStateParams, channel: MemoryChannel) -> AppendixCoefficients:
    xi_sq = channel.xi1 * channel.xi1
    s, n1, n2 = params.s, params.n1, params.n2
    a, b, c, d = n1 * s * xi_sq, n1 / s * xi_sq, n2 / s * xi_sq, n2 * s * xi_sq
    y_q2, y_p2 = channel.y_q2, channel.y_p2
    return AppendixCoefficients(
        a=a,
        b=b,
        c=c,
        d=d,
        delta_q=channel.delta_q,
        delta_p=channel.delta_p,
        big_a=(b - d) * (a + y_q2) * (c + y_q2),
        big_b=(a - c) * (b + y_p2) * (d + y_p2),
        big_c=c * d - a * b + (c - a) * y_p2 + (d - b) * y_q2,
        big_d=(a - c) * (b - d),
    )


def _det2(m: np.ndarray) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _theta_invariants(sigma: np.ndarray) -> Tuple[PtInvariants, float, float]:
    """
    Invariants of a CM without q-p correlations, from its q and p blocks.

    det sigma = det Q det P and Delta~ = Q11 P11 + Q22 P22 - 2 Q12 P12.
    """
    q = sigma[np.ix_((0, 2), (0, 2))]
    p = sigma[np.ix_((1, 3), (1, 3))]
    det_q, det_p = _det2(q), _det2(p)
    delta = float(q[0, 0] * p[0, 0] + q[1, 1] * p[1, 1] - 2.0 * q[0, 1] * p[0, 1])
    return PtInvariants(det_sigma=det_q * det_p, delta_tilde=delta), det_q, det_p


def _theta_values(params: InputStateParams, channel: MemoryChannel, theta: float) -> Tuple[float, float, float]:
    inv, _, _ = _theta_invariants(sigma_theta(params, channel, theta))
    return inv.delta_tilde, inv.det_sigma, nu_tilde(inv) ** 2


@dataclass(frozen=True)
class DerivativeReport:
    """
    Analytic and central-difference theta-derivatives of the family's invariants.

    ``d_nu_sq`` combines the analytic d Delta~ and d det through the chain
    relation. ``d_nu_sq_ideal`` is the closed form valid when delta_p = 0 and
    is None otherwise. Both are None at a singular point.
    """

    theta: float
    delta_tilde: float
    det_sigma: float
    nu_sq: float
    discriminant: float
    d_delta_tilde: float
    d_det: float
    d_nu_sq: Optional[float]
    d_nu_sq_ideal: Optional[float]
    fd_delta_tilde: float
    fd_det: float
    fd_nu_sq: float
    abcd: AppendixCoefficients
    singular: bool = False

    def chain_residual(self) -> Optional[float]:
        """sqrt(disc) d nu~^2 - (d det - nu~^2 d Delta~), all by finite differences."""
        if self.singular:
            return None
        lhs = math.sqrt(self.discriminant) * self.fd_nu_sq
        return lhs - (self.fd_det - self.nu_sq * self.fd_delta_tilde)


def derivatives_agree(
    analytic: float,
    numeric: float,
    scale: float,
    rtol: float = DERIVATIVE_RTOL,
    atol: float = DERIVATIVE_ATOL,
) -> bool:
    """|analytic - numeric| <= rtol |numeric| + atol max(1, |scale|), scale the differentiated quantity."""
    return abs(analytic - numeric) <= rtol * abs(numeric) + atol * max(1.0, abs(scale))


def appendix_derivatives(
    params: InputStateParams,
    channel: MemoryChannel,
    theta: float,
    step: float = FD_STEP,
) -> DerivativeReport:
    """
    Derivatives of Delta~, det and nu~^2 along the interpolating family.

    d Delta~/dtheta = [(a - c) dp + (b - d) dq - 4 dp dq sin 2theta] cos 2theta
    d det/dtheta    = cos 2theta [(a - c) dq det P + (b - d) dp det Q]
    d nu~^2/dtheta  = (d det - nu~^2 d Delta~) / sqrt(Delta~^2 - 4 det)

    Raises:
        UnsupportedConfiguration: If xi1 != xi2
    """
    if not channel.equal_losses:
        raise UnsupportedConfiguration("derivatives are defined only for equal loss factors")
    if not step > 0.0:
        raise DomainError(f"finite-difference step must be positive, got {step}")

    coeffs = appendix_coefficients(params, channel)
    inv, det_q, det_p = _theta_invariants(sigma_theta(params, channel, theta))
    nu_sq = nu_tilde(inv) ** 2
    disc = inv.discriminant

    cos2, sin2 = math.cos(2.0 * theta), math.sin(2.0 * theta)
    dq, dp = coeffs.delta_q, coeffs.delta_p
    a, b, c, d = coeffs.a, coeffs.b, coeffs.c, coeffs.d

    d_delta = ((a - c) * dp + (b - d) * dq - 4.0 * dp * dq * sin2) * cos2
    d_det = cos2 * ((a - c) * dq * det_p + (b - d) * dp * det_q)

    singular = abs(disc) < SINGULAR_DISCRIMINANT
    d_nu_sq: Optional[float] = None
    d_nu_sq_ideal: Optional[float] = None
    if singular:
        logger.warning("degenerate partially transposed spectrum at theta=%.6g; d nu~^2 unavailable", theta)
    else:
        root = math.sqrt(disc)
        d_nu_sq = (d_det - nu_sq * d_delta) / root
        if abs(dp) <= TIE_TOL:
            y_p = channel.y_p2
            d_nu_sq_ideal = ((a - c) * (b + y_p) * (d + y_p) - nu_sq * (b - d)) * dq * cos2 / root

    plus = _theta_values(params, channel, theta + step)
    minus = _theta_values(params, channel, theta - step)
    fd = [(hi - lo) / (2.0 * step) for hi, lo in zip(plus, minus)]

    return DerivativeReport(
        theta=theta,
        delta_tilde=inv.delta_tilde,
        det_sigma=inv.det_sigma,
        nu_sq=nu_sq,
        discriminant=disc,
        d_delta_tilde=d_delta,
        d_det=d_det,
        d_nu_sq=d_nu_sq,
        d_nu_sq_ideal=d_nu_sq_ideal,
        fd_delta_tilde=fd[0],
        fd_det=fd[1],
        fd_nu_sq=fd[2],
        abcd=coeffs,
        singular=singular,
    )


def sign_monotonicity_proof_check(
    params: InputStateParams,
    channel: MemoryChannel,
    points: int = 50,
) -> bool:
    """
    Check that d nu~^2/dtheta keeps the sign of delta_q on [0, pi/4].

    This is the step that turns the ideal-memory criterion into a statement
    about the endpoints: nu~ moves monotonically from sigma_a to sigma_b.
    Outside the ideal regime the check still runs but nothing guarantees it.
    """
    if not channel.ideal or not params.assumption_holds:
        logger.warning("monotonicity check requested outside the ideal-memory regime")

    expected = 0.0 if abs(channel.delta_q) <= TIE_TOL else math.copysign(1.0, channel.delta_q)
    for theta in np.linspace(0.0, ENTANGLING_ANGLE, points):
        report = appendix_derivatives(params, channel, float(theta))
        if report.d_nu_sq is None:
            continue
        tol = TIE_TOL * max(1.0, report.det_sigma)
        value = report.d_nu_sq
        ok = abs(value) <= tol if expected == 0.0 else expected * value >= -tol
        if not ok:
            logger.info("d nu~^2/dtheta = %.3e at theta=%.6f breaks the sign of delta_q", value, theta)
            return False
    return True


# ---------------------------------------------------------------------------
# Sampling regions
# ---------------------------------------------------------------------------


def _check_range(name: str, bounds: Range, lower: float = -math.inf) -> None:
    lo, hi = bounds
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise DomainError(f"range {name} must be finite with min <= max, got {bounds}")
    if lo < lower:
        raise DomainError(f"range {name} must stay above {lower}, got {bounds}")


def _draw(rng: np.random.Generator, bounds: Range) -> float:
    return float(rng.uniform(bounds[0], bounds[1]))


@dataclass(frozen=True)
class ChannelRegion:
    """
    Uniform ranges on the abstract channel and input state.

    equal_losses ties xi2 to xi1, shared_p_noise ties y_p2 to y_p1,
    phase_insensitive sets y_p = y_q in each cell and equal_thermal ties N2 to N1.
    """

    s: Range = (1.0, 8.0)
    n: Range = (1.0, 2.0)
    xi: Range = (1.0, 1.0)
    y_q: Range = (0.0, 1.0)
    y_p: Range = (0.0, 0.0)
    equal_losses: bool = True
    shared_p_noise: bool = False
    phase_insensitive: bool = False
    equal_thermal: bool = False

    def __post_init__(self):
        _check_range("s", self.s, 1e-12)
        _check_range("n", self.n, 1.0)
        _check_range("xi", self.xi, 1e-12)
        _check_range("y_q", self.y_q, 0.0)
        _check_range("y_p", self.y_p, 0.0)

    def sample(self, seed: int, index: int) -> Tuple[InputStateParams, MemoryChannel]:
        rng = np.random.default_rng([seed, index])
        s = _draw(rng, self.s)
        n1 = _draw(rng, self.n)
        n2 = n1 if self.equal_thermal else _draw(rng, self.n)
        xi1 = _draw(rng, self.xi)
        xi2 = xi1 if self.equal_losses else _draw(rng, self.xi)
        y_q1, y_q2 = _draw(rng, self.y_q), _draw(rng, self.y_q)
        if self.phase_insensitive:
            y_p1, y_p2 = y_q1, y_q2
        else:
            y_p1 = _draw(rng, self.y_p)
            y_p2 = y_p1 if self.shared_p_noise else _draw(rng, self.y_p)
        channel = MemoryChannel(xi1=xi1, xi2=xi2, y_q1=y_q1, y_p1=y_p1, y_q2=y_q2, y_p2=y_p2)
        return InputStateParams(s=s, n1=n1, n2=n2), channel


@dataclass(frozen=True)
class CellRegion:
    """
    Uniform ranges on the experimental cell parameters.

    tie_losses sets G2 = G1. share_spurious gives both cells the same
    Delta_q and Delta_p, as in every reference configuration.
    """

    s: Range = (2.0, 8.0)
    n: Range = (1.0, 1.5)
    g1: Range = (0.7, 1.0)
    g2: Range = (0.7, 1.0)
    z_sq: Range = (6.4, 6.4)
    delta_at1: Range = (0.0, 1.2)
    delta_at2: Range = (0.0, 1.2)
    delta_q: Range = (0.0, 0.3)
    delta_p: Range = (0.0, 0.5)
    tie_losses: bool = False
    share_spurious: bool = True
    equal_thermal: bool = False
    convention: LossNoiseConvention = DEFAULT_CONVENTION

    def __post_init__(self):
        _check_range("s", self.s, 1e-12)
        _check_range("n", self.n, 1.0)
        _check_range("g1", self.g1, 1e-12)
        _check_range("g2", self.g2, 1e-12)
        _check_range("z_sq", self.z_sq, 1.0)
        for name in ("delta_at1", "delta_at2", "delta_q", "delta_p"):
            _check_range(name, getattr(self, name), 0.0)

    def sample_cells(self, seed: int, index: int) -> Tuple[InputStateParams, MemoryCellParams, MemoryCellParams]:
        rng = np.random.default_rng([seed, index])
        s = _draw(rng, self.s)
        n1 = _draw(rng, self.n)
        n2 = n1 if self.equal_thermal else _draw(rng, self.n)
        g1 = _draw(rng, self.g1)
        g2 = g1 if self.tie_losses else _draw(rng, self.g2)
        z_sq = _draw(rng, self.z_sq)
        at1, at2 = _draw(rng, self.delta_at1), _draw(rng, self.delta_at2)
        dq1, dp1 = _draw(rng, self.delta_q), _draw(rng, self.delta_p)
        if self.share_spurious:
            dq2, dp2 = dq1, dp1
        else:
            dq2, dp2 = _draw(rng, self.delta_q), _draw(rng, self.delta_p)
        cell1 = MemoryCellParams(g=g1, z_sq=z_sq, delta_at=at1, delta_q=dq1, delta_p=dp1)
        cell2 = MemoryCellParams(g=g2, z_sq=z_sq, delta_at=at2, delta_q=dq2, delta_p=dp2)
        return InputStateParams(s=s, n1=n1, n2=n2), cell1, cell2

    def sample(self, seed: int, index: int) -> Tuple[InputStateParams, MemoryChannel]:
        params, cell1, cell2 = self.sample_cells(seed, index)
        return params, channel_from_cells(cell1, cell2, self.convention)


Region = Union[ChannelRegion, CellRegion]


@dataclass(frozen=True)
class SampleOutcome:
    """One evaluated sample of a Monte-Carlo run."""

    index: int
    params: InputStateParams
    channel: MemoryChannel
    pair: ScenarioPair

    @property
    def delta_logneg(self) -> float:
        return self.pair.delta_logneg

    @property
    def delta_fidelity(self) -> float:
        return self.pair.delta_fidelity_raw


def _evaluate_sample(region: Region, seed: int, index: int) -> SampleOutcome:
    params, channel = region.sample(seed, index)
    return SampleOutcome(index=index, params=params, channel=channel, pair=compare(params, channel))


def evaluate_samples(region: Region, samples: int, seed: int, jobs: int = 1) -> List[SampleOutcome]:
    """Evaluate ``samples`` draws of ``region``, in index order."""
    if samples < 1:
        raise DomainError(f"need at least one sample, got {samples}")
    if seed < 0:
        raise DomainError(f"seed must be non-negative, got {seed}")
    return Parallel(n_jobs=jobs)(delayed(_evaluate_sample)(region, seed, index) for index in range(samples))


# ---------------------------------------------------------------------------
# Biconditionals, heuristics and counterexamples
# ---------------------------------------------------------------------------


@dataclass
class BiconditionalTally:
    """How often sign(y_q2 - y_q1) matched sign(X_a - X_b) on applicable samples."""

    criterion: str
    samples: int
    applicable: int = 0
    ties: int = 0
    agreements: int = 0
    failures: List[SampleOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def biconditional_check(
    criterion: str,
    region: Region,
    samples: int,
    seed: int,
    jobs: int = 1,
) -> BiconditionalTally:
    """
    Test a criterion's biconditional on random configurations.

    ``criterion`` is "negativity" (E_N) or "fidelity" (F). Samples where either
    the margin or the outcome difference is within 1e-12 of zero are ties.
    """
    if criterion == "negativity":
        judge: Callable = ideal_criterion

        def outcome(pair: ScenarioPair) -> float:
            return pair.metrics_a.log_neg - pair.metrics_b.log_neg

    elif criterion == "fidelity":
        judge = fidelity_criterion

        def outcome(pair: ScenarioPair) -> float:
            return pair.metrics_a.fidelity - pair.metrics_b.fidelity

    else:
        raise DomainError(f"unknown criterion {criterion!r}")

    tally = BiconditionalTally(criterion=criterion, samples=samples)
    for sample in evaluate_samples(region, samples, seed, jobs):
        verdict = judge(sample.params, sample.channel)
        if not verdict.applicable:
            continue
        tally.applicable += 1
        difference = outcome(sample.pair)
        if abs(verdict.margin) <= TIE_TOL or abs(difference) <= TIE_TOL:
            tally.ties += 1
        elif (verdict.margin > 0.0) == (difference > 0.0):
            tally.agreements += 1
        else:
            tally.failures.append(sample)
    logger.info(
        "%s biconditional: %d applicable, %d ties, %d failures",
        criterion, tally.applicable, tally.ties, len(tally.failures),
    )
    return tally


@dataclass(frozen=True)
class HeuristicRule:
    """A sign rule 'premise(channel) => conclusion(delta E_N)'."""

    name: str
    statement: str
    claimed: bool
    premise: Callable[[MemoryChannel], bool]
    conclusion: Callable[[float], bool]


def _opposite_signs(ch: MemoryChannel) -> bool:
    return ch.delta_q <= TIE_TOL and ch.delta_p >= -TIE_TOL


def _p_dominant(ch: MemoryChannel) -> bool:
    dq, dp = ch.delta_q, ch.delta_p
    return (dp >= dq - TIE_TOL and dq >= -TIE_TOL) or (dq <= dp + TIE_TOL and dp <= TIE_TOL)


def _phase_insensitive(ch: MemoryChannel) -> bool:
    return abs(ch.y_q1 - ch.y_p1) <= TIE_TOL and abs(ch.y_q2 - ch.y_p2) <= TIE_TOL


def _q_dominant(ch: MemoryChannel) -> bool:
    return ch.delta_q >= ch.delta_p - TIE_TOL and ch.delta_p >= -TIE_TOL


def _squeezing_no_worse(delta: float) -> bool:
    return delta >= -1e-10


def _entanglement_no_worse(delta: float) -> bool:
    return delta <= 1e-10


HEURISTIC_RULES: Tuple[HeuristicRule, ...] = (
    HeuristicRule(
        "opposite-sign", "delta_q <= 0 and delta_p >= 0 => dE_N >= 0", True,
        _opposite_signs, _squeezing_no_worse,
    ),
    HeuristicRule(
        "p-dominant", "delta_p >= delta_q >= 0 or delta_q <= delta_p <= 0 => dE_N >= 0", True,
        _p_dominant, _squeezing_no_worse,
    ),
    HeuristicRule(
        "phase-insensitive", "y_q1 = y_p1 and y_q2 = y_p2 => dE_N >= 0", True,
        _phase_insensitive, _squeezing_no_worse,
    ),
    HeuristicRule(
        "converse", "delta_q >= delta_p >= 0 => dE_N <= 0 (not claimed)", False,
        _q_dominant, _entanglement_no_worse,
    ),
)


@dataclass
class RuleTally:
    name: str
    statement: str
    claimed: bool
    premise_met: int = 0
    holds: int = 0
    fails: int = 0
    failures: List[SampleOutcome] = field(default_factory=list)

    @property
    def violation_rate(self) -> float:
        return self.fails / self.premise_met if self.premise_met else 0.0


@dataclass
class HeuristicReport:
    samples: int
    seed: int
    tallies: List[RuleTally]

    def tally(self, name: str) -> RuleTally:
        for tally in self.tallies:
            if tally.name == name:
                return tally
        raise KeyError(name)

    @property
    def claimed_violations(self) -> int:
        return sum(t.fails for t in self.tallies if t.claimed)


def heuristic_sweep(
    region: Region,
    samples: int,
    seed: int,
    jobs: int = 1,
    rules: Sequence[HeuristicRule] = HEURISTIC_RULES,
    max_failures: int = 20,
) -> HeuristicReport:
    """
    Tally each sign rule over random samples of ``region``.

    Only the first ``max_failures`` failing samples of a rule are kept.
    """
    tallies = [RuleTally(rule.name, rule.statement, rule.claimed) for rule in rules]
    for sample in evaluate_samples(region, samples, seed, jobs):
        for rule, tally in zip(rules, tallies):
            if not rule.premise(sample.channel):
                continue
            tally.premise_met += 1
            if rule.conclusion(sample.delta_logneg):
                tally.holds += 1
            else:
                tally.fails += 1
                if len(tally.failures) < max_failures:
                    tally.failures.append(sample)
    for tally in tallies:
        logger.info(
            "rule %s: premise met %d, holds %d, fails %d", tally.name, tally.premise_met, tally.holds, tally.fails
        )
    return HeuristicReport(samples=samples, seed=seed, tallies=tallies)


def counterexample_search(
    region: Region,
    samples: int,
    seed: int,
    jobs: int = 1,
    threshold: float = SIGN_THRESHOLD,
) -> List[SampleOutcome]:
    """
    Samples where delta E_N and F_b - F_a have opposite signs, both above ``threshold``.

    Equal losses alone do not guarantee an empty result. Disagreements also
    occur for xi1 = xi2 when the cells carry different spurious noise; only
    regions that tie the losses and share that noise have shown none.
    """
    found = [s for s in evaluate_samples(region, samples, seed, jobs) if not s.pair.signs_agree(threshold)]
    logger.info("counterexample search: %d of %d samples disagree", len(found), samples)
    if _unshared_equal_loss_region(region):
        logger.info(
            "counterexample search: losses are tied but spurious noise differs between cells, "
            "so an empty result is not guaranteed"
        )
    return found


def _unshared_equal_loss_region(region: Region) -> bool:
    if isinstance(region, CellRegion):
        return region.tie_losses and not region.share_spurious
    return region.equal_losses and not (region.shared_p_noise or region.phase_insensitive) and region.y_p[1] > 0.0


# ---------------------------------------------------------------------------
# Quantitative checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RuleOfThumbReport:
    values: Tuple[float, ...]
    band: Range
    required_fraction: float

    @property
    def fraction_in_band(self) -> float:
        lo, hi = self.band
        return sum(lo <= v <= hi for v in self.values) / len(self.values)

    @property
    def passed(self) -> bool:
        return self.fraction_in_band >= self.required_fraction


def rule_of_thumb_check(
    samples: int = 100,
    seed: int = 0,
    noise_gap: float = 0.25,
    s_range: Range = (2.0, 8.0),
    n_range: Range = (1.0, 1.5),
    y_range: Range = (0.0, 1.0),
    band: Range = (0.05, 0.15),
    required_fraction: float = 0.8,
) -> RuleOfThumbReport:
    """
    |delta E_N| for ideal memories whose q-noises differ by ``noise_gap``.

    A soft check: the report is returned whatever the outcome and a miss is
    only logged.
    """
    if samples < 1:
        raise DomainError(f"need at least one sample, got {samples}")
    values = []
    for index in range(samples):
        rng = np.random.default_rng([seed, index])
        params = InputStateParams(s=_draw(rng, s_range), n1=_draw(rng, n_range), n2=_draw(rng, n_range))
        y_q1 = _draw(rng, y_range)
        values.append(abs(compare(params, ideal_channel(y_q1, y_q1 + noise_gap)).delta_logneg))
    report = RuleOfThumbReport(values=tuple(values), band=band, required_fraction=required_fraction)
    if not report.passed:
        logger.warning(
            "rule of thumb: only %.0f%% of |dE_N| in [%g, %g]", 100 * report.fraction_in_band, *band
        )
    return report


@dataclass(frozen=True)
class LossStabilityReport:
    """delta E_N over a (G1, G2) grid next to its lossless value."""

    g1: np.ndarray
    g2: np.ndarray
    delta_logneg: np.ndarray
    lossless_delta: float

    @property
    def positive_fraction(self) -> float:
        return float(np.mean(self.delta_logneg > 0.0))

    @property
    def stable(self) -> bool:
        """True when every grid point keeps the strict sign of the lossless difference."""
        if self.lossless_delta > 0.0:
            return bool(np.all(self.delta_logneg > 0.0))
        if self.lossless_delta < 0.0:
            return bool(np.all(self.delta_logneg < 0.0))
        return False


def loss_stability_check(
    params: InputStateParams,
    cell1: MemoryCellParams,
    cell2: MemoryCellParams,
    g_range: Range = (0.7, 1.0),
    steps: Tuple[int, int] = (25, 25),
    convention: LossNoiseConvention = DEFAULT_CONVENTION,
) -> LossStabilityReport:
    """Sweep both loss factors and compare the sign of delta E_N with the lossless one."""
    if min(steps) < 2:
        raise DomainError(f"each axis needs at least 2 steps, got {steps}")
    lossless = compare(
        params,
        channel_from_cells(replace(cell1, g=1.0), replace(cell2, g=1.0), convention),
    ).delta_logneg
    g1 = np.linspace(g_range[0], g_range[1], steps[0])
    g2 = np.linspace(g_range[0], g_range[1], steps[1])
    grid = np.empty((steps[0], steps[1]))
    for i, x in enumerate(g1):
        for j, y in enumerate(g2):
            channel = channel_from_cells(replace(cell1, g=float(x)), replace(cell2, g=float(y)), convention)
            grid[i, j] = compare(params, channel).delta_logneg
    return LossStabilityReport(g1=g1, g2=g2, delta_logneg=grid, lossless_delta=lossless)
