"""
verification.py
===============

Property suites run by ``cv-storage verify``.

Each check returns a CheckResult. Hard checks decide the exit status; soft
checks (evidence for rules stated only "for a wide range of parameters") are
reported but never fail a run.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from cv_storage.analysis import (
    CellRegion,
    ChannelRegion,
    appendix_derivatives,
    biconditional_check,
    counterexample_search,
    derivatives_agree,
    heuristic_sweep,
    ideal_criterion,
    loss_stability_check,
    rule_of_thumb_check,
    sign_monotonicity_proof_check,
)
from cv_storage.exceptions import DomainError
from cv_storage.gaussian_core import (
    PARTIAL_TRANSPOSE,
    SYMPLECTIC_FORM,
    apply_channel,
    beam_splitter,
    log_negativity,
    nu_tilde,
    pt_invariants,
    swap_modes,
    teleportation_fidelity,
)
from cv_storage.memory import MemoryChannel, ideal_channel
from cv_storage.presets import (
    ATOMIC_NOISE_MAP,
    FLIP_EXAMPLE,
    LOSS_MAP_REVERSIBLE,
    LOSS_MAP_STABLE,
    REFERENCE_CONVENTION,
    WORKED_EXAMPLE,
)
from cv_storage.scenarios import (
    ENTANGLING_ANGLE,
    InputStateParams,
    compare,
    fidelity_closed_form_a,
    fidelity_closed_form_b,
    nu_tilde_closed_form_b,
    sigma_a,
    sigma_b,
    sigma_theta,
)
from cv_storage.sweep import Baseline, SweepAxis, SweepRunner

logger = logging.getLogger(__name__)

SUITES = ("core", "criteria", "appendix", "heuristics")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    soft: bool = False
    counterexamples: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class VerifySettings:
    """
    Seed, worker count and an optional sample count applied to every
    Monte-Carlo check in place of its default.
    """

    seed: int = 0
    samples: Optional[int] = None
    jobs: int = 1

    def count(self, default: int) -> int:
        return self.samples if self.samples is not None else default


# ---------------------------------------------------------------------------
# Random states and the eigenvalue oracle
# ---------------------------------------------------------------------------


def _local_rotation(phi1: float, phi2: float) -> np.ndarray:
    def rot(phi):
        return np.array([[math.cos(phi), math.sin(phi)], [-math.sin(phi), math.cos(phi)]])

    out = np.zeros((4, 4))
    out[:2, :2] = rot(phi1)
    out[2:, 2:] = rot(phi2)
    return out


def random_symplectic(rng: np.random.Generator, max_log_squeeze: float = 1.0) -> np.ndarray:
    """Passive - squeezing - passive composition with random angles."""
    squeeze = np.exp(rng.uniform(-max_log_squeeze, max_log_squeeze, size=2))
    squeezer = np.diag([squeeze[0], 1.0 / squeeze[0], squeeze[1], 1.0 / squeeze[1]])
    angles = rng.uniform(-math.pi, math.pi, size=6)
    left = _local_rotation(angles[0], angles[1]) @ beam_splitter(angles[2])
    right = beam_splitter(angles[3]) @ _local_rotation(angles[4], angles[5])
    return left @ squeezer @ right


def random_physical_cm(rng: np.random.Generator, max_thermal: float = 3.0) -> np.ndarray:
    """S diag(nu1, nu1, nu2, nu2) S^T with symplectic eigenvalues nu_i in [1, max_thermal]."""
    nu = rng.uniform(1.0, max_thermal, size=2)
    symplectic = random_symplectic(rng)
    sigma = symplectic @ np.diag([nu[0], nu[0], nu[1], nu[1]]) @ symplectic.T
    return 0.5 * (sigma + sigma.T)


def oracle_nu_tilde(sigma: np.ndarray) -> float:
    """Smallest modulus eigenvalue of i Omega Lambda sigma Lambda."""
    transposed = PARTIAL_TRANSPOSE @ sigma @ PARTIAL_TRANSPOSE
    return float(np.min(np.abs(np.linalg.eigvals(1j * SYMPLECTIC_FORM @ transposed))))


def _check(name: str, failures: Sequence[str], total: int, soft: bool = False) -> CheckResult:
    detail = f"{total - len(failures)}/{total} passed"
    return CheckResult(name=name, passed=not failures, detail=detail, soft=soft, counterexamples=list(failures[:5]))


def _rng(settings: VerifySettings, stream: int) -> np.random.Generator:
    return np.random.default_rng([settings.seed, stream])


# ---------------------------------------------------------------------------
# core
# ---------------------------------------------------------------------------


def check_beam_splitter_symplectic(settings: VerifySettings) -> CheckResult:
    total = settings.count(100)
    failures = []
    for theta in _rng(settings, 1).uniform(-math.pi, math.pi, size=total):
        r = beam_splitter(theta)
        if np.max(np.abs(r @ SYMPLECTIC_FORM @ r.T - SYMPLECTIC_FORM)) > 1e-10:
            failures.append(f"theta={theta:.6f}")
    return _check("beam-splitter is symplectic", failures, total)


def check_beam_splitter_composition(settings: VerifySettings) -> CheckResult:
    total = settings.count(100)
    failures = []
    for t1, t2 in _rng(settings, 2).uniform(-math.pi, math.pi, size=(total, 2)):
        if np.max(np.abs(beam_splitter(t1) @ beam_splitter(t2) - beam_splitter(t1 + t2))) > 1e-10:
            failures.append(f"theta1={t1:.6f}, theta2={t2:.6f}")
    return _check("beam-splitter composition", failures, total)


def check_nu_tilde_oracle(settings: VerifySettings) -> CheckResult:
    total = settings.count(1000)
    rng = _rng(settings, 3)
    failures = []
    for _ in range(total):
        sigma = random_physical_cm(rng)
        ours, oracle = nu_tilde(pt_invariants(sigma)), oracle_nu_tilde(sigma)
        if abs(ours - oracle) > 1e-8:
            failures.append(f"nu~={ours:.12g} oracle={oracle:.12g}")
    return _check("nu~ matches the eigenvalue oracle", failures, total)


def check_fidelity_bounds(settings: VerifySettings) -> CheckResult:
    total = settings.count(1000)
    rng = _rng(settings, 4)
    failures = []
    vacuum = teleportation_fidelity(np.eye(4))
    if abs(vacuum - 0.5) > 1e-12:
        failures.append(f"vacuum fidelity {vacuum!r}")
    for _ in range(total):
        fidelity = teleportation_fidelity(random_physical_cm(rng))
        if not 0.0 < fidelity <= 1.0 + 1e-12:
            failures.append(f"F={fidelity:.12g}")
    return _check("0 < F <= 1, vacuum F = 1/2", failures, total + 1)


def check_noise_monotonicity(settings: VerifySettings) -> CheckResult:
    total = settings.count(200)
    rng = _rng(settings, 5)
    failures = []
    for _ in range(total):
        sigma = random_physical_cm(rng)
        noise = np.diag(rng.uniform(0.0, 1.0, size=4))
        values = [log_negativity(nu_tilde(pt_invariants(sigma + t * noise))) for t in np.linspace(0.0, 2.0, 11)]
        if any(later > earlier + 1e-10 for earlier, later in zip(values, values[1:])):
            failures.append("E_N grew with added noise: " + ", ".join(f"{v:.6f}" for v in values))
    return _check("E_N non-increasing under added noise", failures, total)


def check_channel_symmetry(settings: VerifySettings) -> CheckResult:
    total = settings.count(200)
    rng = _rng(settings, 6)
    failures = []
    for _ in range(total):
        sigma = random_physical_cm(rng)
        xi = rng.uniform(0.5, 1.0, size=2)
        y = rng.uniform(0.0, 1.0, size=4)
        out = apply_channel(sigma, MemoryChannel(xi[0], xi[1], *y))
        if not np.array_equal(out, out.T):
            failures.append(f"asymmetric output for xi={xi}")
    return _check("apply_channel keeps symmetry exactly", failures, total)


def check_symmetry_collapse(settings: VerifySettings) -> CheckResult:
    """Identical cells commute with the splitter, so sigma_a = sigma_b."""
    total = settings.count(1000)
    rng = _rng(settings, 7)
    failures = []
    for _ in range(total):
        params = InputStateParams(rng.uniform(1.0, 8.0), rng.uniform(1.0, 2.0), rng.uniform(1.0, 2.0))
        xi, y_q, y_p = rng.uniform(0.5, 1.0), rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)
        channel = MemoryChannel(xi, xi, y_q, y_p, y_q, y_p)
        gap = np.max(np.abs(sigma_a(params, channel) - sigma_b(params, channel)))
        if gap >= 1e-12:
            failures.append(f"max |sigma_a - sigma_b| = {gap:.3e} at {params}, {channel}")
    return _check("identical cells give sigma_a = sigma_b", failures, total)


def check_zero_noise_reference(settings: VerifySettings) -> CheckResult:
    pair = compare(InputStateParams(s=4.0), ideal_channel(0.0, 0.0))
    failures = []
    for label, metrics in (("a", pair.metrics_a), ("b", pair.metrics_b)):
        if abs(metrics.log_neg - 2.0) > 1e-10:
            failures.append(f"E_N({label}) = {metrics.log_neg!r}")
        if abs(metrics.fidelity - 0.8) > 1e-10:
            failures.append(f"F({label}) = {metrics.fidelity!r}")
    return _check("noiseless s=4 gives 2 ebits and F = 0.8", failures, 4)


GENERIC_REGION = ChannelRegion(
    s=(1.0, 8.0), n=(1.0, 2.0), xi=(0.5, 1.0), y_q=(0.0, 1.0), y_p=(0.0, 1.0), equal_losses=False
)


def check_closed_forms(settings: VerifySettings) -> CheckResult:
    total = settings.count(1000)
    failures = []
    for index in range(total):
        params, channel = GENERIC_REGION.sample(settings.seed, index)
        state_b = sigma_b(params, channel)
        for label, numeric, closed in (
            ("F_a", teleportation_fidelity(sigma_a(params, channel)), fidelity_closed_form_a(params, channel)),
            ("F_b", teleportation_fidelity(state_b), fidelity_closed_form_b(params, channel)),
            ("nu~_b", nu_tilde(pt_invariants(state_b)), nu_tilde_closed_form_b(params, channel)),
        ):
            if abs(numeric - closed) > 1e-10 * max(1.0, abs(closed)):
                failures.append(f"{label}={numeric:.12g} closed form {closed:.12g} at {params}, {channel}")
    return _check("F_a, F_b and nu~_b match their closed forms", failures, total)


# phase flip of mode 2; conjugating R_theta with it gives R_-theta
MODE2_PHASE_FLIP = np.diag([1.0, 1.0, -1.0, -1.0])


def check_mode_relabelling(settings: VerifySettings) -> CheckResult:
    """
    Relabelling the modes maps (s, N1, N2, cells) to (1/s, N2, N1, swapped cells).

    The swapped splitter is R_-pi/4, which equals R_pi/4 up to a phase flip of
    mode 2, so swap(sigma(s, N1, N2, ch)) = D sigma(1/s, N2, N1, ch') D.
    """
    total = settings.count(200)
    failures = []
    for index in range(total):
        params, channel = GENERIC_REGION.sample(settings.seed, index)
        mirrored = InputStateParams(s=1.0 / params.s, n1=params.n2, n2=params.n1)
        for label, build in (("a", sigma_a), ("b", sigma_b)):
            lhs = swap_modes(build(params, channel))
            rhs = MODE2_PHASE_FLIP @ build(mirrored, channel.swapped()) @ MODE2_PHASE_FLIP
            gap = float(np.max(np.abs(lhs - rhs)))
            if gap > 1e-10 * max(1.0, float(np.max(np.abs(lhs)))):
                failures.append(f"sigma_{label} gap {gap:.3e} at {params}, {channel}")
    return _check("mode relabelling maps each scenario onto itself", failures, total)


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

IDEAL_REGION = ChannelRegion(s=(1.0, 8.0), n=(1.0, 2.0), xi=(0.7, 1.0), y_q=(0.0, 1.0), y_p=(0.0, 0.0))


def _biconditional_result(criterion: str, settings: VerifySettings) -> CheckResult:
    tally = biconditional_check(criterion, IDEAL_REGION, settings.count(10_000), settings.seed, settings.jobs)
    failures = [f"sample {s.index}: {s.params}, {s.channel}" for s in tally.failures]
    result = _check(f"{criterion} criterion biconditional", failures, max(tally.applicable - tally.ties, 0))
    result.detail += f" ({tally.applicable} applicable, {tally.ties} ties)"
    return result


def check_negativity_biconditional(settings: VerifySettings) -> CheckResult:
    return _biconditional_result("negativity", settings)


def check_fidelity_biconditional(settings: VerifySettings) -> CheckResult:
    return _biconditional_result("fidelity", settings)


def check_worked_example(settings: VerifySettings) -> CheckResult:
    preset = WORKED_EXAMPLE
    channel = preset.channel()
    pair = compare(preset.input_state, channel)
    verdict = ideal_criterion(preset.input_state, channel)
    failures = []
    if abs(pair.metrics_a.log_neg - 1.06) > 0.01 or abs(pair.metrics_b.log_neg - 0.94) > 0.01:
        failures.append(f"E_N(a)={pair.metrics_a.log_neg:.4f} E_N(b)={pair.metrics_b.log_neg:.4f}")
    if not (verdict.applicable and verdict.prefer_entanglement):
        failures.append(f"criterion verdict {verdict.describe()}")
    return _check("worked ideal example", failures, 2)


def check_equal_loss_agreement(settings: VerifySettings) -> CheckResult:
    """With equal losses and shared spurious noise, delta F and delta E_N never disagree."""
    total = settings.count(10_000)
    region = CellRegion(
        s=(1.5, 8.0), n=(1.0, 1.5), tie_losses=True, share_spurious=True, convention=REFERENCE_CONVENTION
    )
    found = counterexample_search(region, total, settings.seed, settings.jobs)
    return _check(
        "no negativity/fidelity disagreement for xi1 = xi2, shared spurious noise",
        [f"sample {s.index}" for s in found],
        total,
    )


def check_equal_loss_unshared_noise(settings: VerifySettings) -> CheckResult:
    """Equal losses with spurious noise drawn per cell: disagreements are counted, not forbidden."""
    total = settings.count(10_000)
    region = CellRegion(tie_losses=True, share_spurious=False, convention=REFERENCE_CONVENTION)
    found = counterexample_search(region, total, settings.seed, settings.jobs)
    return CheckResult(
        name="negativity/fidelity agreement for xi1 = xi2, unshared spurious noise",
        passed=not found,
        detail=f"{len(found)}/{total} samples disagree",
        soft=True,
        counterexamples=[
            f"sample {s.index}: dE_N={s.delta_logneg:+.4f} dF={s.delta_fidelity:+.4f}" for s in found[:5]
        ],
    )


def check_unequal_loss_counterexample(settings: VerifySettings) -> CheckResult:
    """Next to the reversible loss map a disagreement must exist."""
    total = settings.count(200)
    region = CellRegion(
        s=(8.0, 8.0), n=(1.0, 1.0), g1=(1.0, 1.0), g2=(0.845, 0.865),
        delta_at1=(0.4, 0.4), delta_at2=(0.8, 0.8), delta_q=(0.1, 0.1), delta_p=(0.3, 0.3),
        convention=REFERENCE_CONVENTION,
    )
    found = counterexample_search(region, total, settings.seed, settings.jobs)
    return CheckResult(
        name="negativity/fidelity disagreement for xi1 != xi2",
        passed=bool(found),
        detail=f"{len(found)}/{total} samples disagree",
    )


# ---------------------------------------------------------------------------
# appendix
# ---------------------------------------------------------------------------

APPENDIX_REGION = ChannelRegion(s=(3.0, 8.0), n=(1.0, 1.5), xi=(0.8, 1.0), y_q=(0.0, 0.6), y_p=(0.0, 0.6))


def _appendix_samples(settings: VerifySettings, region: ChannelRegion, total: int):
    for index in range(total):
        params, channel = region.sample(settings.seed, index)
        theta = float(np.random.default_rng([settings.seed, index, 1]).uniform(0.0, ENTANGLING_ANGLE))
        report = appendix_derivatives(params, channel, theta)
        if report.singular or report.discriminant < 1e-2 * report.delta_tilde ** 2:
            continue
        yield index, report


def check_family_endpoints(settings: VerifySettings) -> CheckResult:
    total = settings.count(100)
    failures = []
    for index in range(total):
        params, channel = APPENDIX_REGION.sample(settings.seed, index)
        gap_a = np.max(np.abs(sigma_theta(params, channel, 0.0) - sigma_a(params, channel)))
        gap_b = np.max(np.abs(sigma_theta(params, channel, ENTANGLING_ANGLE) - sigma_b(params, channel)))
        if max(gap_a, gap_b) > 1e-10:
            failures.append(f"sample {index}: gaps {gap_a:.2e}, {gap_b:.2e}")
    return _check("sigma_theta runs from sigma_a to sigma_b", failures, total)


def check_delta_tilde_derivative(settings: VerifySettings) -> CheckResult:
    failures, total = [], 0
    for index, r in _appendix_samples(settings, APPENDIX_REGION, settings.count(1000)):
        total += 1
        if not derivatives_agree(r.d_delta_tilde, r.fd_delta_tilde, r.delta_tilde):
            failures.append(f"sample {index}: {r.d_delta_tilde:.12g} vs {r.fd_delta_tilde:.12g}")
    return _check("d Delta~/dtheta matches finite differences", failures, total)


def check_det_derivative(settings: VerifySettings) -> CheckResult:
    failures, total = [], 0
    for index, r in _appendix_samples(settings, APPENDIX_REGION, settings.count(1000)):
        total += 1
        if not derivatives_agree(r.d_det, r.fd_det, r.det_sigma):
            failures.append(f"sample {index}: {r.d_det:.12g} vs {r.fd_det:.12g}")
    return _check("d det/dtheta matches finite differences", failures, total)


def check_ideal_nu_derivative(settings: VerifySettings) -> CheckResult:
    region = ChannelRegion(
        s=(3.0, 8.0), n=(1.0, 1.5), xi=(0.8, 1.0), y_q=(0.0, 0.6), y_p=(0.0, 0.6), shared_p_noise=True
    )
    failures, total = [], 0
    for index, r in _appendix_samples(settings, region, settings.count(1000)):
        total += 1
        if not derivatives_agree(r.d_nu_sq_ideal, r.fd_nu_sq, r.nu_sq):
            failures.append(f"sample {index}: {r.d_nu_sq_ideal:.12g} vs {r.fd_nu_sq:.12g}")
    return _check("delta_p = 0 form of d nu~^2/dtheta", failures, total)


def check_chain_relation(settings: VerifySettings) -> CheckResult:
    failures, total = [], 0
    for index, r in _appendix_samples(settings, APPENDIX_REGION, settings.count(1000)):
        total += 1
        rhs = r.fd_det - r.nu_sq * r.fd_delta_tilde
        lhs = math.sqrt(r.discriminant) * r.fd_nu_sq
        if not derivatives_agree(lhs, rhs, r.det_sigma):
            failures.append(f"sample {index}: residual {r.chain_residual():.3e}")
    return _check("chain relation with finite differences", failures, total)


def check_sign_monotonicity(settings: VerifySettings) -> CheckResult:
    params = InputStateParams(s=4.0)
    cases = (ideal_channel(0.2, 0.8), ideal_channel(0.5, 0.5), ideal_channel(0.9, 0.1))
    failures = [str(ch) for ch in cases if not sign_monotonicity_proof_check(params, ch)]
    return _check("d nu~^2/dtheta keeps the sign of delta_q", failures, len(cases))


# ---------------------------------------------------------------------------
# heuristics
# ---------------------------------------------------------------------------


def check_heuristic_rules(settings: VerifySettings) -> CheckResult:
    region = CellRegion(convention=REFERENCE_CONVENTION)
    report = heuristic_sweep(region, settings.count(2000), settings.seed, settings.jobs)
    lines = [
        f"{t.name}: premise {t.premise_met}, fails {t.fails}{'' if t.claimed else ' (not claimed)'}"
        for t in report.tallies
    ]
    return CheckResult(
        name="noisy-memory sign rules",
        passed=report.claimed_violations == 0,
        detail="; ".join(lines),
        soft=True,
    )


def check_phase_insensitive_rule(settings: VerifySettings) -> CheckResult:
    region = ChannelRegion(s=(4.0, 8.0), n=(1.0, 1.0), xi=(1.0, 1.0), y_q=(0.0, 1.0), phase_insensitive=True)
    report = heuristic_sweep(region, settings.count(2000), settings.seed, settings.jobs)
    tally = report.tally("phase-insensitive")
    return _check(
        "phase-insensitive noise favours squeezing",
        [f"sample {s.index}: dE_N={s.delta_logneg:.3e}" for s in tally.failures],
        tally.premise_met,
    )


def check_rule_of_thumb(settings: VerifySettings) -> CheckResult:
    report = rule_of_thumb_check(samples=settings.count(100), seed=settings.seed)
    return CheckResult(
        name="0.25 vacuum units of q-noise ~ 0.1 ebits",
        passed=report.passed,
        detail=f"{100 * report.fraction_in_band:.0f}% of |dE_N| in {report.band}",
        soft=True,
    )


def check_flip_example(settings: VerifySettings) -> CheckResult:
    pair = compare(FLIP_EXAMPLE.input_state, FLIP_EXAMPLE.channel())
    failures = []
    if pair.metrics_a.entangled or not pair.metrics_b.entangled:
        failures.append(f"nu~_a={pair.metrics_a.nu_tilde:.4f} nu~_b={pair.metrics_b.nu_tilde:.4f}")
    return _check("noisy example: only stored squeezing stays entangled", failures, 1)


def check_loss_stability(settings: VerifySettings) -> CheckResult:
    preset = LOSS_MAP_STABLE
    report = loss_stability_check(
        preset.input_state, preset.cell1, preset.cell2, steps=(25, 25), convention=preset.convention
    )
    positive = 100 * report.positive_fraction
    return CheckResult(
        name="positive delta E_N survives unequal losses",
        passed=report.stable,
        detail=f"{positive:.0f}% of the 25x25 grid positive, min {report.delta_logneg.min():.4f}",
    )


def _preset_grid(preset, steps: int):
    axes = [SweepAxis(a.target, a.start, a.stop, steps) for a in preset.axes]
    baseline = Baseline(preset.input_state, preset.cell1, preset.cell2, convention=preset.convention)
    return SweepRunner(baseline, jobs=1).run(axes)


def check_loss_reversal(settings: VerifySettings) -> CheckResult:
    grid = _preset_grid(LOSS_MAP_REVERSIBLE, 25).delta_grid()
    passed = bool(np.any(grid > 1e-9) and np.any(grid < -1e-9))
    return CheckResult(
        name="negative delta E_N can be reversed by unequal losses",
        passed=passed,
        detail=f"delta E_N in [{grid.min():.4f}, {grid.max():.4f}]",
    )


def check_atomic_noise_map(settings: VerifySettings) -> CheckResult:
    result = _preset_grid(ATOMIC_NOISE_MAP, 13)
    failures = []
    for record in result.records:
        at1, at2 = record.axis_values
        expected = np.sign(at1 - at2) if abs(at1 - at2) > 1e-12 else 0.0
        actual = np.sign(record.delta_e_n) if abs(record.delta_e_n) > 1e-9 else 0.0
        if actual != expected:
            failures.append(f"Delta_At=({at1:.3f}, {at2:.3f}) dE_N={record.delta_e_n:.3e}")
    return _check("squeezing wins exactly when Delta_At1 > Delta_At2", failures, len(result.records))


SUITE_CHECKS: Dict[str, Tuple[Callable[[VerifySettings], CheckResult], ...]] = {
    "core": (
        check_beam_splitter_symplectic,
        check_beam_splitter_composition,
        check_nu_tilde_oracle,
        check_fidelity_bounds,
        check_noise_monotonicity,
        check_channel_symmetry,
        check_symmetry_collapse,
        check_zero_noise_reference,
        check_closed_forms,
        check_mode_relabelling,
    ),
    "criteria": (
        check_worked_example,
        check_negativity_biconditional,
        check_fidelity_biconditional,
        check_equal_loss_agreement,
        check_equal_loss_unshared_noise,
        check_unequal_loss_counterexample,
    ),
    "appendix": (
        check_family_endpoints,
        check_delta_tilde_derivative,
        check_det_derivative,
        check_ideal_nu_derivative,
        check_chain_relation,
        check_sign_monotonicity,
    ),
    "heuristics": (
        check_flip_example,
        check_heuristic_rules,
        check_phase_insensitive_rule,
        check_rule_of_thumb,
        check_loss_stability,
        check_loss_reversal,
        check_atomic_noise_map,
    ),
}


def run_suite(suite: str, settings: VerifySettings = VerifySettings()) -> List[CheckResult]:
    """Run one named suite, or every suite for "all"."""
    if suite == "all":
        names = SUITES
    elif suite in SUITE_CHECKS:
        names = (suite,)
    else:
        raise DomainError(f"unknown suite {suite!r} (expected one of {', '.join(SUITES)}, all)")

    results = []
    for name in names:
        logger.info("running %s suite", name)
        for check in SUITE_CHECKS[name]:
            try:
                result = check(settings)
            except Exception as exc:
                logger.error("check %s raised %s", check.__name__, exc)
                result = CheckResult(name=check.__name__, passed=False, detail=f"raised {exc!r}")
            logger.info("%s: %s", result.name, "PASSED" if result.passed else "FAILED")
            results.append(result)
    return results


def all_hard_checks_passed(results: Sequence[CheckResult]) -> bool:
    return all(r.passed for r in results if not r.soft)
