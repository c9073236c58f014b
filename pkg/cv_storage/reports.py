"""Plain-text reports printed by the command-line front end."""

from typing import Dict, Iterable, Sequence

from cv_storage.analysis import CriterionVerdict
from cv_storage.memory import LossNoiseConvention, MemoryChannel
from cv_storage.presets import Preset
from cv_storage.scenarios import InputStateParams, ScenarioPair
from cv_storage.sweep import SweepResult
from cv_storage.verification import CheckResult


def _entanglement_note(nu: float) -> str:
    return "entangled" if nu < 1.0 else "separable"


def format_channel(channel: MemoryChannel) -> str:
    return (
        f"xi = ({channel.xi1:.6g}, {channel.xi2:.6g})  "
        f"y_q = ({channel.y_q1:.6g}, {channel.y_q2:.6g})  "
        f"y_p = ({channel.y_p1:.6g}, {channel.y_p2:.6g})"
    )


def format_compare_report(
    params: InputStateParams,
    channel: MemoryChannel,
    pair: ScenarioPair,
    verdicts: Dict[str, CriterionVerdict],
    convention: LossNoiseConvention,
) -> str:
    """Both strategies side by side, then the deltas and the criteria."""
    a, b = pair.metrics_a, pair.metrics_b
    lines = [
        f"input state: s = {params.s:.6g}, N1 = {params.n1:.6g}, N2 = {params.n2:.6g}",
        f"channel ({convention.value} convention): {format_channel(channel)}",
        "",
        f"{'':24}{'store entanglement (a)':>24}{'store squeezing (b)':>24}",
        f"{'nu~':24}{a.nu_tilde:>24.6f}{b.nu_tilde:>24.6f}",
        f"{'E_N [ebits]':24}{a.log_neg:>24.6f}{b.log_neg:>24.6f}",
        f"{'teleportation F':24}{a.fidelity:>24.6f}{b.fidelity:>24.6f}",
        f"{'state':24}{_entanglement_note(a.nu_tilde):>24}{_entanglement_note(b.nu_tilde):>24}",
        "",
        f"delta E_N = E_N(b) - E_N(a) = {pair.delta_logneg:+.6f}",
        f"delta F (clamped at 1/2)     = {pair.delta_fidelity:+.6f}",
    ]
    if channel.symmetric:
        lines.append("identical cells: choices equivalent")
    lines.append("")
    for name, verdict in verdicts.items():
        lines.append(f"{name} criterion: {verdict.describe()}")
    lines.append(f"channel physical: {'yes' if pair.channel_physical else 'NO (xi^2 < 1 - sqrt(y_q y_p))'}")
    if not pair.states_physical:
        lines.append("warning: a final CM violates the uncertainty principle")
    return "\n".join(lines)


def format_sweep_summary(result: SweepResult) -> str:
    summary = result.summary()
    axes = " x ".join(f"{a.target} [{a.start:g}, {a.stop:g}] ({a.steps})" for a in result.axes)
    return f"""sweep over {axes}: {summary.points} points
  delta E_N > 0 on {100 * summary.positive_delta_e:.1f}% of the grid, < 0 on {100 * summary.negative_delta_e:.1f}%
  delta E_N range [{summary.min_delta_e:+.6f}, {summary.max_delta_e:+.6f}]
  delta F > 0 on {100 * summary.positive_delta_f:.1f}% of the grid
  negativity/fidelity sign disagreements: {summary.sign_disagreements}
  unphysical channels: {summary.unphysical_channels}"""


def format_verification_report(results: Sequence[CheckResult]) -> str:
    lines = []
    for result in results:
        status = "PASS" if result.passed else ("WARN" if result.soft else "FAIL")
        lines.append(f"[{status}] {result.name}: {result.detail}")
        if not result.passed:
            lines.extend(f"    counterexample: {c}" for c in result.counterexamples)
    hard = [r for r in results if not r.soft]
    failed = sum(not r.passed for r in hard)
    lines.append(f"{len(hard) - failed}/{len(hard)} checks passed, {len(results) - len(hard)} soft")
    return "\n".join(lines)


def format_preset_list(presets: Iterable[Preset]) -> str:
    return "\n".join(f"{preset.name:22} {preset.description}" for preset in presets)
