"""Named parameter sets of the reference storage experiments."""

from dataclasses import dataclass
from typing import Dict, Tuple

from cv_storage.memory import DEFAULT_CONVENTION, LossNoiseConvention, MemoryCellParams, MemoryChannel, channel_from_cells
from cv_storage.scenarios import InputStateParams
from cv_storage.sweep import SweepAxis

Z_SQ = 6.4

# loss-noise reading the reference experiments are reproduced with
REFERENCE_CONVENTION = LossNoiseConvention.ATTENUATION

LOSS_AXES = (SweepAxis("cell1.g", 0.7, 1.0, 25), SweepAxis("cell2.g", 0.7, 1.0, 25))
ATOMIC_NOISE_AXES = (SweepAxis("cell1.delta_at", 0.0, 1.2, 25), SweepAxis("cell2.delta_at", 0.0, 1.2, 25))


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    input_state: InputStateParams
    cell1: MemoryCellParams
    cell2: MemoryCellParams
    axes: Tuple[SweepAxis, ...] = ()
    convention: LossNoiseConvention = DEFAULT_CONVENTION

    def channel(self) -> MemoryChannel:
        return channel_from_cells(self.cell1, self.cell2, self.convention)


WORKED_EXAMPLE = Preset(
    name="worked-example",
    description="Ideal memories, s=4, N=1, Delta_At = 0.6 / 1.0: storing entanglement keeps ~0.12 ebits more",
    input_state=InputStateParams(s=4.0, n1=1.0, n2=1.0),
    cell1=MemoryCellParams(g=1.0, z_sq=Z_SQ, delta_at=0.6),
    cell2=MemoryCellParams(g=1.0, z_sq=Z_SQ, delta_at=1.0),
    convention=REFERENCE_CONVENTION,
)

FLIP_EXAMPLE = Preset(
    name="flip",
    description="Noisy memories, s=5, G=0.85: only the stored-squeezing state stays entangled",
    input_state=InputStateParams(s=5.0, n1=1.0, n2=1.0),
    cell1=MemoryCellParams(g=0.85, z_sq=Z_SQ, delta_at=0.9, delta_q=0.2, delta_p=0.4),
    cell2=MemoryCellParams(g=0.85, z_sq=Z_SQ, delta_at=0.6, delta_q=0.2, delta_p=0.4),
    convention=REFERENCE_CONVENTION,
)

ATOMIC_NOISE_MAP = Preset(
    name="atomic-noise-map",
    description="delta E_N and delta F over (Delta_At1, Delta_At2); squeezing wins when Delta_At1 > Delta_At2",
    input_state=InputStateParams(s=8.0, n1=1.4, n2=1.2),
    cell1=MemoryCellParams(g=0.95, z_sq=Z_SQ, delta_at=0.8, delta_q=0.1, delta_p=0.3),
    cell2=MemoryCellParams(g=0.95, z_sq=Z_SQ, delta_at=0.8, delta_q=0.1, delta_p=0.3),
    axes=ATOMIC_NOISE_AXES,
    convention=REFERENCE_CONVENTION,
)

LOSS_MAP_STABLE = Preset(
    name="loss-map-stable",
    description="delta E_N over (G1, G2) with Delta_At = 0.8 / 0.4; positive without loss and everywhere else",
    input_state=InputStateParams(s=8.0, n1=1.0, n2=1.0),
    cell1=MemoryCellParams(g=1.0, z_sq=Z_SQ, delta_at=0.8, delta_q=0.1, delta_p=0.3),
    cell2=MemoryCellParams(g=1.0, z_sq=Z_SQ, delta_at=0.4, delta_q=0.1, delta_p=0.3),
    axes=LOSS_AXES,
    convention=REFERENCE_CONVENTION,
)

LOSS_MAP_REVERSIBLE = Preset(
    name="loss-map-reversible",
    description="delta E_N over (G1, G2) with Delta_At = 0.4 / 0.8; negative without loss, reversed by unequal losses",
    input_state=InputStateParams(s=8.0, n1=1.0, n2=1.0),
    cell1=MemoryCellParams(g=1.0, z_sq=Z_SQ, delta_at=0.4, delta_q=0.1, delta_p=0.3),
    cell2=MemoryCellParams(g=1.0, z_sq=Z_SQ, delta_at=0.8, delta_q=0.1, delta_p=0.3),
    axes=LOSS_AXES,
    convention=REFERENCE_CONVENTION,
)

PRESETS: Dict[str, Preset] = {
    preset.name: preset
    for preset in (WORKED_EXAMPLE, FLIP_EXAMPLE, ATOMIC_NOISE_MAP, LOSS_MAP_STABLE, LOSS_MAP_REVERSIBLE)
}
