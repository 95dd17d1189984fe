"""Result container for path gain evaluations.

Regime flags mark inputs outside a law's asymptotic assumptions.  Laws keep
computing in those regimes (matching how such formulas are used in practice)
and the flags travel with the value so sweep outputs can surface them.
"""

from dataclasses import dataclass, field

from .units import to_db

# Flags understood by the prediction layer.
FLAG_SHORT_RANGE = "short_range"                # r < 2w, continuum sum marginal
FLAG_FREE_SPACE_FLOOR = "free_space_floor"      # direct term exceeds waveguide law
FLAG_SPREADING_REGIME = "spreading_loss_regime"  # wall loss L <= w/r
FLAG_NEAR_WALL = "near_wall"                    # antenna within a wavelength of a wall
FLAG_GUIDED_RANGE = "guided_range"              # r < L*w, guided continuum marginal
FLAG_EXTRAPOLATED_ANGLE = "extrapolated_angle"  # grazing angle beyond low-graze validity
FLAG_KAPPA_EXTRAPOLATED = "kappa_extrapolated"  # foliage absorption outside anchor band


@dataclass(frozen=True)
class GainResult:
    """A path gain value with the effective range it was evaluated at.

    gain is a linear power ratio (receive/transmit for unit-gain antennas).
    components, when present, holds the additive or alternative terms of a
    composite law keyed by mechanism name.
    """

    gain: float
    range_m: float
    flags: tuple[str, ...] = ()
    components: dict[str, float] = field(default_factory=dict)

    @property
    def gain_db(self) -> float:
        return to_db(self.gain)

    def with_flags(self, *extra: str) -> "GainResult":
        merged = self.flags + tuple(f for f in extra if f not in self.flags)
        return GainResult(self.gain, self.range_m, merged, dict(self.components))
