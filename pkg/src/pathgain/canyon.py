"""Line-of-sight path gain in street canyons and indoor corridors.

Wall reflections add to the direct path and slow the range decay from the
free-space exponent 2 to 1.5.  The closed form treats the two-sided image
sum as a continuum; where wall loss is high enough that reflections die out
(short range, or strong roughness scatter at mm-wave), the incoherent sum is
bounded below by its direct term, so the law floors at free space and the
result is flagged.
"""

import cmath
import math
from dataclasses import dataclass

from . import surface
from .result import (
    FLAG_FREE_SPACE_FLOOR,
    FLAG_NEAR_WALL,
    FLAG_SHORT_RANGE,
    FLAG_SPREADING_REGIME,
    GainResult,
)
from .surface import Dielectric, WallSurface
from .units import wavelength_m, wavenumber_rad_m


@dataclass(frozen=True)
class CanyonGeometry:
    """Street canyon or corridor cross-section with antenna placement.

    Offsets are measured from the canyon centerline; the closed forms assume
    centered antennas and the image-sum oracle handles offsets exactly.
    """

    width_m: float
    tx_height_m: float
    rx_height_m: float
    wall: WallSurface | None = None
    ground: Dielectric = Dielectric(surface.GROUND_INDEX_DEFAULT)
    tx_offset_m: float = 0.0
    rx_offset_m: float = 0.0

    def __post_init__(self):
        if self.width_m <= 0.0:
            raise ValueError("canyon width must be positive")
        if self.tx_height_m <= 0.0 or self.rx_height_m <= 0.0:
            raise ValueError("antenna heights must be positive")
        half = self.width_m / 2.0
        if abs(self.tx_offset_m) >= half or abs(self.rx_offset_m) >= half:
            raise ValueError("antenna offsets must stay inside the canyon")


@dataclass(frozen=True)
class LosLink:
    """One transmitter-receiver placement in a canyon at a given frequency."""

    geometry: CanyonGeometry
    range_x_m: float
    frequency_hz: float

    def __post_init__(self):
        if self.range_x_m <= 0.0:
            raise ValueError("horizontal range must be positive")
        if self.frequency_hz <= 0.0:
            raise ValueError("frequency must be positive")

    @property
    def slant_range_m(self) -> float:
        """Direct source-receiver distance r."""
        dz = self.geometry.tx_height_m - self.geometry.rx_height_m
        return math.hypot(self.range_x_m, dz)

    @property
    def ground_image_range_m(self) -> float:
        """Distance r_g from the ground image of the source to the receiver."""
        zsum = self.geometry.tx_height_m + self.geometry.rx_height_m
        return math.hypot(self.range_x_m, zsum)

    @property
    def wavelength_m(self) -> float:
        return wavelength_m(self.frequency_hz)

    @property
    def wavenumber_rad_m(self) -> float:
        return wavenumber_rad_m(self.frequency_hz)

    @property
    def wall_loss(self) -> float:
        """Per-radian wall-loss parameter L at this link's frequency."""
        if self.geometry.wall is None:
            raise ValueError("canyon laws need wall parameters on the geometry")
        return surface.wall_loss(self.geometry.wall, self.wavenumber_rad_m)


def breakpoint_range_m(link: LosLink) -> float:
    """Two-ray breakpoint 4 z_s z / lambda beyond which ground-bounce
    beating gives way to steeper decay."""
    g = link.geometry
    return 4.0 * g.tx_height_m * g.rx_height_m / link.wavelength_m


def ground_reflection(link: LosLink,
                      polarization: str = surface.PARALLEL) -> tuple[float, float]:
    """Ground-bounce field coefficient and its path length.

    Returns (Gamma_g, r_g) with Gamma_g from the low-grazing form at the
    ground-image grazing angle asin((z_s + z)/r_g).  Vertical polarization
    maps to the parallel form (the default).
    """
    g = link.geometry
    r_g = link.ground_image_range_m
    theta_g = math.asin((g.tx_height_m + g.rx_height_m) / r_g)
    gamma = surface.fresnel_low_grazing(theta_g, link.geometry.ground, polarization)
    return gamma, r_g


def _regime_flags(link: LosLink) -> tuple[str, ...]:
    g = link.geometry
    flags = []
    r = link.slant_range_m
    if r < 2.0 * g.width_m:
        flags.append(FLAG_SHORT_RANGE)
    if link.wall_loss <= g.width_m / r:
        flags.append(FLAG_SPREADING_REGIME)
    lam = link.wavelength_m
    half = g.width_m / 2.0
    if min(half - abs(g.tx_offset_m), half - abs(g.rx_offset_m)) < lam:
        # incoherent summation breaks within a wavelength of a wall
        flags.append(FLAG_NEAR_WALL)
    return tuple(flags)


def _waveguide_prefactor(link: LosLink, friis_floor: bool) -> tuple[float, tuple[str, ...]]:
    g = link.geometry
    r = link.slant_range_m
    lam = link.wavelength_m
    guided = lam**2 / (16.0 * math.pi**1.5 * math.sqrt(g.width_m * link.wall_loss)
                       * r**1.5)
    flags = _regime_flags(link)
    friis = (lam / (4.0 * math.pi * r)) ** 2
    if friis_floor and friis > guided:
        return friis, flags + (FLAG_FREE_SPACE_FLOOR,)
    return guided, flags


def los_canyon_gain(link: LosLink, friis_floor: bool = True) -> GainResult:
    """Canyon waveguide law lambda^2 / (16 pi^1.5 sqrt(w L) r^1.5).

    Pure exponent-1.5 power law in range; no ground bounce.  With
    friis_floor (default) the value never drops below free space, since the
    underlying power sum contains the direct term; the floored region is
    flagged.
    """
    value, flags = _waveguide_prefactor(link, friis_floor)
    return GainResult(value, link.slant_range_m, flags)


def los_gain_incoherent(link: LosLink, friis_floor: bool = True) -> GainResult:
    """Waveguide law with ground bounce added in power: prefactor x (1 + |Gamma_g|^2).

    This is the pre-breakpoint range average of the coherent form.
    """
    prefactor, flags = _waveguide_prefactor(link, friis_floor)
    gamma, _ = ground_reflection(link)
    return GainResult(prefactor * (1.0 + gamma * gamma), link.slant_range_m, flags)


def los_gain_coherent(link: LosLink, friis_floor: bool = True) -> GainResult:
    """Waveguide law with the two-ray ground interference retained.

    prefactor x |exp(ikr) + Gamma_g exp(ik r_g)|^2; oscillates with range up
    to the breakpoint and averages to the incoherent form.
    """
    prefactor, flags = _waveguide_prefactor(link, friis_floor)
    gamma, r_g = ground_reflection(link)
    k = link.wavenumber_rad_m
    r = link.slant_range_m
    two_ray = abs(cmath.exp(1j * k * r) + gamma * cmath.exp(1j * k * r_g)) ** 2
    return GainResult(prefactor * two_ray, r, flags)
