"""Physical constants and unit conversions shared across the package.

All internal quantities are SI: lengths in meters, frequency in hertz,
absorption in nepers per meter, gains as linear power ratios.  Decibels
appear only at presentation boundaries (CLI output, fitting, reports).
"""

import math

SPEED_OF_LIGHT_M_S = 299792458.0

# 1 neper = 10/ln(10) dB ~= 4.343 dB
NEPER_TO_DB = 10.0 / math.log(10.0)


def wavelength_m(frequency_hz: float) -> float:
    """Free-space wavelength (m) for a carrier frequency (Hz)."""
    if frequency_hz <= 0.0:
        raise ValueError(f"frequency must be positive, got {frequency_hz}")
    return SPEED_OF_LIGHT_M_S / frequency_hz


def wavenumber_rad_m(frequency_hz: float) -> float:
    """Free-space wavenumber k = 2*pi*f/c (rad/m)."""
    return 2.0 * math.pi / wavelength_m(frequency_hz)


def to_db(power_ratio: float) -> float:
    """Linear power ratio to dB."""
    if power_ratio <= 0.0:
        raise ValueError(f"power ratio must be positive, got {power_ratio}")
    return 10.0 * math.log10(power_ratio)


def from_db(value_db: float) -> float:
    """dB to linear power ratio."""
    return 10.0 ** (value_db / 10.0)
