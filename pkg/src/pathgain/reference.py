"""Reference path loss models: Friis, slope-intercept, and 3GPP baselines.

The 3GPP coefficients are transcribed from the public standards as data
(TR 38.901 V16.1.0 Table 7.4.1-1 and Table 7.4.3-2; TR 36.814 V9.0.0 Table
B.1.2.1-1) with the source section recorded next to each block.  Path loss
is returned in dB (positive); path gain is its negative.
"""

import math
from dataclasses import dataclass

from .units import SPEED_OF_LIGHT_M_S


def friis_gain(wavelength_m: float, range_m: float) -> float:
    """Free-space path gain (lambda / 4 pi r)^2 as a linear power ratio."""
    if wavelength_m <= 0.0 or range_m <= 0.0:
        raise ValueError("wavelength and range must be positive")
    return (wavelength_m / (4.0 * math.pi * range_m)) ** 2


@dataclass(frozen=True)
class SlopeIntercept:
    """Power-law path gain model: intercept at 1 m plus -10 n log10(r)."""

    intercept_db_1m: float
    exponent_n: float

    def __post_init__(self):
        if self.exponent_n <= 0.0:
            raise ValueError("distance exponent must be positive")


def slope_intercept_eval(model: SlopeIntercept, range_m: float) -> float:
    """Path gain in dB at a range: P1_dB - 10 n log10(r)."""
    if range_m <= 0.0:
        raise ValueError("range must be positive")
    return model.intercept_db_1m - 10.0 * model.exponent_n * math.log10(range_m)


def uma_nlos_36814(street_width_m: float, building_height_m: float,
                   base_height_m: float, mobile_height_m: float,
                   f_ghz: float, d3d_m: float) -> float:
    """Urban-macro NLOS path loss (dB) per TR 36.814 Table B.1.2.1-1.

    Depends explicitly on street width, building height and both antenna
    heights; distances in meters, carrier in GHz.
    """
    for name, value in (("street_width_m", street_width_m),
                        ("building_height_m", building_height_m),
                        ("base_height_m", base_height_m),
                        ("mobile_height_m", mobile_height_m),
                        ("f_ghz", f_ghz), ("d3d_m", d3d_m)):
        if value <= 0.0:
            raise ValueError(f"{name} must be positive, got {value}")
    w, z_b, z_bs, z_m = street_width_m, building_height_m, base_height_m, mobile_height_m
    return (161.04
            - 7.1 * math.log10(w)
            + 7.5 * math.log10(z_b)
            - (24.37 - 3.7 * (z_b / z_bs) ** 2) * math.log10(z_bs)
            + (43.42 - 3.1 * math.log10(z_bs)) * (math.log10(d3d_m) - 3.0)
            + 20.0 * math.log10(f_ghz)
            - (3.2 * math.log10(11.75 * z_m) ** 2 - 4.97))


def uma_nlos_36814_applicability(street_width_m: float, building_height_m: float,
                                 base_height_m: float,
                                 mobile_height_m: float) -> tuple[str, ...]:
    """Out-of-range flags for the TR 36.814 model (flag, don't reject)."""
    flags = []
    if not 5.0 < street_width_m < 50.0:
        flags.append("street_width_outside_5_50m")
    if not 5.0 < building_height_m < 50.0:
        flags.append("building_height_outside_5_50m")
    if not 10.0 < base_height_m < 150.0:
        flags.append("base_height_outside_10_150m")
    if not 1.0 < mobile_height_m < 10.0:
        flags.append("mobile_height_outside_1_10m")
    return tuple(flags)


# TR 38.901 V16.1.0 Table 7.4.1-1 pathloss coefficients.  Breakpoint models:
# PL1 = a + b log10(d3D) + 20 log10(fc); beyond the breakpoint
# PL2 = a + 40 log10(d3D) + 20 log10(fc) - c log10(dBP'^2 + (hBS-hUT)^2),
# with dBP' = 4 hBS' hUT' fc / c and effective environment height hE = 1 m.
# NLOS rows give PL' and the standard takes max(PL_LOS, PL').
TR38901 = {
    "UMa": {  # Table 7.4.1-1 UMa rows
        "los": {"a": 28.0, "b": 22.0, "c": 9.0, "h_e": 1.0,
                "d2d_max": 5000.0},
        "nlos": {"a": 13.54, "b": 39.08, "f": 20.0, "hut": 0.6,
                 "d2d_max": 5000.0},
        "default_h_bs": 25.0,
    },
    "UMi": {  # Table 7.4.1-1 UMi street-canyon rows
        "los": {"a": 32.4, "b": 21.0, "c": 9.5, "h_e": 1.0,
                "d2d_max": 5000.0},
        "nlos": {"a": 22.4, "b": 35.3, "f": 21.3, "hut": 0.3,
                 "d2d_max": 5000.0},
        "default_h_bs": 10.0,
    },
    "InH": {  # Table 7.4.1-1 InH office rows (no breakpoint)
        "los": {"a": 32.4, "b": 17.3, "d3d_max": 150.0},
        "nlos": {"a": 17.30, "b": 38.3, "f": 24.9, "hut": 0.0,
                 "d3d_max": 86.0},
        "default_h_bs": 3.0,
    },
}

# TR 38.901 Table 7.4.3-2, low-loss O2I building penetration.
O2I_LOW_LOSS = {"p_glass": 0.3, "glass": (2.0, 0.2), "concrete": (5.0, 4.0),
                "indoor_slope_db_per_m": 0.5, "const_db": 5.0}


@dataclass(frozen=True)
class ThreeGppScenario:
    """One 3GPP scenario selection with its geometry.

    family: UMa, UMi or InH; condition: LOS or NLOS.  indoor_depth_m > 0
    adds the UMi low-loss O2I penetration (outdoor part evaluated at the
    scenario's own family/condition).
    """

    family: str
    condition: str
    f_ghz: float
    base_height_m: float | None = None
    mobile_height_m: float = 1.5
    indoor_depth_m: float = 0.0

    def __post_init__(self):
        if self.family not in TR38901:
            raise ValueError(f"unsupported 3GPP family {self.family!r}")
        if self.condition not in ("LOS", "NLOS"):
            raise ValueError(f"condition must be LOS or NLOS, got {self.condition!r}")
        if self.f_ghz <= 0.0:
            raise ValueError("carrier frequency must be positive")
        if self.indoor_depth_m < 0.0:
            raise ValueError("indoor depth must be nonnegative")

    @property
    def h_bs(self) -> float:
        if self.base_height_m is not None:
            return self.base_height_m
        return TR38901[self.family]["default_h_bs"]


def _breakpoint_m(h_bs: float, h_ut: float, f_ghz: float, h_e: float) -> float:
    f_hz = f_ghz * 1e9
    return 4.0 * (h_bs - h_e) * (h_ut - h_e) * f_hz / SPEED_OF_LIGHT_M_S


def _los_pathloss(family: str, f_ghz: float, d2d_m: float, h_bs: float,
                  h_ut: float) -> float:
    row = TR38901[family]["los"]
    d3d = math.hypot(d2d_m, h_bs - h_ut)
    base = row["a"] + 20.0 * math.log10(f_ghz)
    if "c" not in row:  # InH: single slope
        return base + row["b"] * math.log10(d3d)
    d_bp = _breakpoint_m(h_bs, h_ut, f_ghz, row["h_e"])
    if d2d_m <= d_bp:
        return base + row["b"] * math.log10(d3d)
    return (base + 40.0 * math.log10(d3d)
            - row["c"] * math.log10(d_bp**2 + (h_bs - h_ut) ** 2))


def tr38901_pathloss(scenario: ThreeGppScenario, distance_m: float) -> float:
    """TR 38.901 path loss (dB) at a horizontal distance.

    NLOS returns max(LOS, NLOS') per the standard's convention, so NLOS is
    never below LOS at equal geometry.  For a scenario with indoor_depth_m
    the low-loss O2I penetration and indoor distance losses are added.
    """
    if distance_m <= 0.0:
        raise ValueError("distance must be positive")
    fam = scenario.family
    h_bs, h_ut = scenario.h_bs, scenario.mobile_height_m
    pl = _los_pathloss(fam, scenario.f_ghz, distance_m, h_bs, h_ut)
    if scenario.condition == "NLOS":
        row = TR38901[fam]["nlos"]
        d3d = math.hypot(distance_m, h_bs - h_ut)
        pl_nlos = (row["a"] + row["b"] * math.log10(d3d)
                   + row["f"] * math.log10(scenario.f_ghz)
                   - row["hut"] * (h_ut - 1.5))
        pl = max(pl, pl_nlos)
    if scenario.indoor_depth_m > 0.0:
        pl += o2i_low_loss_db(scenario.f_ghz, scenario.indoor_depth_m)
    return pl


def o2i_low_loss_db(f_ghz: float, indoor_depth_m: float) -> float:
    """Low-loss building penetration per TR 38.901 Table 7.4.3-2 (mean)."""
    t = O2I_LOW_LOSS
    l_glass = t["glass"][0] + t["glass"][1] * f_ghz
    l_concrete = t["concrete"][0] + t["concrete"][1] * f_ghz
    through_wall = t["const_db"] - 10.0 * math.log10(
        t["p_glass"] * 10.0 ** (-l_glass / 10.0)
        + (1.0 - t["p_glass"]) * 10.0 ** (-l_concrete / 10.0)
    )
    return through_wall + t["indoor_slope_db_per_m"] * indoor_depth_m


def tr38901_applicability(scenario: ThreeGppScenario,
                          distance_m: float) -> tuple[str, ...]:
    """Distance-range flags for a 38.901 evaluation (flag, don't reject)."""
    fam = scenario.family
    flags = []
    if fam == "InH":
        cond = scenario.condition.lower()
        d_max = TR38901[fam][cond]["d3d_max"]
        if not 1.0 <= distance_m <= d_max:
            flags.append(f"inh_distance_outside_1_{d_max:g}m")
    else:
        if not 10.0 <= distance_m <= TR38901[fam]["los"]["d2d_max"]:
            flags.append("distance_outside_10_5000m")
    return tuple(flags)
