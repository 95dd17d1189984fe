"""Environment config files: flat INI blocks with unit-suffixed keys.

A config describes one scene: `[link]` carrier, `[wall]` material and
corrugation, `[canyon]` cross-section, `[foliage]`, `[penetration]`,
`[macro]`, `[indoor]` and `[street]` blocks as needed by the chosen
morphology.  Keys are case-sensitive and unknown sections or keys are
rejected, so a config is an auditable record of a scenario.  `#` starts a
comment.
"""

import configparser
import math
from dataclasses import dataclass, field

from . import morphology
from .canyon import CanyonGeometry, LosLink, los_gain_coherent, los_gain_incoherent
from .diffuse import PenetrationSpec
from .morphology import FoliageLayer, IndoorClutter, Link, MacroGeometry, StreetScene
from .reference import friis_gain
from .result import FLAG_KAPPA_EXTRAPOLATED, GainResult
from .surface import Dielectric, TelegraphRoughness, WallSurface
from .units import wavelength_m


class ConfigError(ValueError):
    """Invalid or insufficient configuration content."""


_FLOAT = "float"
_CHOICE_VARIANT = ("unbounded", "street", "aperture", "facade")

# section -> {key: kind}; kind "float", "float_or_auto", or a choice tuple
SCHEMA = {
    "link": {"frequency_hz": _FLOAT},
    "wall": {"n_eff": _FLOAT, "A_m": _FLOAT, "p1": _FLOAT, "p2": _FLOAT,
             "mean_width_m": _FLOAT, "mean_gap_m": _FLOAT},
    "canyon": {"width_m": _FLOAT, "tx_height_m": _FLOAT, "rx_height_m": _FLOAT,
               "ground_index": _FLOAT, "tx_offset_m": _FLOAT,
               "rx_offset_m": _FLOAT},
    "foliage": {"depth_m": _FLOAT, "kappa_np_per_m": "float_or_auto",
                "n_tree_per_m": _FLOAT, "tree_width_m": _FLOAT,
                "tree_height_m": _FLOAT, "veg_start_m": _FLOAT},
    "penetration": {"variant": _CHOICE_VARIANT, "material_t2": _FLOAT,
                    "w1_m": _FLOAT, "w2_m": _FLOAT, "p_window": _FLOAT,
                    "t_window2": _FLOAT, "t_wall2": _FLOAT},
    "macro": {"z_bs_m": _FLOAT, "z_c_m": _FLOAT, "z_m_m": _FLOAT,
              "street_width_m": _FLOAT},
    "indoor": {"kappa_np_per_m": _FLOAT, "depth_m": _FLOAT},
    "street": {"standoff_m": _FLOAT, "rho_v": _FLOAT,
               "kappa_ped_np_per_m": _FLOAT, "kappa_scaff_np_per_m": _FLOAT,
               "direct_veg_path_m": _FLOAT},
}

_WALL_ROUGHNESS_KEYS = ("A_m", "p1", "p2", "mean_width_m", "mean_gap_m")


@dataclass(frozen=True)
class EnvironmentConfig:
    """Parsed scene description; blocks not present in the file are None."""

    path: str
    frequency_hz: float | None = None
    wall: WallSurface | None = None
    canyon_dims: dict | None = None
    foliage: FoliageLayer | None = None
    penetration: PenetrationSpec | None = None
    macro: MacroGeometry | None = None
    indoor: IndoorClutter | None = None
    street: dict | None = None
    flags: tuple[str, ...] = field(default=())


def _parse_sections(path) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",),
                                       interpolation=None)
    parser.optionxform = str  # keys are case-sensitive
    try:
        read = parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if not read:
        raise ConfigError(f"{path}: cannot read config file")
    out = {}
    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError(
                f"{path}: unknown section [{section}]; known: "
                + ", ".join(sorted(SCHEMA))
            )
        allowed = SCHEMA[section]
        values = {}
        for key, raw in parser[section].items():
            if key not in allowed:
                raise ConfigError(
                    f"{path}: unknown key {key!r} in [{section}]; known: "
                    + ", ".join(sorted(allowed))
                )
            values[key] = raw.strip()
        out[section] = values
    return out


def _floats(path, section: str, values: dict[str, str],
            allow_auto: tuple[str, ...] = ()) -> dict:
    out = {}
    for key, raw in values.items():
        kind = SCHEMA[section][key]
        if isinstance(kind, tuple):
            if raw not in kind:
                raise ConfigError(
                    f"{path}: [{section}] {key} must be one of {kind}, got {raw!r}"
                )
            out[key] = raw
            continue
        if kind == "float_or_auto" and raw == "auto":
            out[key] = "auto"
            continue
        try:
            value = float(raw)
        except ValueError as exc:
            raise ConfigError(
                f"{path}: [{section}] {key} must be a number, got {raw!r}"
            ) from exc
        if not math.isfinite(value):
            raise ConfigError(f"{path}: [{section}] {key} must be finite")
        out[key] = value
    return out


def _require(path, section: str, values: dict, keys: tuple[str, ...]):
    missing = [k for k in keys if k not in values]
    if missing:
        raise ConfigError(
            f"{path}: [{section}] missing required key(s): {', '.join(missing)}"
        )


def load_config(path) -> EnvironmentConfig:
    """Parse and validate an environment config file."""
    sections = _parse_sections(path)
    flags: list[str] = []

    frequency_hz = None
    if "link" in sections:
        values = _floats(path, "link", sections["link"])
        _require(path, "link", values, ("frequency_hz",))
        frequency_hz = values["frequency_hz"]
        if frequency_hz <= 0.0:
            raise ConfigError(f"{path}: [link] frequency_hz must be positive")

    wall = None
    if "wall" in sections:
        values = _floats(path, "wall", sections["wall"])
        _require(path, "wall", values, ("n_eff",))
        present = [k for k in _WALL_ROUGHNESS_KEYS if k in values]
        if present and len(present) != len(_WALL_ROUGHNESS_KEYS):
            raise ConfigError(
                f"{path}: [wall] roughness needs all of "
                f"{', '.join(_WALL_ROUGHNESS_KEYS)} (got {', '.join(present)})"
            )
        try:
            roughness = None
            if present:
                roughness = TelegraphRoughness(
                    values["A_m"], values["p1"], values["p2"],
                    1.0 / values["mean_width_m"], 1.0 / values["mean_gap_m"],
                )
            wall = WallSurface(Dielectric(values["n_eff"]), roughness)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{path}: [wall] {exc}") from exc

    canyon_dims = None
    if "canyon" in sections:
        values = _floats(path, "canyon", sections["canyon"])
        _require(path, "canyon", values,
                 ("width_m", "tx_height_m", "rx_height_m"))
        canyon_dims = values

    foliage = None
    if "foliage" in sections:
        values = _floats(path, "foliage", sections["foliage"])
        _require(path, "foliage", values, ("depth_m", "kappa_np_per_m"))
        kappa = values["kappa_np_per_m"]
        if kappa == "auto":
            if frequency_hz is None:
                raise ConfigError(
                    f"{path}: [foliage] kappa_np_per_m=auto needs [link] frequency_hz"
                )
            kappa = morphology.kappa_v_at_frequency(frequency_hz)
            if not 1e9 <= frequency_hz <= 100e9:
                flags.append(FLAG_KAPPA_EXTRAPOLATED)
        try:
            foliage = FoliageLayer(
                values["depth_m"], kappa,
                n_tree_per_m=values.get("n_tree_per_m", 0.0),
                tree_width_m=values.get("tree_width_m", 0.0),
                tree_height_m=values.get("tree_height_m", 0.0),
                veg_start_m=values.get("veg_start_m", 0.0),
            )
        except ValueError as exc:
            raise ConfigError(f"{path}: [foliage] {exc}") from exc

    penetration = None
    if "penetration" in sections:
        values = _floats(path, "penetration", sections["penetration"])
        _require(path, "penetration", values, ("variant",))
        try:
            penetration = _build_penetration(values)
        except ValueError as exc:
            raise ConfigError(f"{path}: [penetration] {exc}") from exc

    macro = None
    if "macro" in sections:
        values = _floats(path, "macro", sections["macro"])
        _require(path, "macro", values,
                 ("z_bs_m", "z_c_m", "z_m_m", "street_width_m"))
        try:
            macro = MacroGeometry(values["z_bs_m"], values["z_c_m"],
                                  values["z_m_m"], values["street_width_m"])
        except ValueError as exc:
            raise ConfigError(f"{path}: [macro] {exc}") from exc

    indoor = None
    if "indoor" in sections:
        values = _floats(path, "indoor", sections["indoor"])
        _require(path, "indoor", values, ("kappa_np_per_m", "depth_m"))
        try:
            indoor = IndoorClutter(values["kappa_np_per_m"], values["depth_m"])
        except ValueError as exc:
            raise ConfigError(f"{path}: [indoor] {exc}") from exc

    street = None
    if "street" in sections:
        street = _floats(path, "street", sections["street"])

    return EnvironmentConfig(str(path), frequency_hz, wall, canyon_dims,
                             foliage, penetration, macro, indoor, street,
                             tuple(flags))


def _build_penetration(values: dict) -> PenetrationSpec:
    variant = values["variant"]
    t2 = values.get("material_t2", 1.0)
    if variant == "unbounded":
        return PenetrationSpec.unbounded(t2)
    if variant == "street":
        if "w1_m" not in values:
            raise ValueError("street variant needs w1_m")
        return PenetrationSpec.street(values["w1_m"], t2)
    if variant == "aperture":
        missing = [k for k in ("w1_m", "w2_m") if k not in values]
        if missing:
            raise ValueError(f"aperture variant needs {', '.join(missing)}")
        return PenetrationSpec.aperture(values["w1_m"], values["w2_m"], t2)
    missing = [k for k in ("p_window", "t_window2", "t_wall2")
               if k not in values]
    if missing:
        raise ValueError(f"facade variant needs {', '.join(missing)}")
    return PenetrationSpec.facade_mixture(values["p_window"],
                                          values["t_window2"],
                                          values["t_wall2"])


def _need(cfg: EnvironmentConfig, morphology_name: str, **blocks):
    missing = [name for name, value in blocks.items() if value is None]
    if missing:
        raise ConfigError(
            f"{cfg.path}: morphology {morphology_name!r} needs config "
            f"block(s): {', '.join(missing)}"
        )


def _canyon_geometry(cfg: EnvironmentConfig, name: str,
                     wall_required: bool = True) -> CanyonGeometry:
    _need(cfg, name, canyon=cfg.canyon_dims)
    if wall_required:
        _need(cfg, name, wall=cfg.wall)
    dims = cfg.canyon_dims
    ground = Dielectric(dims["ground_index"]) if "ground_index" in dims else None
    kwargs = {}
    if ground is not None:
        kwargs["ground"] = ground
    return CanyonGeometry(
        dims["width_m"], dims["tx_height_m"], dims["rx_height_m"], cfg.wall,
        tx_offset_m=dims.get("tx_offset_m", 0.0),
        rx_offset_m=dims.get("rx_offset_m", 0.0),
        **kwargs,
    )


def _street_scene(cfg: EnvironmentConfig, name: str,
                  wall_required: bool) -> StreetScene:
    _need(cfg, name, foliage=cfg.foliage, street=cfg.street)
    geometry = _canyon_geometry(cfg, name, wall_required)
    street = cfg.street
    if "standoff_m" not in street:
        raise ConfigError(
            f"{cfg.path}: morphology {name!r} needs [street] standoff_m"
        )
    kappa_extra = (street.get("kappa_ped_np_per_m", 0.0)
                   + street.get("kappa_scaff_np_per_m", 0.0))
    try:
        return StreetScene(
            geometry, cfg.foliage, street["standoff_m"],
            rho_v=street.get("rho_v"),
            kappa_extra_np_per_m=kappa_extra,
            direct_veg_path_m=street.get("direct_veg_path_m"),
        )
    except ValueError as exc:
        raise ConfigError(f"{cfg.path}: [street] {exc}") from exc


def _frequency(cfg: EnvironmentConfig, name: str) -> float:
    if cfg.frequency_hz is None:
        raise ConfigError(
            f"{cfg.path}: morphology {name!r} needs [link] frequency_hz"
        )
    return cfg.frequency_hz


def make_evaluator(cfg: EnvironmentConfig, name: str):
    """Build range -> GainResult for a morphology from a config.

    Raises ConfigError naming any missing blocks or fields.
    """
    if name not in MORPHOLOGIES:
        raise ConfigError(
            f"unknown morphology {name!r}; choose from {', '.join(MORPHOLOGIES)}"
        )
    builder = MORPHOLOGIES[name]
    evaluator = builder(cfg)
    if cfg.flags:
        inner = evaluator

        def flagged(range_m: float) -> GainResult:
            return inner(range_m).with_flags(*cfg.flags)

        return flagged
    return evaluator


def _build_los(cfg, name="los_corridor", coherent=False):
    geometry = _canyon_geometry(cfg, name)
    f_hz = _frequency(cfg, name)
    gain = los_gain_coherent if coherent else los_gain_incoherent

    def evaluate(range_m: float) -> GainResult:
        return gain(LosLink(geometry, range_m, f_hz))

    return evaluate


def _build_suburban(cfg, name="suburban_street"):
    f_hz = _frequency(cfg, name)
    scene = _street_scene(cfg, name, wall_required=False)

    def evaluate(range_m: float) -> GainResult:
        return morphology.suburban_street_gain(scene, Link(range_m, f_hz))

    return evaluate


def _build_suburban_indoor(cfg, name="suburban_indoor"):
    f_hz = _frequency(cfg, name)
    scene = _street_scene(cfg, name, wall_required=False)
    _need(cfg, name, indoor=cfg.indoor, penetration=cfg.penetration)

    def evaluate(range_m: float) -> GainResult:
        return morphology.suburban_indoor_gain(scene, cfg.indoor,
                                               cfg.penetration,
                                               Link(range_m, f_hz))

    return evaluate


def _build_overtop(cfg, name="over_top"):
    f_hz = _frequency(cfg, name)
    _need(cfg, name, macro=cfg.macro, foliage=cfg.foliage)
    kappa = cfg.foliage.kappa_np_per_m

    def evaluate(range_m: float) -> GainResult:
        return morphology.overtop_gain(cfg.macro, kappa, Link(range_m, f_hz))

    return evaluate


def _build_rural(cfg, name="rural"):
    f_hz = _frequency(cfg, name)
    _need(cfg, name, macro=cfg.macro, foliage=cfg.foliage)

    def evaluate(range_m: float) -> GainResult:
        return morphology.rural_gain(cfg.macro, cfg.foliage, Link(range_m, f_hz))

    return evaluate


def _build_outdoor_indoor(cfg, name="outdoor_indoor"):
    f_hz = _frequency(cfg, name)
    geometry = _canyon_geometry(cfg, name)
    _need(cfg, name, penetration=cfg.penetration, indoor=cfg.indoor)

    def evaluate(range_m: float) -> GainResult:
        return morphology.outdoor_indoor_canyon_gain(
            geometry, cfg.penetration, cfg.indoor, Link(range_m, f_hz))

    return evaluate


def _build_sidewalk_trees(cfg, name="sidewalk_trees"):
    f_hz = _frequency(cfg, name)
    scene = _street_scene(cfg, name, wall_required=True)

    def evaluate(range_m: float) -> GainResult:
        return morphology.canyon_with_trees_gain(scene, Link(range_m, f_hz))

    return evaluate


def _build_canyon_total(cfg, name="canyon_total"):
    f_hz = _frequency(cfg, name)
    scene = _street_scene(cfg, name, wall_required=True)
    _need(cfg, name, macro=cfg.macro)

    def evaluate(range_m: float) -> GainResult:
        return morphology.canyon_total_gain(scene, cfg.macro, Link(range_m, f_hz))

    return evaluate


def _build_friis(cfg, name="friis"):
    f_hz = _frequency(cfg, name)
    lam = wavelength_m(f_hz)

    def evaluate(range_m: float) -> GainResult:
        return GainResult(friis_gain(lam, range_m), range_m)

    return evaluate


MORPHOLOGIES = {
    "los_corridor": _build_los,
    "los_corridor_coherent": lambda cfg: _build_los(
        cfg, "los_corridor_coherent", coherent=True),
    "suburban_street": _build_suburban,
    "suburban_indoor": _build_suburban_indoor,
    "over_top": _build_overtop,
    "rural": _build_rural,
    "outdoor_indoor": _build_outdoor_indoor,
    "sidewalk_trees": _build_sidewalk_trees,
    "canyon_total": _build_canyon_total,
    "friis": _build_friis,
}
