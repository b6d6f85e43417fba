"""Scenario configuration: JSON schema, defaults, parsing, validation.

Every simulation parameter is a config value rather than a constant.  Per
tier, the radio fields have documented defaults so a gNB entry only needs
its identity, tier, and position; any field may be overridden per gNB.
The parser enforces that the declared tier agrees with the type bits inside
the NCGI, so decision code can rely on the identity bits alone.
"""

import json
import math
import os
from dataclasses import dataclass, field
from importlib import resources

from .errors import ParseError, ValidationError
from .geometry import Obstacle, Point3, Trajectory
from .hdma import HdmaConfig
from .nci import GnbType, NcgiParseError, parse_ncgi
from .radio import GnbConfig

DEFAULT_DURATION_S = 40.0
DEFAULT_TICK_MS = 1.0
DEFAULT_SEED = 1
DEFAULT_SN_INTERRUPTION_MS = 50.0
DEFAULT_SHADOW_DECORRELATION_M = 20.0

TIER_NAMES = {
    "macro": GnbType.MACRO,
    "small_sub6": GnbType.SMALL_SUB6,
    "mmwave": GnbType.MMWAVE,
}

# Default radio parameters per tier: carrier, tx power (mmWave folds a
# 15 dB beamforming gain into its 30 dBm), bandwidth, resource share,
# LOS/NLOS path loss exponents, shadowing sigma, per-obstacle penalty.
TIER_DEFAULTS = {
    GnbType.MACRO: dict(carrier_hz=2.1e9, tx_power_dbm=46.0,
                        bandwidth_hz=20e6, resource_share=0.1,
                        pl_exponent_los=2.9, pl_exponent_nlos=3.5,
                        shadow_sigma_db=6.0, blockage_penalty_db=15.0),
    GnbType.SMALL_SUB6: dict(carrier_hz=3.5e9, tx_power_dbm=30.0,
                             bandwidth_hz=100e6, resource_share=0.5,
                             pl_exponent_los=2.2, pl_exponent_nlos=3.1,
                             shadow_sigma_db=7.0, blockage_penalty_db=15.0),
    GnbType.MMWAVE: dict(carrier_hz=28e9, tx_power_dbm=45.0,
                         bandwidth_hz=400e6, resource_share=1.0,
                         pl_exponent_los=2.0, pl_exponent_nlos=3.4,
                         shadow_sigma_db=4.0, blockage_penalty_db=20.0),
}


@dataclass(frozen=True)
class UeConfig:
    start: Point3
    direction: Point3
    speed_kmh: float

    def trajectory(self) -> Trajectory:
        return Trajectory(self.start, self.direction, self.speed_kmh)


@dataclass(frozen=True)
class ScenarioConfig:
    duration_s: float = DEFAULT_DURATION_S
    tick_ms: float = DEFAULT_TICK_MS
    ue: UeConfig = field(default_factory=lambda: UeConfig(
        Point3(100.0, 100.0, 1.5), Point3(0.0, 1.0, 0.0), 60.0))
    hdma: HdmaConfig = field(default_factory=HdmaConfig)
    sn_interruption_ms: float = DEFAULT_SN_INTERRUPTION_MS
    gnbs: tuple = ()
    obstacles: tuple = ()
    seed: int = DEFAULT_SEED
    shadow_decorrelation_m: float = DEFAULT_SHADOW_DECORRELATION_M


def _field(data, key, source, ctx, default=None, required=False):
    if key not in data:
        if required:
            raise ParseError(f"{source}: missing field '{_join(ctx, key)}'")
        return default
    return data[key]


def _join(ctx, key):
    return f"{ctx}.{key}" if ctx else key


def _number(value, source, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{source}: field '{name}' must be a number")
    return float(value)


def _integer(value, source, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{source}: field '{name}' must be an integer")
    return value


def _point(value, source, name):
    if (not isinstance(value, list) or len(value) != 3
            or any(isinstance(v, bool) or not isinstance(v, (int, float))
                   for v in value)):
        raise ParseError(f"{source}: field '{name}' must be [x, y, z]")
    return Point3(float(value[0]), float(value[1]), float(value[2]))


def _parse_gnb(entry, i, source):
    ctx = f"gnbs[{i}]"
    if not isinstance(entry, dict):
        raise ParseError(f"{source}: field '{ctx}' must be an object")
    text = _field(entry, "ncgi", source, ctx, required=True)
    if not isinstance(text, str):
        raise ParseError(f"{source}: field '{ctx}.ncgi' must be a string")
    try:
        ncgi = parse_ncgi(text)
    except NcgiParseError as exc:
        raise ParseError(f"{source}: field '{ctx}.ncgi': {exc}") from exc
    tier_name = _field(entry, "tier", source, ctx, required=True)
    if tier_name not in TIER_NAMES:
        raise ParseError(
            f"{source}: field '{ctx}.tier' must be one of {sorted(TIER_NAMES)}"
        )
    tier = TIER_NAMES[tier_name]
    if ncgi.gnb_type is not tier:
        raise ValidationError(
            f"{source}: {ctx}: NCGI type bits {ncgi.gnb_type.code_bits} are"
            f" inconsistent with declared tier '{tier_name}'"
        )
    position = _point(_field(entry, "position", source, ctx, required=True),
                      source, f"{ctx}.position")
    params = dict(TIER_DEFAULTS[tier])
    for key in params:
        if key in entry:
            params[key] = _number(entry[key], source, f"{ctx}.{key}")
    try:
        return GnbConfig(ncgi=ncgi, tier=tier, position=position, **params)
    except ValueError as exc:
        raise ValidationError(f"{source}: {ctx}: {exc}") from exc


def parse_scenario(data: dict, source: str = "<scenario>") -> ScenarioConfig:
    """Build a validated ScenarioConfig from a decoded JSON object."""
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be a JSON object")

    duration_s = _number(_field(data, "duration_s", source, "",
                                DEFAULT_DURATION_S), source, "duration_s")
    tick_ms = _number(_field(data, "tick_ms", source, "", DEFAULT_TICK_MS),
                      source, "tick_ms")
    seed = _integer(_field(data, "seed", source, "", DEFAULT_SEED),
                    source, "seed")
    interruption = _number(_field(data, "sn_interruption_ms", source, "",
                                  DEFAULT_SN_INTERRUPTION_MS),
                           source, "sn_interruption_ms")
    decorr = _number(_field(data, "shadow_decorrelation_m", source, "",
                            DEFAULT_SHADOW_DECORRELATION_M),
                     source, "shadow_decorrelation_m")

    ue_data = _field(data, "ue", source, "", {})
    if not isinstance(ue_data, dict):
        raise ParseError(f"{source}: field 'ue' must be an object")
    start = _point(_field(ue_data, "start", source, "ue",
                          [100.0, 100.0, 1.5]), source, "ue.start")
    raw_dir = _point(_field(ue_data, "direction", source, "ue",
                            [0.0, 1.0, 0.0]), source, "ue.direction")
    norm = math.sqrt(raw_dir.x ** 2 + raw_dir.y ** 2 + raw_dir.z ** 2)
    if norm == 0.0:
        raise ValidationError(f"{source}: ue.direction must be non-zero")
    direction = Point3(raw_dir.x / norm, raw_dir.y / norm, raw_dir.z / norm)
    speed_kmh = _number(_field(ue_data, "speed_kmh", source, "ue", 60.0),
                        source, "ue.speed_kmh")

    hdma_data = _field(data, "hdma", source, "", {})
    if not isinstance(hdma_data, dict):
        raise ParseError(f"{source}: field 'hdma' must be an object")
    try:
        hdma = HdmaConfig(
            speed_threshold_kmh=_number(
                _field(hdma_data, "speed_threshold_kmh", source, "hdma", 30.0),
                source, "hdma.speed_threshold_kmh"),
            hom_db=_number(_field(hdma_data, "hom_db", source, "hdma", 3.0),
                           source, "hdma.hom_db"),
            ttt_ms=_number(_field(hdma_data, "ttt_ms", source, "hdma", 200.0),
                           source, "hdma.ttt_ms"),
        )
    except ValueError as exc:
        raise ValidationError(f"{source}: hdma: {exc}") from exc

    gnb_list = _field(data, "gnbs", source, "", required=True)
    if not isinstance(gnb_list, list) or not gnb_list:
        raise ParseError(f"{source}: field 'gnbs' must be a non-empty list")
    gnbs = tuple(_parse_gnb(entry, i, source)
                 for i, entry in enumerate(gnb_list))

    obstacles = []
    for i, entry in enumerate(_field(data, "obstacles", source, "", [])):
        ctx = f"obstacles[{i}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{source}: field '{ctx}' must be an object")
        lo = _point(_field(entry, "min", source, ctx, required=True),
                    source, f"{ctx}.min")
        hi = _point(_field(entry, "max", source, ctx, required=True),
                    source, f"{ctx}.max")
        try:
            obstacles.append(Obstacle(lo, hi))
        except ValueError as exc:
            raise ValidationError(f"{source}: {ctx}: {exc}") from exc

    if duration_s < 0:
        raise ValidationError(f"{source}: duration_s must be non-negative")
    if tick_ms <= 0:
        raise ValidationError(f"{source}: tick_ms must be positive")
    if interruption < 0:
        raise ValidationError(f"{source}: sn_interruption_ms must be non-negative")
    if decorr <= 0:
        raise ValidationError(f"{source}: shadow_decorrelation_m must be positive")
    if seed < 0:
        raise ValidationError(f"{source}: seed must be non-negative")
    if speed_kmh < 0:
        raise ValidationError(f"{source}: ue.speed_kmh must be non-negative")

    seen = set()
    macros = 0
    for gnb in gnbs:
        if gnb.ncgi in seen:
            raise ValidationError(f"{source}: duplicate NCGI {gnb.ncgi}")
        seen.add(gnb.ncgi)
        if gnb.tier is GnbType.MACRO:
            macros += 1
    if macros != 1:
        raise ValidationError(
            f"{source}: scenario must contain exactly one macro gNB, got {macros}"
        )

    return ScenarioConfig(
        duration_s=duration_s, tick_ms=tick_ms,
        ue=UeConfig(start, direction, speed_kmh), hdma=hdma,
        sn_interruption_ms=interruption, gnbs=gnbs,
        obstacles=tuple(obstacles), seed=seed,
        shadow_decorrelation_m=decorr,
    )


def parse_config(path) -> ScenarioConfig:
    """Load and validate a scenario JSON file."""
    path = os.fspath(path)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read config: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    return parse_scenario(data, source=path)


def load_default_scenario() -> ScenarioConfig:
    """The packaged default scenario (one macro, two small cells, six mmWave)."""
    text = resources.files("dcho").joinpath("data/default_scenario.json").read_text()
    return parse_scenario(json.loads(text), source="default_scenario.json")
