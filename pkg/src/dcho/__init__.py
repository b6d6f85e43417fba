"""Deterministic dual-connectivity SN handover simulator.

A 36-bit cell identity codec with a 2-bit gNB-type extension, a three-tier
radio model, three pluggable handover decision strategies, a discrete-time
engine, and CSV metrics output.
"""

from .config import ScenarioConfig, load_default_scenario, parse_config
from .engine import HandoverEvent, HandoverKind, SimOutput, run
from .hdma import HdmaConfig, STRATEGY_NAMES, make_strategy
from .metrics import RunMetrics, compute_metrics
from .nci import (
    DecodedNci,
    GnbType,
    Ncgi,
    NcgiParseError,
    RangeError,
    decode_nci,
    encode_nci,
    format_ncgi,
    gnb_type_of,
    parse_ncgi,
)

__version__ = "0.1.0"

__all__ = [
    "DecodedNci",
    "GnbType",
    "HandoverEvent",
    "HandoverKind",
    "HdmaConfig",
    "Ncgi",
    "NcgiParseError",
    "RangeError",
    "RunMetrics",
    "STRATEGY_NAMES",
    "ScenarioConfig",
    "SimOutput",
    "compute_metrics",
    "decode_nci",
    "encode_nci",
    "format_ncgi",
    "gnb_type_of",
    "load_default_scenario",
    "make_strategy",
    "parse_config",
    "parse_ncgi",
    "run",
]
