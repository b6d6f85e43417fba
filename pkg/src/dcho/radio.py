"""Log-distance radio model: path loss, correlated shadowing, RSRP, SINR, throughput.

All three gNB tiers share one functional form and differ only through their
``GnbConfig`` parameters.  Scalar helpers compute with numpy float64 ufuncs
in the same operation order as the engine's vectorised arrays; results agree
to within one unit in the last place (numpy's SIMD transcendental loops may
round differently from the scalar path), and the shadowing recursion agrees
bit-for-bit.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError
from .geometry import Point3, distance_3d
from .nci import GnbType, Ncgi

SPEED_OF_LIGHT_M_S = 299_792_458.0
THERMAL_NOISE_DBM_HZ = -174.0
NOISE_FIGURE_DB = 9.0
SPECTRAL_EFFICIENCY_CAP = 7.4  # bit/s/Hz
MIN_DISTANCE_M = 1.0


@dataclass(frozen=True)
class GnbConfig:
    """Static per-gNB radio parameters."""

    ncgi: Ncgi
    tier: GnbType
    position: Point3
    carrier_hz: float
    tx_power_dbm: float
    bandwidth_hz: float
    resource_share: float
    pl_exponent_los: float
    pl_exponent_nlos: float
    shadow_sigma_db: float
    blockage_penalty_db: float

    def __post_init__(self):
        if self.carrier_hz <= 0:
            raise ConfigError(f"carrier_hz must be positive, got {self.carrier_hz}")
        if self.bandwidth_hz <= 0:
            raise ConfigError(f"bandwidth_hz must be positive, got {self.bandwidth_hz}")
        if not 0.0 < self.resource_share <= 1.0:
            raise ConfigError(
                f"resource_share must be in (0, 1], got {self.resource_share}"
            )
        if self.pl_exponent_los < 0 or self.pl_exponent_nlos < 0:
            raise ConfigError("path loss exponents must be non-negative")
        if self.shadow_sigma_db < 0:
            raise ConfigError("shadow_sigma_db must be non-negative")


class ShadowState:
    """Gauss-Markov shadowing track for one gNB.

    Spatial correlation decays as exp(-displacement / decorrelation), so the
    marginal distribution stays Normal(0, sigma^2) at every step.  The RNG
    may be shared between states; draws are consumed one per sample in call
    order, which is what makes a sequential replay reproduce the engine's
    vectorised shadowing matrix exactly.
    """

    def __init__(self, sigma_db: float, decorrelation_m: float,
                 rng: np.random.Generator):
        if decorrelation_m <= 0:
            raise ConfigError(
                f"decorrelation distance must be positive, got {decorrelation_m}"
            )
        if sigma_db < 0:
            raise ConfigError(f"sigma_db must be non-negative, got {sigma_db}")
        self.sigma_db = float(sigma_db)
        self.decorrelation_m = float(decorrelation_m)
        self.rng = rng
        self.value_db = 0.0
        self.last_pos: Point3 | None = None


def shadowing_db(state: ShadowState, ue_pos: Point3) -> float:
    """Advance the shadowing process to ``ue_pos`` and return the new value."""
    z = state.rng.standard_normal()
    if state.last_pos is None:
        state.value_db = state.sigma_db * z
    else:
        delta = distance_3d(state.last_pos, ue_pos)
        rho = np.exp(-delta / state.decorrelation_m)
        s = np.sqrt(1.0 - rho * rho)
        state.value_db = rho * state.value_db + s * (state.sigma_db * z)
    state.last_pos = ue_pos
    return float(state.value_db)


@dataclass(frozen=True)
class MeasurementFrame:
    """One tick of per-gNB measurements, index-aligned with ``ncgis``."""

    time_s: float
    ncgis: tuple[Ncgi, ...]
    rsrp_dbm: np.ndarray
    sinr_db: np.ndarray
    blocked: np.ndarray

    def __post_init__(self):
        if self.time_s < 0:
            raise DomainError(f"frame time must be non-negative, got {self.time_s}")
        n = len(self.ncgis)
        if not (len(self.rsrp_dbm) == len(self.sinr_db) == len(self.blocked) == n):
            raise DomainError("frame arrays must have one entry per gNB")


def fspl_db(d_m: float, f_hz: float) -> float:
    """Free-space path loss 20*log10(4*pi*d*f/c)."""
    if d_m <= 0 or f_hz <= 0:
        raise DomainError(f"fspl_db requires d > 0 and f > 0, got d={d_m}, f={f_hz}")
    return float(
        20.0 * np.log10(4.0 * np.pi * np.float64(d_m) * np.float64(f_hz)
                        / SPEED_OF_LIGHT_M_S)
    )


def path_loss_db(gnb: GnbConfig, d_m: float, blockers: int) -> float:
    """Log-distance loss anchored at 1 m FSPL; NLOS exponent when blocked."""
    d = max(float(d_m), MIN_DISTANCE_M)
    n = gnb.pl_exponent_los if blockers == 0 else gnb.pl_exponent_nlos
    return float(
        fspl_db(MIN_DISTANCE_M, gnb.carrier_hz)
        + 10.0 * n * np.log10(np.float64(d))
        + blockers * gnb.blockage_penalty_db
    )


def rsrp_dbm(gnb: GnbConfig, ue_pos: Point3, shadow_db: float,
             blockers: int) -> float:
    """Wideband received power: tx minus path loss plus shadowing."""
    d = distance_3d(gnb.position, ue_pos)
    return float(gnb.tx_power_dbm - path_loss_db(gnb, d, blockers) + shadow_db)


def noise_dbm(bandwidth_hz: float) -> float:
    """Thermal noise over the given bandwidth including the UE noise figure."""
    if bandwidth_hz <= 0:
        raise DomainError(f"bandwidth must be positive, got {bandwidth_hz}")
    return float(
        THERMAL_NOISE_DBM_HZ + 10.0 * np.log10(np.float64(bandwidth_hz))
        + NOISE_FIGURE_DB
    )


def sinr_db(serving: GnbConfig, all_gnbs: list[GnbConfig],
            rx_powers_dbm) -> float:
    """SINR of the serving gNB against co-channel interferers plus noise.

    Interference counts only gNBs sharing the serving carrier; the tiers use
    distinct carriers, so cross-tier interference is zero.
    """
    if serving not in all_gnbs:
        raise ConfigError("serving gNB is not in the gNB list")
    if len(rx_powers_dbm) != len(all_gnbs):
        raise ConfigError("rx_powers_dbm must have one entry per gNB")
    idx = all_gnbs.index(serving)
    s_mw = 10.0 ** (np.float64(rx_powers_dbm[idx]) / 10.0)
    i_mw = np.float64(0.0)
    for j, gnb in enumerate(all_gnbs):
        if j != idx and gnb.carrier_hz == serving.carrier_hz:
            i_mw = i_mw + 10.0 ** (np.float64(rx_powers_dbm[j]) / 10.0)
    n_mw = 10.0 ** (np.float64(noise_dbm(serving.bandwidth_hz)) / 10.0)
    return float(10.0 * np.log10(s_mw / (i_mw + n_mw)))


def throughput_bps(sinr: float, bandwidth_hz: float,
                   resource_share: float) -> float:
    """Shannon-style rate with a spectral efficiency cap of 7.4 bit/s/Hz."""
    lin = 10.0 ** (np.float64(sinr) / 10.0)
    se = np.log2(1.0 + lin)
    if se > SPECTRAL_EFFICIENCY_CAP:
        se = SPECTRAL_EFFICIENCY_CAP
    return float(resource_share * bandwidth_hz * se)
