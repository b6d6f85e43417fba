"""Discrete-time dual-connectivity simulation engine.

The channel (positions, blockage, shadowing, RSRP, per-gNB SINR and
throughput) depends only on the scenario and seed, never on handover
decisions, so it is precomputed as (ticks, gnbs) arrays.  The decision loop
then walks the tick grid in plain Python.

Tick ordering: (1) the UE position for the tick comes from the precomputed
trajectory, (2) the measurement frame is the tick's row of the channel
arrays, (3) while an SN handover is in progress the strategy is paused and
traffic routes via the MN; the countdown decrements at the top of the tick
and the new SN carries traffic from the tick on which it reaches zero,
(4) otherwise the strategy runs and a HandoverTo or ReleaseSn takes effect
this tick (HandoverTo opens the interruption window immediately, so the
decision tick itself is MN-routed), (5) metrics are recorded.  With a 50 ms
window and 1 ms ticks an SN handover yields exactly 50 MN-routed ticks and
the serving-SN series flips 50 ticks after the event time.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import ConfigError, StateError
from .geometry import Point3, obstacle_bounds, positions_over
from .hdma import HandoverTo, ReleaseSn, make_strategy
from .nci import GnbType, Ncgi, gnb_type_of
from .radio import (
    MeasurementFrame,
    SPECTRAL_EFFICIENCY_CAP,
    fspl_db,
    noise_dbm,
)


@dataclass
class UeState:
    """Mutable per-run UE connection state.

    The MN never changes during a run; the SN may change, drop, or be in
    transition (sn_handover_remaining_ms > 0 with pending_sn set).
    """

    position: Point3
    speed_kmh: float
    mn: Ncgi
    sn: Ncgi | None = None
    sn_handover_remaining_ms: float = 0.0
    pending_sn: Ncgi | None = None

    def __post_init__(self):
        if gnb_type_of(self.mn.nci) is not GnbType.MACRO:
            raise ConfigError(f"MN must be a Macro-type gNB, got {self.mn}")
        if self.sn is not None and self.sn == self.mn:
            raise ConfigError("SN must differ from the MN")


class HandoverKind(Enum):
    SN_CHANGE = "SnChange"
    SN_RELEASE = "SnRelease"
    SN_ATTACH = "SnAttach"


@dataclass(frozen=True)
class HandoverEvent:
    """One SN topology change, stamped with the decision time."""

    time_s: float
    from_ncgi: Ncgi | None
    to_ncgi: Ncgi | None
    kind: HandoverKind
    target_tier: GnbType


@dataclass
class SimOutput:
    """Complete run record: events plus per-tick series."""

    strategy: str
    seed: int
    times_s: np.ndarray
    sn_ncgis: list
    sinr_db: np.ndarray
    throughput_bps: np.ndarray
    rsrp_dbm: np.ndarray
    ncgis: tuple
    events: list


@dataclass
class Channel:
    """Strategy-independent per-tick channel tensors, one column per gNB."""

    times_s: np.ndarray
    positions: np.ndarray
    blocked: np.ndarray
    rsrp_dbm: np.ndarray
    sinr_db: np.ndarray
    throughput_bps: np.ndarray


def execute_sn_handover(state: UeState, target: Ncgi,
                        interruption_ms: float = 50.0) -> UeState:
    """Begin an SN transition: MN-only until the window expires.

    The SN path carries zero traffic for the whole window; at expiry the
    target becomes the SN and SN traffic resumes.
    """
    if state.sn_handover_remaining_ms > 0:
        raise StateError("an SN handover is already in progress")
    if target == state.sn:
        raise StateError("handover target equals the current SN")
    if interruption_ms > 0:
        state.pending_sn = target
        state.sn_handover_remaining_ms = float(interruption_ms)
    else:
        state.sn = target
    return state


def _tick_count(duration_s: float, tick_ms: float) -> int:
    return int(round(duration_s * 1000.0 / tick_ms))


def compute_channel(scenario, seed: int) -> Channel:
    """Precompute every per-tick, per-gNB quantity for one seed."""
    gnbs = scenario.gnbs
    n_g = len(gnbs)
    n_t = _tick_count(scenario.duration_s, scenario.tick_ms)
    tick_s = scenario.tick_ms / 1000.0
    times = np.arange(n_t, dtype=np.float64) * tick_s
    positions = positions_over(scenario.ue.trajectory(), times)

    gpos = np.array([g.position.as_array() for g in gnbs], dtype=np.float64)
    gpos = gpos.reshape(n_g, 3)
    boxes = obstacle_bounds(list(scenario.obstacles))
    blocked = kernels.blockage_counts(positions, gpos, boxes)

    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((n_t, n_g))
    rho = np.ones(n_t, dtype=np.float64)
    if n_t > 1:
        dp = positions[1:] - positions[:-1]
        deltas = np.sqrt((dp * dp).sum(axis=1))
        rho[1:] = np.exp(-deltas / scenario.shadow_decorrelation_m)
    sigmas = np.array([g.shadow_sigma_db for g in gnbs], dtype=np.float64)
    shadow = kernels.shadow_series(noise, rho, sigmas)

    rsrp = np.empty((n_t, n_g), dtype=np.float64)
    for g, gnb in enumerate(gnbs):
        d = positions - gpos[g]
        dist = np.sqrt((d * d).sum(axis=1))
        dist = np.maximum(dist, 1.0)
        n_exp = np.where(blocked[:, g] > 0, gnb.pl_exponent_nlos,
                         gnb.pl_exponent_los)
        pl = (fspl_db(1.0, gnb.carrier_hz)
              + 10.0 * n_exp * np.log10(dist)
              + blocked[:, g] * gnb.blockage_penalty_db)
        rsrp[:, g] = (gnb.tx_power_dbm - pl) + shadow[:, g]

    # Interference is accumulated per serving gNB in list order, mirroring
    # the scalar sinr_db helper exactly.
    rx_mw = 10.0 ** (rsrp / 10.0)
    sinr = np.empty((n_t, n_g), dtype=np.float64)
    thr = np.empty((n_t, n_g), dtype=np.float64)
    for g, gnb in enumerate(gnbs):
        i_mw = np.zeros(n_t, dtype=np.float64)
        for j, other in enumerate(gnbs):
            if j != g and other.carrier_hz == gnb.carrier_hz:
                i_mw = i_mw + rx_mw[:, j]
        n_mw = 10.0 ** (np.float64(noise_dbm(gnb.bandwidth_hz)) / 10.0)
        sinr[:, g] = 10.0 * np.log10(rx_mw[:, g] / (i_mw + n_mw))
        lin = 10.0 ** (sinr[:, g] / 10.0)
        se = np.log2(1.0 + lin)
        se = np.minimum(se, SPECTRAL_EFFICIENCY_CAP)
        thr[:, g] = (gnb.resource_share * gnb.bandwidth_hz) * se

    return Channel(times, positions, blocked, rsrp, sinr, thr)


def _validate_scenario(scenario) -> int:
    """Returns the MN index; raises ConfigError on invariant violations."""
    if scenario.duration_s < 0:
        raise ConfigError(f"duration_s must be non-negative, got {scenario.duration_s}")
    if scenario.tick_ms <= 0:
        raise ConfigError(f"tick_ms must be positive, got {scenario.tick_ms}")
    seen = set()
    macro_idx = None
    for i, gnb in enumerate(scenario.gnbs):
        if gnb.ncgi in seen:
            raise ConfigError(f"duplicate NCGI {gnb.ncgi}")
        seen.add(gnb.ncgi)
        if gnb.tier is GnbType.MACRO:
            if macro_idx is not None:
                raise ConfigError("scenario must contain exactly one Macro gNB")
            macro_idx = i
    if macro_idx is None:
        raise ConfigError("scenario must contain exactly one Macro gNB")
    return macro_idx


def _argmax_rsrp(indices, rsrp_row, gnbs):
    """Highest RSRP among indices; ties prefer the lowest raw identity."""
    best = None
    for i in indices:
        r = rsrp_row[i]
        if (best is None or r > best[1]
                or (r == best[1] and gnbs[i].ncgi.nci < gnbs[best[0]].ncgi.nci)):
            best = (i, r)
    return None if best is None else best[0]


def run(scenario, strategy_name: str, seed: int) -> SimOutput:
    """Simulate one (scenario, strategy, seed) combination.

    Deterministic: identical inputs yield bit-identical outputs.
    """
    mn_idx = _validate_scenario(scenario)
    gnbs = scenario.gnbs
    ncgis = tuple(g.ncgi for g in gnbs)
    index_of = {ncgi: i for i, ncgi in enumerate(ncgis)}
    tick_ms = scenario.tick_ms
    channel = compute_channel(scenario, seed)
    n_t = channel.times_s.shape[0]

    strategy = make_strategy(strategy_name, scenario.hdma, tick_ms)
    traj = scenario.ue.trajectory()
    ue = UeState(position=traj.start, speed_kmh=scenario.ue.speed_kmh,
                 mn=ncgis[mn_idx])

    window_ticks = 0
    if scenario.sn_interruption_ms > 0:
        window_ticks = int(math.ceil(scenario.sn_interruption_ms / tick_ms - 1e-9))

    events: list[HandoverEvent] = []
    sn_series: list = [None] * n_t
    out_sinr = np.empty(n_t, dtype=np.float64)
    out_thr = np.empty(n_t, dtype=np.float64)

    sn_idx = None
    if n_t > 0:
        admissible = [i for i in range(len(gnbs))
                      if strategy.admits_sn(ue, ncgis[i])]
        sn_idx = _argmax_rsrp(admissible, channel.rsrp_dbm[0], gnbs)
        if sn_idx is not None:
            ue.sn = ncgis[sn_idx]
            events.append(HandoverEvent(0.0, None, ncgis[sn_idx],
                                        HandoverKind.SN_ATTACH,
                                        gnbs[sn_idx].tier))

    remaining = 0
    pending_idx = None
    times = channel.times_s
    rsrp = channel.rsrp_dbm
    sinr = channel.sinr_db
    thr = channel.throughput_bps
    blocked = channel.blocked

    for k in range(n_t):
        ue.position = Point3(float(channel.positions[k, 0]),
                             float(channel.positions[k, 1]),
                             float(channel.positions[k, 2]))
        frame = MeasurementFrame(times[k], ncgis, rsrp[k], sinr[k], blocked[k])
        if remaining > 0:
            remaining -= 1
            if remaining == 0 and pending_idx is not None:
                sn_idx = pending_idx
                pending_idx = None
                ue.sn = ncgis[sn_idx]
                ue.pending_sn = None
                in_window = False
            else:
                in_window = True
        else:
            in_window = False
            decision = strategy.decide(ue, frame)
            if isinstance(decision, HandoverTo):
                target_idx = index_of[decision.target]
                kind = (HandoverKind.SN_ATTACH if sn_idx is None
                        else HandoverKind.SN_CHANGE)
                events.append(HandoverEvent(float(times[k]),
                                            ue.sn, decision.target, kind,
                                            gnbs[target_idx].tier))
                execute_sn_handover(ue, decision.target,
                                    scenario.sn_interruption_ms)
                if window_ticks > 0:
                    pending_idx = target_idx
                    remaining = window_ticks
                    in_window = True
                else:
                    sn_idx = target_idx
            elif isinstance(decision, ReleaseSn) and sn_idx is not None:
                events.append(HandoverEvent(float(times[k]),
                                            ue.sn, None,
                                            HandoverKind.SN_RELEASE,
                                            GnbType.MACRO))
                sn_idx = None
                ue.sn = None
        ue.sn_handover_remaining_ms = remaining * tick_ms
        sn_active = sn_idx is not None and not in_window
        path_idx = sn_idx if sn_active else mn_idx
        out_sinr[k] = sinr[k, path_idx]
        out_thr[k] = thr[k, mn_idx] + (thr[k, sn_idx] if sn_active else 0.0)
        sn_series[k] = ncgis[sn_idx] if sn_idx is not None else None

    return SimOutput(strategy=strategy_name, seed=seed, times_s=times,
                     sn_ncgis=sn_series, sinr_db=out_sinr,
                     throughput_bps=out_thr, rsrp_dbm=rsrp, ncgis=ncgis,
                     events=events)
