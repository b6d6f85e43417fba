"""Secondary-node handover decision strategies.

Three interchangeable deciders share the A3 entering condition and a
time-to-trigger accumulator:

- ``a3rsrp``: best-RSRP candidate of any tier, pure A3/TTT.
- ``speed``: above the speed threshold the UE stays macro-only (releases any
  secondary, never attaches one); below it, behaves as ``a3rsrp``.
- ``nci``: at or above the threshold, candidates are filtered by the gNB
  type bits embedded in the cell identity, keeping macro (00) and sub-6
  small cells (01) while skipping mmWave (10) and reserved (11); below the
  threshold, behaves as ``a3rsrp``.

A winning macro candidate maps to releasing the secondary node: the UE is
permanently anchored to the macro, so "hand over to the macro" means
operate via the master node only.
"""

import math
from dataclasses import dataclass

from .nci import GnbType, Ncgi, gnb_type_of
from .radio import MeasurementFrame


@dataclass(frozen=True)
class HdmaConfig:
    """Decision parameters shared by every strategy."""

    speed_threshold_kmh: float = 30.0
    hom_db: float = 3.0
    ttt_ms: float = 200.0

    def __post_init__(self):
        if self.speed_threshold_kmh < 0:
            raise ValueError("speed_threshold_kmh must be non-negative")
        if not math.isfinite(self.hom_db):
            raise ValueError("hom_db must be finite")
        if self.ttt_ms < 0:
            raise ValueError("ttt_ms must be non-negative")


@dataclass
class TttTimer:
    """Accumulates how long the A3 condition has held for one target."""

    target: Ncgi | None = None
    elapsed_ms: float = 0.0
    armed: bool = False

    def retarget(self, target: Ncgi) -> None:
        self.target = target
        self.elapsed_ms = 0.0
        self.armed = True

    def clear(self) -> None:
        self.target = None
        self.elapsed_ms = 0.0
        self.armed = False


class Decision:
    """Base class for strategy outcomes."""


@dataclass(frozen=True)
class NoAction(Decision):
    pass


@dataclass(frozen=True)
class HandoverTo(Decision):
    target: Ncgi


@dataclass(frozen=True)
class ReleaseSn(Decision):
    pass


NO_ACTION = NoAction()
RELEASE_SN = ReleaseSn()


def ttt_update(timer: TttTimer, condition_holds: bool, dt_ms: float,
               ttt_ms: float) -> tuple[TttTimer, bool]:
    """Advance the timer by one step; fires once elapsed reaches ttt_ms.

    The boundary is inclusive: elapsed >= ttt_ms fires.  Any step where the
    condition fails resets elapsed to zero.
    """
    if condition_holds:
        timer.elapsed_ms += dt_ms
        timer.armed = True
        fired = timer.elapsed_ms >= ttt_ms
    else:
        timer.elapsed_ms = 0.0
        timer.armed = False
        fired = False
    return timer, fired


def a3_condition(target_rsrp: float, serving_rsrp: float, hom: float) -> bool:
    """A3 entering condition: target strictly above serving plus margin."""
    return bool(target_rsrp > serving_rsrp + hom)


@dataclass(frozen=True)
class CandidateSet:
    """Deterministically ordered handover candidates, current SN excluded."""

    entries: tuple[tuple[Ncgi, float], ...]

    def best(self) -> tuple[Ncgi, float] | None:
        """Highest RSRP; ties broken by the lowest raw cell identity."""
        best = None
        for ncgi, rsrp in self.entries:
            if best is None or rsrp > best[1] or (
                rsrp == best[1] and ncgi.nci < best[0].nci
            ):
                best = (ncgi, rsrp)
        return best


def build_candidates(ue, frame: MeasurementFrame, admit=None) -> CandidateSet:
    """All measured gNBs except the current SN, optionally type-filtered."""
    entries = []
    for ncgi, rsrp in zip(frame.ncgis, frame.rsrp_dbm):
        if ue.sn is not None and ncgi == ue.sn:
            continue
        if admit is not None and not admit(ncgi):
            continue
        entries.append((ncgi, float(rsrp)))
    return CandidateSet(tuple(entries))


def _serving_rsrp(ue, frame: MeasurementFrame) -> float | None:
    """RSRP of the current SN, or of the MN when no SN is attached."""
    serving = ue.sn if ue.sn is not None else ue.mn
    for ncgi, rsrp in zip(frame.ncgis, frame.rsrp_dbm):
        if ncgi == serving:
            return float(rsrp)
    return None


def _decide_a3(ue, frame: MeasurementFrame, cfg: HdmaConfig, timer: TttTimer,
               dt_ms: float, admit=None) -> Decision:
    candidates = build_candidates(ue, frame, admit)
    best = candidates.best()
    serving_rsrp = _serving_rsrp(ue, frame)
    if best is None or serving_rsrp is None:
        timer.clear()
        return NO_ACTION
    target, target_rsrp = best
    if timer.target != target:
        timer.retarget(target)
    holds = a3_condition(target_rsrp, serving_rsrp, cfg.hom_db)
    _, fired = ttt_update(timer, holds, dt_ms, cfg.ttt_ms)
    if not fired:
        return NO_ACTION
    timer.clear()
    if gnb_type_of(target.nci) is GnbType.MACRO:
        return RELEASE_SN if ue.sn is not None else NO_ACTION
    return HandoverTo(target)


def a3rsrp_decide(ue, frame: MeasurementFrame, cfg: HdmaConfig,
                  timer: TttTimer, dt_ms: float = 1.0) -> Decision:
    """Best-RSRP A3/TTT over every tier."""
    return _decide_a3(ue, frame, cfg, timer, dt_ms)


def speed_based_decide(ue, frame: MeasurementFrame, cfg: HdmaConfig,
                       timer: TttTimer, dt_ms: float = 1.0) -> Decision:
    """Macro-only above the speed threshold (strict), a3rsrp below it."""
    if ue.speed_kmh > cfg.speed_threshold_kmh:
        timer.clear()
        return RELEASE_SN if ue.sn is not None else NO_ACTION
    return a3rsrp_decide(ue, frame, cfg, timer, dt_ms)


def _nci_admit(ncgi: Ncgi) -> bool:
    return gnb_type_of(ncgi.nci) in (GnbType.MACRO, GnbType.SMALL_SUB6)


def nci_based_decide(ue, frame: MeasurementFrame, cfg: HdmaConfig,
                     timer: TttTimer, dt_ms: float = 1.0) -> Decision:
    """Identity-bit filtering at high speed, a3rsrp below the threshold.

    At or above the threshold (inclusive), mmWave and reserved type codes
    are skipped using only the cell identity bits.
    """
    if ue.speed_kmh >= cfg.speed_threshold_kmh:
        return _decide_a3(ue, frame, cfg, timer, dt_ms, admit=_nci_admit)
    return a3rsrp_decide(ue, frame, cfg, timer, dt_ms)


class Strategy:
    """A named decider plus its private TTT timer state."""

    name = "base"

    def __init__(self, cfg: HdmaConfig, tick_ms: float = 1.0):
        self.cfg = cfg
        self.tick_ms = float(tick_ms)
        self.timer = TttTimer()

    def decide(self, ue, frame: MeasurementFrame) -> Decision:
        raise NotImplementedError

    def admits_sn(self, ue, ncgi: Ncgi) -> bool:
        """Whether ncgi is an acceptable SN for the initial attachment."""
        raise NotImplementedError

    def _a3_admits(self, ue, ncgi: Ncgi) -> bool:
        return ncgi != ue.mn


class A3RsrpStrategy(Strategy):
    name = "a3rsrp"

    def decide(self, ue, frame):
        return a3rsrp_decide(ue, frame, self.cfg, self.timer, self.tick_ms)

    def admits_sn(self, ue, ncgi):
        return self._a3_admits(ue, ncgi)


class SpeedStrategy(Strategy):
    name = "speed"

    def decide(self, ue, frame):
        return speed_based_decide(ue, frame, self.cfg, self.timer, self.tick_ms)

    def admits_sn(self, ue, ncgi):
        if ue.speed_kmh > self.cfg.speed_threshold_kmh:
            return False
        return self._a3_admits(ue, ncgi)


class NciStrategy(Strategy):
    name = "nci"

    def decide(self, ue, frame):
        return nci_based_decide(ue, frame, self.cfg, self.timer, self.tick_ms)

    def admits_sn(self, ue, ncgi):
        if ue.speed_kmh >= self.cfg.speed_threshold_kmh:
            return _nci_admit(ncgi) and ncgi != ue.mn
        return self._a3_admits(ue, ncgi)


STRATEGY_NAMES = ("nci", "a3rsrp", "speed")

_STRATEGIES = {
    "nci": NciStrategy,
    "a3rsrp": A3RsrpStrategy,
    "speed": SpeedStrategy,
}


def make_strategy(name: str, cfg: HdmaConfig, tick_ms: float = 1.0) -> Strategy:
    try:
        cls = _STRATEGIES[name]
    except KeyError:
        raise ValueError(
            f"unknown strategy {name!r}; expected one of {STRATEGY_NAMES}"
        ) from None
    return cls(cfg, tick_ms)
