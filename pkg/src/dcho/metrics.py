"""Run metrics and CSV output.

Handover and ping-pong counts, SINR histogram and CDF, mean SINR and
throughput, and the four CSV schemas consumed by external plotting.  All
numbers are rendered with 6 significant digits and files are written with
newline line terminators, so reruns are byte-identical.
"""

import csv
import math
import os
from dataclasses import dataclass

import numpy as np

from .engine import HandoverKind, SimOutput
from .errors import IoError

PING_PONG_WINDOW_S = 1.0
HISTOGRAM_BIN_DB = 1.0


@dataclass
class RunMetrics:
    """Aggregates of one run, plus the raw series they came from."""

    handover_count: int
    ping_pong_count: int
    mean_sinr_db: float
    mean_throughput_bps: float
    sinr_samples: np.ndarray
    throughput_series: tuple


def count_handovers(events) -> int:
    """SnChange plus SnAttach; releases are not handovers."""
    return sum(1 for e in events
               if e.kind in (HandoverKind.SN_CHANGE, HandoverKind.SN_ATTACH))


def count_ping_pongs(events, window_s: float = PING_PONG_WINDOW_S) -> int:
    """Immediate returns: an SnChange back to the previous SnChange's source
    within the window."""
    changes = [e for e in events if e.kind is HandoverKind.SN_CHANGE]
    count = 0
    for prev, cur in zip(changes, changes[1:]):
        if cur.to_ncgi == prev.from_ncgi and cur.time_s - prev.time_s <= window_s:
            count += 1
    return count


def sn_series_change_count(sn_series) -> int:
    """SN identity changes in the serving-SN series, attachment included.

    The state before the run counts as no SN; transitions to no SN are
    releases and do not count.
    """
    count = 0
    prev = None
    for sn in sn_series:
        if sn != prev and sn is not None:
            count += 1
        prev = sn
    return count


def histogram(samples, bin_width: float = HISTOGRAM_BIN_DB):
    """Half-open bins [low, low + width) anchored at multiples of the width.

    Returns (bin_low, count) pairs for non-empty bins in ascending order.
    """
    if bin_width <= 0:
        raise ValueError(f"bin_width must be positive, got {bin_width}")
    counts: dict[int, int] = {}
    for s in samples:
        idx = math.floor(s / bin_width)
        counts[idx] = counts.get(idx, 0) + 1
    return [(idx * bin_width, counts[idx]) for idx in sorted(counts)]


def cdf(samples):
    """Empirical CDF as (value, cumulative_fraction) on sorted unique values."""
    arr = np.asarray(samples, dtype=np.float64)
    if arr.size == 0:
        return []
    values, counts = np.unique(arr, return_counts=True)
    fractions = np.cumsum(counts) / arr.size
    return [(float(v), float(f)) for v, f in zip(values, fractions)]


def compute_metrics(output: SimOutput,
                    ping_pong_window_s: float = PING_PONG_WINDOW_S) -> RunMetrics:
    n = output.sinr_db.size
    mean_sinr = float(np.mean(output.sinr_db)) if n else float("nan")
    mean_thr = float(np.mean(output.throughput_bps)) if n else float("nan")
    return RunMetrics(
        handover_count=count_handovers(output.events),
        ping_pong_count=count_ping_pongs(output.events, ping_pong_window_s),
        mean_sinr_db=mean_sinr,
        mean_throughput_bps=mean_thr,
        sinr_samples=output.sinr_db,
        throughput_series=(output.times_s, output.throughput_bps),
    )


def _fmt(x) -> str:
    return "%.6g" % float(x)


def _open_writer(path):
    try:
        fh = open(path, "w", newline="")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return fh, csv.writer(fh, lineterminator="\n")


def write_run_csvs(out_dir, output: SimOutput, metrics: RunMetrics,
                   bin_width: float = HISTOGRAM_BIN_DB) -> list:
    """Write the per-run time series, SINR histogram, and SINR CDF files."""
    os.makedirs(out_dir, exist_ok=True)
    tag = f"{output.strategy}_{output.seed}"
    paths = []

    path = os.path.join(out_dir, f"timeseries_{tag}.csv")
    fh, writer = _open_writer(path)
    with fh:
        writer.writerow(["time_s", "sn_ncgi", "sinr_db", "throughput_bps"])
        for t, sn, s, thr in zip(output.times_s, output.sn_ncgis,
                                 output.sinr_db, output.throughput_bps):
            writer.writerow([_fmt(t), "" if sn is None else str(sn),
                             _fmt(s), _fmt(thr)])
    paths.append(path)

    path = os.path.join(out_dir, f"sinr_hist_{tag}.csv")
    fh, writer = _open_writer(path)
    with fh:
        writer.writerow(["bin_low_db", "count"])
        for low, count in histogram(metrics.sinr_samples, bin_width):
            writer.writerow([_fmt(low), str(count)])
    paths.append(path)

    path = os.path.join(out_dir, f"sinr_cdf_{tag}.csv")
    fh, writer = _open_writer(path)
    with fh:
        writer.writerow(["sinr_db", "cumulative_fraction"])
        for value, fraction in cdf(metrics.sinr_samples):
            writer.writerow([_fmt(value), _fmt(fraction)])
    paths.append(path)

    return paths


def write_summary(out_dir, rows) -> str:
    """Write summary.csv; rows are (strategy, seed, RunMetrics) tuples."""
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "summary.csv")
    fh, writer = _open_writer(path)
    with fh:
        writer.writerow(["strategy", "seed", "handover_count",
                         "ping_pong_count", "mean_sinr_db",
                         "mean_throughput_bps"])
        for strategy, seed, m in rows:
            writer.writerow([strategy, str(seed), str(m.handover_count),
                             str(m.ping_pong_count), _fmt(m.mean_sinr_db),
                             _fmt(m.mean_throughput_bps)])
    return path
