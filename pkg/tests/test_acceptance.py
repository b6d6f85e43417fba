"""End-to-end acceptance checks.

Each test prints one PASS/FAIL line (visible under ``pytest -s``) and then
asserts, so a failing criterion is both human-readable and fatal.  The
whole module is budgeted to finish well inside two minutes; the final test
enforces that bound along with single-run latency.
"""

import os
import time

import numpy as np
import pytest
from oracle import events_from_output, replay_events
from scenarios import gnb as make_gnb
from scenarios import scenario as make_scenario

from dcho.cli import main as cli_main
from dcho.config import TIER_DEFAULTS, load_default_scenario
from dcho.engine import run
from dcho.metrics import compute_metrics
from dcho.nci import GnbType, decode_nci, encode_nci

MODULE_START = time.perf_counter()
SEEDS = tuple(range(1, 11))
STRATS = ("nci", "a3rsrp", "speed")


def check(ok, label):
    print(f"{'PASS' if ok else 'FAIL'}: {label}")
    assert ok, label


@pytest.fixture(scope="module")
def grid():
    """Metrics and events for every (strategy, seed) on the default scenario."""
    sc = load_default_scenario()
    out = {}
    for seed in SEEDS:
        for strat in STRATS:
            result = run(sc, strat, seed)
            out[(strat, seed)] = (compute_metrics(result), result.events)
    return out


def test_codec_exactness():
    t0 = time.perf_counter()
    vectors = [
        (0x000000000, GnbType.MACRO, 0, 0),
        (0x400014003, GnbType.SMALL_SUB6, 5, 3),
        (0x800000000, GnbType.MMWAVE, 0, 0),
    ]
    ok = True
    for raw, gtype, gnb_id, cell in vectors:
        d = decode_nci(raw)
        ok &= (d.gnb_type, d.gnb_id, d.cell_id) == (gtype, gnb_id, cell)
        ok &= encode_nci(gtype, gnb_id, cell) == raw

    rng = np.random.default_rng(0)
    types = rng.integers(0, 3, 100_000)
    gnb_ids = rng.integers(0, 1 << 20, 100_000)
    cells = rng.integers(0, 1 << 14, 100_000)
    kinds = (GnbType.MACRO, GnbType.SMALL_SUB6, GnbType.MMWAVE)
    for t, g, c in zip(types, gnb_ids, cells):
        d = decode_nci(encode_nci(kinds[t], int(g), int(c)))
        if (d.gnb_type, d.gnb_id, d.cell_id) != (kinds[t], g, c):
            ok = False
            break

    for gtype in kinds:
        for g in (0, (1 << 20) - 1):
            for c in (0, (1 << 14) - 1):
                d = decode_nci(encode_nci(gtype, g, c))
                ok &= (d.gnb_type, d.gnb_id, d.cell_id) == (gtype, g, c)

    elapsed = time.perf_counter() - t0
    check(ok and elapsed < 1.0,
          f"codec: fixed vectors, 1e5 round trips, boundaries in {elapsed:.2f}s")


def test_speed_strategy_zero_handovers(grid):
    counts = [grid[("speed", s)][0].handover_count for s in SEEDS]
    check(all(c == 0 for c in counts),
          f"speed strategy: zero handovers on all seeds (counts={counts})")


def test_nci_strategy_never_targets_mmwave(grid):
    bad = [
        (s, e) for s in SEEDS for e in grid[("nci", s)][1]
        if e.target_tier is GnbType.MMWAVE
    ]
    check(not bad, f"nci strategy: no mmWave-targeted events ({len(bad)} found)")


def test_handover_count_ordering(grid):
    nci_counts = [grid[("nci", s)][0].handover_count for s in SEEDS]
    a3_counts = [grid[("a3rsrp", s)][0].handover_count for s in SEEDS]
    nci_mean = float(np.mean(nci_counts))
    a3_mean = float(np.mean(a3_counts))
    check(nci_mean < a3_mean and min(a3_counts) >= 1,
          f"handover ordering: nci mean {nci_mean:.2f} < a3rsrp mean {a3_mean:.2f}")


def test_throughput_ordering(grid):
    means = {s: [grid[(s, seed)][0].mean_throughput_bps for seed in SEEDS]
             for s in STRATS}
    lowest_everywhere = all(
        means["speed"][i] < means["nci"][i] and means["speed"][i] < means["a3rsrp"][i]
        for i in range(len(SEEDS)))
    speed_mean = float(np.mean(means["speed"]))
    nci_mean = float(np.mean(means["nci"]))
    a3_mean = float(np.mean(means["a3rsrp"]))
    margin = nci_mean >= 1.2 * speed_mean and a3_mean >= 1.2 * speed_mean
    check(lowest_everywhere and margin,
          "throughput ordering: speed lowest on every seed, others >= 1.2x "
          f"(nci {nci_mean:.3g}, a3rsrp {a3_mean:.3g}, speed {speed_mean:.3g})")


def test_sinr_ordering(grid):
    sinr = {s: [grid[(s, seed)][0].mean_sinr_db for seed in SEEDS]
            for s in STRATS}
    nci_mean = float(np.mean(sinr["nci"]))
    a3_mean = float(np.mean(sinr["a3rsrp"]))
    speed_mean = float(np.mean(sinr["speed"]))
    violations = sum(
        1 for i in range(len(SEEDS))
        if not (sinr["nci"][i] > sinr["a3rsrp"][i]
                and sinr["nci"][i] > sinr["speed"][i]))
    check(nci_mean > a3_mean and nci_mean > speed_mean and violations <= 2,
          f"sinr ordering: nci mean {nci_mean:.2f} dB highest "
          f"(a3rsrp {a3_mean:.2f}, speed {speed_mean:.2f}), "
          f"{violations}/10 per-seed violations")


def _oracle_scenarios():
    """Five deterministic scenarios spanning the decision parameter space."""
    rng = np.random.default_rng(12345)
    specs = [
        dict(n=4, speed=20.0, ttt=0.0, hom=0.0, interruption=0.0, duration=2.0),
        dict(n=5, speed=31.0, ttt=50.0, hom=1.0, interruption=30.0, duration=2.5),
        dict(n=6, speed=60.0, ttt=150.0, hom=3.0, interruption=50.0, duration=3.0),
        dict(n=7, speed=30.0, ttt=200.0, hom=6.0, interruption=50.0, duration=3.5),
        dict(n=8, speed=90.0, ttt=50.0, hom=3.0, interruption=30.0, duration=4.0),
    ]
    tiers = {
        GnbType.SMALL_SUB6: (3.5e9, 30.0, 100e6, 0.5, 2.2, 3.1, 7.0, 15.0),
        GnbType.MMWAVE: (28e9, 45.0, 400e6, 1.0, 2.0, 3.4, 4.0, 20.0),
    }
    out = []
    for spec in specs:
        gnbs = [make_gnb(GnbType.MACRO, 1,
                         (float(rng.uniform(-60, 60)),
                          float(rng.uniform(-20, 120)), 25.0),
                         2.1e9, 46.0, 20e6, 0.1, 2.9, 3.5, 6.0, 15.0)]
        for i in range(2, spec["n"] + 1):
            tier = GnbType.SMALL_SUB6 if i % 2 == 0 else GnbType.MMWAVE
            params = tiers[tier]
            pos = (float(rng.uniform(-60, 60)),
                   float(rng.uniform(-20, 120)), 10.0)
            gnbs.append(make_gnb(tier, i, pos, *params))
        out.append(make_scenario(
            gnbs, duration_s=spec["duration"], speed_kmh=spec["speed"],
            hom_db=spec["hom"], ttt_ms=spec["ttt"],
            interruption_ms=spec["interruption"],
        ))
    return out


def test_oracle_equivalence():
    mismatches = []
    total_events = 0
    for i, sc in enumerate(_oracle_scenarios()):
        raw_ncis = [g.ncgi.nci for g in sc.gnbs]
        for strat in STRATS:
            out = run(sc, strat, seed=1)
            got = events_from_output(out, sc.tick_ms)
            want = replay_events(
                out.rsrp_dbm, raw_ncis, sc.ue.speed_kmh, strat,
                speed_threshold_kmh=sc.hdma.speed_threshold_kmh,
                hom_db=sc.hdma.hom_db, ttt_ms=sc.hdma.ttt_ms,
                tick_ms=sc.tick_ms, interruption_ms=sc.sn_interruption_ms,
            )
            total_events += len(want)
            if got != want:
                mismatches.append((i, strat, got, want))
    check(not mismatches and total_events > 0,
          f"oracle equivalence: {total_events} events across 5 scenarios x 3 "
          f"strategies, {len(mismatches)} mismatches")


def test_determinism_byte_identical_csv_trees(tmp_path):
    d1, d2 = str(tmp_path / "one"), str(tmp_path / "two")
    assert cli_main(["compare", "--seeds", "1", "2", "--out", d1]) == 0
    assert cli_main(["compare", "--seeds", "1", "2", "--out", d2]) == 0
    names = sorted(os.listdir(d1))
    same_tree = names == sorted(os.listdir(d2)) and len(names) == 19
    identical = same_tree and all(
        open(os.path.join(d1, n), "rb").read() ==
        open(os.path.join(d2, n), "rb").read()
        for n in names)
    check(identical, f"determinism: {len(names)} CSV files byte-identical "
                     "across two compare invocations")


def test_performance_sanity():
    sc = load_default_scenario()
    run(sc, "nci", 1)  # warm any compiled kernels
    t0 = time.perf_counter()
    run(sc, "a3rsrp", 1)
    single = time.perf_counter() - t0
    total = time.perf_counter() - MODULE_START
    check(single < 2.0 and total < 120.0,
          f"performance: 40 s run in {single:.2f}s, acceptance module at "
          f"{total:.1f}s")
