import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

export const STRATS = ["nci", "a3rsrp", "speed"] as const;

export interface FixtureOpts {
  seeds?: number[];
  /** Ticks of time-series data per file; 0 writes header-only files. */
  points?: number;
}

/** Write a compare-style CSV tree into a fresh temp dir and return its path. */
export function writeCsvTree(opts: FixtureOpts = {}): string {
  const seeds = opts.seeds ?? [1];
  const points = opts.points ?? 40;
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "plots-fixture-"));

  const summary = ["strategy,seed,handover_count,ping_pong_count,mean_sinr_db,mean_throughput_bps"];
  for (const seed of seeds) {
    for (const s of STRATS) {
      const count = s === "speed" ? 0 : s === "nci" ? 4 : 9;
      summary.push(`${s},${seed},${count + seed - seeds[0]},0,12.5,9.5e+08`);
    }
  }
  fs.writeFileSync(path.join(dir, "summary.csv"), summary.join("\n") + "\n");

  for (const seed of seeds) {
    for (const s of STRATS) {
      const ts = ["time_s,sn_ncgi,sinr_db,throughput_bps"];
      const hist = ["bin_low_db,count"];
      const cdf = ["sinr_db,cumulative_fraction"];
      for (let i = 0; i < points; i++) {
        const sn = s === "speed" ? "" : "PLMN:00f110/TYPE:01/GNB:2/CELL:7";
        ts.push(`${(i * 0.001).toPrecision(6)},${sn},${(5 + (i % 7)).toFixed(1)},${1e8 + i * 1e5}`);
      }
      for (let b = 0; b < Math.min(points, 7); b++) {
        hist.push(`${b + 5},${Math.ceil(points / 7)}`);
      }
      for (let q = 1; q <= Math.min(points, 7); q++) {
        cdf.push(`${q + 4.5},${(q / Math.min(points, 7)).toFixed(6)}`);
      }
      fs.writeFileSync(path.join(dir, `timeseries_${s}_${seed}.csv`), ts.join("\n") + "\n");
      fs.writeFileSync(path.join(dir, `sinr_hist_${s}_${seed}.csv`), hist.join("\n") + "\n");
      fs.writeFileSync(path.join(dir, `sinr_cdf_${s}_${seed}.csv`), cdf.join("\n") + "\n");
    }
  }
  return dir;
}

export function tmpOutDir(): string {
  return path.join(fs.mkdtempSync(path.join(os.tmpdir(), "plots-out-")), "figs");
}

/** Every CSV file renderAll reads for the first seed of the fixture. */
export function requiredFiles(seed: number): string[] {
  const files = ["summary.csv"];
  for (const s of STRATS) {
    files.push(`timeseries_${s}_${seed}.csv`);
    files.push(`sinr_hist_${s}_${seed}.csv`);
    files.push(`sinr_cdf_${s}_${seed}.csv`);
  }
  return files;
}
