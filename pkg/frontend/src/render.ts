import * as fs from "node:fs";
import * as path from "node:path";

import { CsvError, readTable, toNumber } from "./csv";
import {
  Cdf,
  Hist,
  STRATEGIES,
  Series,
  Strategy,
  SummaryRow,
  figHandovers,
  figSinrCdf,
  figSinrHist,
  figThroughput,
} from "./figures";

const SUMMARY_HEADER = [
  "strategy",
  "seed",
  "handover_count",
  "ping_pong_count",
  "mean_sinr_db",
  "mean_throughput_bps",
];
const TIMESERIES_HEADER = ["time_s", "sn_ncgi", "sinr_db", "throughput_bps"];
const HIST_HEADER = ["bin_low_db", "count"];
const CDF_HEADER = ["sinr_db", "cumulative_fraction"];

export const FIGURE_FILES = [
  "fig_handovers.svg",
  "fig_throughput.svg",
  "fig_sinr_hist.svg",
  "fig_sinr_cdf.svg",
] as const;

function loadSummary(csvDir: string): SummaryRow[] {
  const file = path.join(csvDir, "summary.csv");
  const table = readTable(file, SUMMARY_HEADER);
  if (table.rows.length === 0) {
    throw new CsvError(`${file}: no data rows`);
  }
  const rows: SummaryRow[] = table.rows.map((f, i) => {
    const strategy = f[0];
    if (!(STRATEGIES as readonly string[]).includes(strategy)) {
      throw new CsvError(`${file}: line ${i + 2}: unknown strategy "${strategy}"`);
    }
    return {
      strategy: strategy as Strategy,
      seed: f[1],
      handoverCount: toNumber(f[2], file, i + 2, "handover_count"),
      handoverLabel: f[2],
    };
  });
  for (const s of STRATEGIES) {
    if (!rows.some((r) => r.strategy === s)) {
      throw new CsvError(`${file}: no rows for strategy ${s}`);
    }
  }
  return rows;
}

function loadSeries(csvDir: string, strategy: Strategy, seed: string): Series {
  const file = path.join(csvDir, `timeseries_${strategy}_${seed}.csv`);
  const table = readTable(file, TIMESERIES_HEADER);
  return {
    strategy,
    points: table.rows.map((f, i) => ({
      t: toNumber(f[0], file, i + 2, "time_s"),
      bps: toNumber(f[3], file, i + 2, "throughput_bps"),
    })),
  };
}

function loadHist(csvDir: string, strategy: Strategy, seed: string): Hist {
  const file = path.join(csvDir, `sinr_hist_${strategy}_${seed}.csv`);
  const table = readTable(file, HIST_HEADER);
  return {
    strategy,
    bins: table.rows.map((f, i) => ({
      low: toNumber(f[0], file, i + 2, "bin_low_db"),
      count: toNumber(f[1], file, i + 2, "count"),
    })),
  };
}

function loadCdf(csvDir: string, strategy: Strategy, seed: string): Cdf {
  const file = path.join(csvDir, `sinr_cdf_${strategy}_${seed}.csv`);
  const table = readTable(file, CDF_HEADER);
  return {
    strategy,
    points: table.rows.map((f, i) => ({
      sinr: toNumber(f[0], file, i + 2, "sinr_db"),
      frac: toNumber(f[1], file, i + 2, "cumulative_fraction"),
    })),
  };
}

/**
 * Read a compare output directory and write the four figures into outDir.
 *
 * The bar chart shows every summary row; the per-tick figures use the first
 * seed listed in summary.csv. Returns the written file paths.
 */
export function renderAll(csvDir: string, outDir: string): string[] {
  const rows = loadSummary(csvDir);
  const seed = rows[0].seed;
  const series: Series[] = [];
  const hists: Hist[] = [];
  const cdfs: Cdf[] = [];
  for (const s of STRATEGIES) {
    series.push(loadSeries(csvDir, s, seed));
    hists.push(loadHist(csvDir, s, seed));
    cdfs.push(loadCdf(csvDir, s, seed));
  }

  fs.mkdirSync(outDir, { recursive: true });
  const figures: Array<[string, string]> = [
    [FIGURE_FILES[0], figHandovers(rows)],
    [FIGURE_FILES[1], figThroughput(series)],
    [FIGURE_FILES[2], figSinrHist(hists)],
    [FIGURE_FILES[3], figSinrCdf(cdfs)],
  ];
  return figures.map(([name, svg]) => {
    const p = path.join(outDir, name);
    fs.writeFileSync(p, svg);
    return p;
  });
}
