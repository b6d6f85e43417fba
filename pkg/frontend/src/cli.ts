import { parseArgs } from "node:util";

import { CsvError } from "./csv";
import { renderAll } from "./render";

const USAGE = `usage: render --in <csv_dir> --out <img_dir>

Reads summary.csv plus per-strategy timeseries_*/sinr_hist_*/sinr_cdf_* CSV
files from <csv_dir> and writes fig_handovers.svg, fig_throughput.svg,
fig_sinr_hist.svg and fig_sinr_cdf.svg into <img_dir>.

exit codes: 0 success, 1 usage, 2 missing or malformed CSV, 3 other error
`;

/** Runs the CLI and returns the process exit code. */
export function main(argv: string[]): number {
  let values: { in?: string; out?: string };
  let positionals: string[];
  try {
    ({ values, positionals } = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        out: { type: "string" },
      },
      allowPositionals: true,
    }));
  } catch (e) {
    process.stderr.write(`error: ${(e as Error).message}\n${USAGE}`);
    return 1;
  }
  if (positionals.length !== 1 || positionals[0] !== "render" || !values.in || !values.out) {
    process.stderr.write(USAGE);
    return 1;
  }
  try {
    for (const p of renderAll(values.in, values.out)) {
      process.stdout.write(p + "\n");
    }
    return 0;
  } catch (e) {
    if (e instanceof CsvError) {
      process.stderr.write(`error: ${e.message}\n`);
      return 2;
    }
    process.stderr.write(`error: ${String(e instanceof Error ? e.stack : e)}\n`);
    return 3;
  }
}

// typeof guards keep this inert when the module is imported under an ESM test runner
if (typeof require !== "undefined" && typeof module !== "undefined" && require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
