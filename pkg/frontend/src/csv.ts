import * as fs from "node:fs";

/** Raised for missing or malformed CSV input; the message names the file. */
export class CsvError extends Error {}

export interface Table {
  header: string[];
  rows: string[][];
}

/**
 * Parse CSV text into header and data rows.
 *
 * The simulator never emits commas, quotes, or newlines inside a field, so a
 * record is exactly one "\n"-terminated line and a field split on ",".
 */
export function parseCsv(text: string, file: string): Table {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  if (lines.length === 0) {
    throw new CsvError(`${file}: empty file`);
  }
  const header = lines[0].split(",");
  const rows: string[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== header.length) {
      throw new CsvError(
        `${file}: line ${i + 1}: expected ${header.length} fields, got ${fields.length}`,
      );
    }
    rows.push(fields);
  }
  return { header, rows };
}

/** Read a CSV file and check its header matches the expected schema exactly. */
export function readTable(file: string, expectedHeader: string[]): Table {
  if (!fs.existsSync(file)) {
    throw new CsvError(`missing CSV file: ${file}`);
  }
  const table = parseCsv(fs.readFileSync(file, "utf8"), file);
  const got = table.header.join(",");
  const want = expectedHeader.join(",");
  if (got !== want) {
    throw new CsvError(`${file}: expected header "${want}", got "${got}"`);
  }
  return table;
}

/** Convert one field to a finite number; reject anything else, naming the file. */
export function toNumber(raw: string, file: string, line: number, column: string): number {
  const v = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(v)) {
    throw new CsvError(`${file}: line ${line}: bad number in ${column}: ${JSON.stringify(raw)}`);
  }
  return v;
}
