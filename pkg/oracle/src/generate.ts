/**
 * CLI fixture generator.
 *
 *   node dist/src/generate.js --out PATH [--subset smoke|full] [--digits N]
 *
 * Writes one JSON record per line, sorted by (Re v, Im v, n).  Output content
 * depends only on the grid and requested digits, so regeneration is
 * reproducible byte for byte.
 */

import { writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { DIGITS, fullGrid, generateRecords, renderJsonl, smokeGrid } from "./records.js";

function main(): number {
  const { values } = parseArgs({
    options: {
      out: { type: "string" },
      subset: { type: "string", default: "full" },
      digits: { type: "string", default: String(DIGITS) },
    },
  });

  if (!values.out) {
    console.error("usage: generate --out PATH [--subset smoke|full] [--digits N]");
    return 2;
  }
  if (values.subset !== "full" && values.subset !== "smoke") {
    console.error(`unknown subset '${values.subset}' (expected 'smoke' or 'full')`);
    return 2;
  }
  const digits = Number(values.digits);
  if (!Number.isInteger(digits) || digits < 5 || digits > 40) {
    console.error(`--digits must be an integer in [5, 40], got '${values.digits}'`);
    return 2;
  }

  const points = values.subset === "smoke" ? smokeGrid() : fullGrid();
  console.log(`generating ${points.length} records at ${digits} digits ...`);
  const records = generateRecords(points, digits, (line) => console.log(line));
  writeFileSync(values.out, renderJsonl(records));
  console.log(`wrote ${records.length} records to ${values.out}`);
  return 0;
}

process.exit(main());
