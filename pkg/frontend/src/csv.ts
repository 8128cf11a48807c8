/**
 * Strict reader for the numeric CSV artifacts produced by the simulation
 * CLI. Every file carries a header row; cells are decimal numbers, with
 * empty cells allowed (NaN) for optional fields such as truncated decay
 * rates or absent bound states.
 */

export interface Table {
  header: string[];
  rows: number[][];
}

export class MissingColumnError extends Error {
  constructor(column: string, header: string[]) {
    super(`missing column '${column}' (file has: ${header.join(", ")})`);
    this.name = "MissingColumnError";
  }
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length < 2) {
    throw new Error("CSV needs a header row and at least one data row");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new Error(
        `row ${i}: expected ${header.length} cells, got ${cells.length}`,
      );
    }
    const row = cells.map((c) => {
      const t = c.trim();
      if (t === "") return NaN;
      const v = Number(t);
      if (Number.isNaN(v) && t.toLowerCase() !== "nan") {
        throw new Error(`row ${i}: '${t}' is not a number`);
      }
      return v;
    });
    rows.push(row);
  }
  return { header, rows };
}

/** Extract one column by name; unknown names raise MissingColumnError. */
export function column(table: Table, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) throw new MissingColumnError(name, table.header);
  return table.rows.map((r) => r[idx]);
}

export function hasColumn(table: Table, name: string): boolean {
  return table.header.includes(name);
}
