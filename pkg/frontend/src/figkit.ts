#!/usr/bin/env node
/**
 * figkit: render simulation CSV artifacts into a multi-panel SVG figure.
 *
 * Usage: figkit <figure-spec file> --out <path.svg>
 *
 * The figure spec is the same sectioned key/value format as the scenario
 * files; CSV paths are resolved relative to the spec file. Rendering is a
 * pure function of the input files, so the same inputs always produce
 * byte-identical SVG.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { fileURLToPath } from "node:url";

import { parseCsv } from "./csv.js";
import { FigureSpec, parseFigureSpec } from "./inispec.js";
import { renderPanel } from "./panels.js";
import { escapeXml, text } from "./svg.js";

const MARGIN = { left: 74, right: 24, top: 46, bottom: 56 };

export function renderFigure(
  spec: FigureSpec,
  csvTexts: string[],
): string {
  if (csvTexts.length !== spec.panels.length) {
    throw new Error("one CSV text is required per panel");
  }
  const panelWidth = Math.floor(spec.width / spec.panels.length);
  const height = spec.panelHeight + (spec.title ? 24 : 0);
  const body: string[] = [];
  if (spec.title) {
    body.push(
      text(spec.width / 2, 20, spec.title, {
        "font-size": 15,
        "text-anchor": "middle",
        fill: "#111111",
      }),
    );
  }
  const topOffset = spec.title ? 24 : 0;
  spec.panels.forEach((panel, i) => {
    const table = parseCsv(csvTexts[i]);
    const box = {
      x: i * panelWidth + MARGIN.left,
      y: topOffset + MARGIN.top,
      width: panelWidth - MARGIN.left - MARGIN.right,
      height: spec.panelHeight - MARGIN.top - MARGIN.bottom,
    };
    body.push(renderPanel(panel, table, box));
  });
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${spec.width}" height="${height}" viewBox="0 0 ${spec.width} ${height}">`,
    `<rect x="0" y="0" width="${spec.width}" height="${height}" fill="#ffffff"/>`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

export function renderFigureFile(specPath: string, outPath: string): void {
  const specText = readFileSync(specPath, "utf-8");
  const spec = parseFigureSpec(specText);
  const base = dirname(resolve(specPath));
  const csvTexts = spec.panels.map((p) =>
    readFileSync(resolve(base, p.csv), "utf-8"),
  );
  writeFileSync(outPath, renderFigure(spec, csvTexts), "utf-8");
}

export function main(argv: string[]): number {
  const args = [...argv];
  let out: string | null = null;
  const positional: string[] = [];
  while (args.length > 0) {
    const a = args.shift()!;
    if (a === "--out") {
      out = args.shift() ?? null;
    } else if (a === "--help" || a === "-h") {
      process.stdout.write("usage: figkit <figure-spec file> --out <path.svg>\n");
      return 0;
    } else {
      positional.push(a);
    }
  }
  if (positional.length !== 1 || !out) {
    process.stderr.write("usage: figkit <figure-spec file> --out <path.svg>\n");
    return 2;
  }
  try {
    renderFigureFile(positional[0], out);
  } catch (err) {
    process.stderr.write(`figkit: ${err instanceof Error ? err.message : err}\n`);
    return 1;
  }
  return 0;
}

const entry = process.argv[1] ? resolve(process.argv[1]) : "";
if (entry === fileURLToPath(import.meta.url)) {
  process.exitCode = main(process.argv.slice(2));
}
