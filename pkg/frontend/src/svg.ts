/** Minimal deterministic SVG assembly: plain string building, no DOM. */

import { Scale, fmt } from "./scale.js";

export interface Box {
  x: number;
  y: number;
  width: number;
  height: number;
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function tag(
  name: string,
  attrs: Record<string, string | number>,
  body?: string,
): string {
  const a = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v, 7) : escapeXml(v)}"`)
    .join(" ");
  return body === undefined
    ? `<${name} ${a}/>`
    : `<${name} ${a}>${body}</${name}>`;
}

export function text(
  x: number,
  y: number,
  content: string,
  extra: Record<string, string | number> = {},
): string {
  return tag(
    "text",
    { x, y, "font-family": "Helvetica, Arial, sans-serif", ...extra },
    escapeXml(content),
  );
}

export interface Series {
  x: number[];
  y: number[];
  color: string;
  label: string;
  dash?: string;
  width?: number;
}

/** Polyline path, splitting at gaps (NaN or log-invalid values). */
export function seriesPath(
  s: Series,
  xscale: Scale,
  yscale: Scale,
): string {
  const parts: string[] = [];
  let pen = false;
  for (let i = 0; i < s.x.length; i++) {
    const xv = s.x[i];
    const yv = s.y[i];
    const ok =
      Number.isFinite(xv) && Number.isFinite(yv) && (!yscale.log || yv > 0);
    if (!ok) {
      pen = false;
      continue;
    }
    const px = xscale.map(xv);
    const py = yscale.map(yv);
    parts.push(`${pen ? "L" : "M"}${fmt(px, 7)} ${fmt(py, 7)}`);
    pen = true;
  }
  if (parts.length === 0) return "";
  return tag("path", {
    d: parts.join(""),
    fill: "none",
    stroke: s.color,
    "stroke-width": s.width ?? 1.5,
    ...(s.dash ? { "stroke-dasharray": s.dash } : {}),
  });
}

export function axes(
  box: Box,
  xscale: Scale,
  yscale: Scale,
  xlabel: string,
  ylabel: string,
  title: string,
): string {
  const out: string[] = [];
  const x0 = box.x;
  const y0 = box.y + box.height;
  out.push(
    tag("rect", {
      x: box.x,
      y: box.y,
      width: box.width,
      height: box.height,
      fill: "none",
      stroke: "#333333",
      "stroke-width": 1,
    }),
  );
  for (const t of xscale.ticks()) {
    const px = xscale.map(t);
    out.push(
      tag("line", {
        x1: px,
        y1: y0,
        x2: px,
        y2: y0 + 4,
        stroke: "#333333",
        "stroke-width": 1,
      }),
    );
    out.push(
      tag("line", {
        x1: px,
        y1: box.y,
        x2: px,
        y2: y0,
        stroke: "#dddddd",
        "stroke-width": 0.5,
      }),
    );
    out.push(
      text(px, y0 + 16, fmt(t, 4), {
        "font-size": 11,
        "text-anchor": "middle",
        fill: "#333333",
      }),
    );
  }
  for (const t of yscale.ticks()) {
    const py = yscale.map(t);
    out.push(
      tag("line", {
        x1: x0 - 4,
        y1: py,
        x2: x0,
        y2: py,
        stroke: "#333333",
        "stroke-width": 1,
      }),
    );
    out.push(
      tag("line", {
        x1: x0,
        y1: py,
        x2: box.x + box.width,
        y2: py,
        stroke: "#dddddd",
        "stroke-width": 0.5,
      }),
    );
    out.push(
      text(x0 - 7, py + 4, fmt(t, 4), {
        "font-size": 11,
        "text-anchor": "end",
        fill: "#333333",
      }),
    );
  }
  out.push(
    text(box.x + box.width / 2, y0 + 34, xlabel, {
      "font-size": 12,
      "text-anchor": "middle",
      fill: "#111111",
    }),
  );
  out.push(
    tag(
      "g",
      { transform: `translate(${fmt(box.x - 46)} ${fmt(box.y + box.height / 2)}) rotate(-90)` },
      text(0, 0, ylabel, {
        "font-size": 12,
        "text-anchor": "middle",
        fill: "#111111",
      }),
    ),
  );
  if (title) {
    out.push(
      text(box.x + box.width / 2, box.y - 8, title, {
        "font-size": 13,
        "text-anchor": "middle",
        fill: "#111111",
      }),
    );
  }
  return out.join("\n");
}

export function legend(box: Box, series: Series[]): string {
  const out: string[] = [];
  let y = box.y + 14;
  for (const s of series) {
    const x = box.x + box.width - 150;
    out.push(
      tag("line", {
        x1: x,
        y1: y - 4,
        x2: x + 22,
        y2: y - 4,
        stroke: s.color,
        "stroke-width": s.width ?? 1.5,
        ...(s.dash ? { "stroke-dasharray": s.dash } : {}),
      }),
    );
    out.push(
      text(x + 28, y, s.label, { "font-size": 11, fill: "#111111" }),
    );
    y += 15;
  }
  return out.join("\n");
}
