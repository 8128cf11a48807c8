/**
 * Figure specification: the same sectioned key/value dialect as the
 * simulation scenario files.
 *
 *   [figure]
 *   title = ...
 *   width = 1280
 *
 *   [panel.1]
 *   kind = spectral | population | concurrence
 *   csv = spectral.csv
 *   logy = true
 *   title = ...
 *   xlabel = ...
 *   ylabel = ...
 */

export type PanelKind = "spectral" | "population" | "concurrence";

export interface PanelSpec {
  kind: PanelKind;
  csv: string;
  title?: string;
  xlabel?: string;
  ylabel?: string;
  logy?: boolean;
}

export interface FigureSpec {
  title?: string;
  width: number;
  panelHeight: number;
  panels: PanelSpec[];
}

type Sections = Map<string, Map<string, string>>;

export function parseIni(text: string): Sections {
  const sections: Sections = new Map();
  let current: Map<string, string> | null = null;
  const lines = text.split(/\r?\n/);
  for (let i = 0; i < lines.length; i++) {
    const stripped = lines[i].replace(/[#;].*$/, "").trim();
    if (!stripped) continue;
    const sec = stripped.match(/^\[(.+)\]$/);
    if (sec) {
      current = new Map();
      sections.set(sec[1].trim(), current);
      continue;
    }
    const eq = stripped.indexOf("=");
    if (eq < 0 || current === null) {
      throw new Error(`line ${i + 1}: expected 'key = value' inside a section`);
    }
    current.set(stripped.slice(0, eq).trim(), stripped.slice(eq + 1).trim());
  }
  return sections;
}

const PANEL_KINDS: PanelKind[] = ["spectral", "population", "concurrence"];

function parseBool(raw: string, context: string): boolean {
  const v = raw.toLowerCase();
  if (v === "true" || v === "1" || v === "yes") return true;
  if (v === "false" || v === "0" || v === "no") return false;
  throw new Error(`${context}: '${raw}' is not a boolean`);
}

export function parseFigureSpec(text: string): FigureSpec {
  const sections = parseIni(text);
  const fig = sections.get("figure") ?? new Map<string, string>();
  const spec: FigureSpec = {
    title: fig.get("title"),
    width: Number(fig.get("width") ?? "1260"),
    panelHeight: Number(fig.get("panel_height") ?? "340"),
    panels: [],
  };
  if (!Number.isFinite(spec.width) || spec.width <= 0) {
    throw new Error("figure.width must be a positive number");
  }

  const indices: number[] = [];
  for (const name of sections.keys()) {
    const m = name.match(/^panel\.(\d+)$/);
    if (m) indices.push(Number(m[1]));
    else if (name !== "figure") throw new Error(`unknown section [${name}]`);
  }
  indices.sort((a, b) => a - b);
  if (indices.length === 0) throw new Error("figure spec defines no panels");

  for (const idx of indices) {
    const body = sections.get(`panel.${idx}`)!;
    const kind = body.get("kind");
    const csv = body.get("csv");
    if (!kind || !PANEL_KINDS.includes(kind as PanelKind)) {
      throw new Error(
        `[panel.${idx}]: kind must be one of ${PANEL_KINDS.join("|")}`,
      );
    }
    if (!csv) throw new Error(`[panel.${idx}]: csv path is required`);
    const panel: PanelSpec = { kind: kind as PanelKind, csv };
    if (body.has("title")) panel.title = body.get("title");
    if (body.has("xlabel")) panel.xlabel = body.get("xlabel");
    if (body.has("ylabel")) panel.ylabel = body.get("ylabel");
    if (body.has("logy")) {
      panel.logy = parseBool(body.get("logy")!, `[panel.${idx}].logy`);
    }
    spec.panels.push(panel);
  }
  return spec;
}
