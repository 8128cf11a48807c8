/**
 * The three panel kinds, one per documented CSV schema:
 *   spectral    - J00 (and channels when present) vs frequency, log y
 *   population  - |a_i(t)|^2 vs time
 *   concurrence - C(t) with the steady bound-state prediction overlaid
 */

import { Table, column, hasColumn } from "./csv.js";
import { PanelSpec } from "./inispec.js";
import { Scale, finiteExtent, linearScale, logScale } from "./scale.js";
import { Box, Series, axes, legend, seriesPath } from "./svg.js";

const COLORS = ["#0a4570", "#af1a2e", "#055805", "#b8860b"];

interface PanelData {
  x: number[];
  series: Series[];
  xlabel: string;
  ylabel: string;
  logy: boolean;
}

function spectralData(table: Table): PanelData {
  const x = column(table, "omega_ev");
  const series: Series[] = [
    { x, y: column(table, "J00_ev"), color: COLORS[0], label: "J00" },
  ];
  if (hasColumn(table, "Aplus_ev")) {
    series.push({
      x,
      y: column(table, "Aplus_ev"),
      color: COLORS[2],
      label: "A+",
      dash: "5 3",
    });
    series.push({
      x,
      y: column(table, "Aminus_ev"),
      color: COLORS[3],
      label: "A-",
      dash: "2 3",
    });
  }
  return {
    x,
    series,
    xlabel: "frequency (eV)",
    ylabel: "spectral density (eV)",
    logy: true,
  };
}

function populationData(table: Table): PanelData {
  const x = column(table, "t_hbar_per_ev");
  const series: Series[] = [
    { x, y: column(table, "pop1"), color: COLORS[0], label: "|a1|^2" },
  ];
  if (hasColumn(table, "pop2")) {
    series.push({ x, y: column(table, "pop2"), color: COLORS[1], label: "|a2|^2" });
  }
  return {
    x,
    series,
    xlabel: "time (hbar/eV)",
    ylabel: "population",
    logy: false,
  };
}

function concurrenceData(table: Table): PanelData {
  const x = column(table, "t_hbar_per_ev");
  return {
    x,
    series: [
      { x, y: column(table, "concurrence"), color: COLORS[0], label: "C(t)" },
      {
        x,
        y: column(table, "steady_prediction"),
        color: COLORS[1],
        label: "bound-state prediction",
        dash: "6 4",
      },
    ],
    xlabel: "time (hbar/eV)",
    ylabel: "concurrence",
    logy: false,
  };
}

export function renderPanel(spec: PanelSpec, table: Table, box: Box): string {
  let data: PanelData;
  switch (spec.kind) {
    case "spectral":
      data = spectralData(table);
      break;
    case "population":
      data = populationData(table);
      break;
    case "concurrence":
      data = concurrenceData(table);
      break;
  }
  const logy = spec.logy ?? data.logy;

  const xdom = finiteExtent(data.x);
  const yvals = data.series.flatMap((s) =>
    logy ? s.y.filter((v) => v > 0) : s.y,
  );
  let ydom = finiteExtent(yvals);
  if (!logy) {
    const pad = 0.05 * (ydom[1] - ydom[0]);
    ydom = [ydom[0] - pad, ydom[1] + pad];
  }
  const xscale = linearScale(xdom, [box.x, box.x + box.width]);
  const yscale: Scale = logy
    ? logScale(ydom, [box.y + box.height, box.y])
    : linearScale(ydom, [box.y + box.height, box.y]);

  const parts = [
    axes(
      box,
      xscale,
      yscale,
      spec.xlabel ?? data.xlabel,
      spec.ylabel ?? data.ylabel,
      spec.title ?? "",
    ),
  ];
  for (const s of data.series) {
    parts.push(seriesPath(s, xscale, yscale));
  }
  parts.push(legend(box, data.series));
  return parts.join("\n");
}
