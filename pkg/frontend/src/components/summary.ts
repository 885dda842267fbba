// Patient summary: the population's distribution per actionable
// variable (area charts for measures, bar charts for behaviors) with
// recommended ranges shaded and the selected patient marked.

import type { PopulationSummary } from "../api";
import { areaChart, barChart } from "../charts";

export function renderSummary(root: HTMLElement, summary: PopulationSummary): void {
  root.innerHTML = "";
  const note = document.createElement("p");
  note.className = "muted";
  note.textContent = `Distributions over ${summary.n} patients; the dark marker is the selected patient.`;
  root.appendChild(note);

  const grid = document.createElement("div");
  grid.className = "summary-grid";
  for (const feature of summary.features) {
    if (!feature.actionable) continue;
    const cell = document.createElement("figure");
    cell.className = "summary-cell";
    const caption = document.createElement("figcaption");
    const marker = summary.markers?.[feature.name];
    if (feature.kind === "continuous") {
      caption.textContent = feature.unit
        ? `${feature.name} (${feature.unit})` : feature.name;
      cell.appendChild(areaChart(
        feature.histogram.bin_edges,
        feature.histogram.counts,
        feature.recommended_range,
        typeof marker === "number" ? marker : undefined,
      ));
      if (feature.recommended_range) {
        const [lo, hi] = feature.recommended_range;
        caption.textContent += ` · recommended ${lo}-${hi}`;
      }
    } else {
      caption.textContent = feature.name;
      cell.appendChild(barChart(
        feature.counts,
        typeof marker === "string" ? marker : undefined,
      ));
    }
    cell.appendChild(caption);
    grid.appendChild(cell);
  }
  root.appendChild(grid);
}
