// Risk recovery: predicted risk over the patient's records with a trend
// verdict; hovering highlights the zones and points.

import type { History } from "../api";
import { historyChart } from "../charts";

const TREND_LABELS: Record<History["trend"], string> = {
  improving: "condition improving",
  worsening: "condition worsening",
  stable: "condition stable",
};

export function renderHistory(root: HTMLElement, history: History): void {
  root.innerHTML = "";
  const trend = document.createElement("p");
  trend.className = `trend trend-${history.trend}`;
  trend.textContent = TREND_LABELS[history.trend];
  root.appendChild(trend);
  root.appendChild(historyChart(history.points));
  const hint = document.createElement("p");
  hint.className = "muted hint";
  hint.textContent = "Hover the chart to highlight the risk zones; each point is one visit.";
  root.appendChild(hint);
}
