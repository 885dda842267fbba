// Patient information with the risk donut: current values, range
// indicators (arrows for numbers, colored text for categories), and the
// predicted level/percent straight from the API.

import type { PatientDetail, Prediction } from "../api";
import { ZONE_COLORS, donutChart } from "../charts";

const ARROWS: Record<string, string> = {
  above_range: "↑",
  below_range: "↓",
  none: "",
};

export function renderPatientInfo(root: HTMLElement, detail: PatientDetail): void {
  root.innerHTML = "";

  const donutBox = document.createElement("div");
  donutBox.className = "donut-box";
  donutBox.appendChild(donutChart(detail.prediction.level, detail.prediction.percent));
  const caption = document.createElement("div");
  caption.className = "donut-caption";
  caption.textContent = `${detail.patient_id} · ${detail.timestamp}`;
  donutBox.appendChild(caption);
  root.appendChild(donutBox);

  const table = document.createElement("table");
  table.className = "patient-values";
  const indicators = new Map(detail.indicators.map((i) => [i.feature, i]));
  const statuses = new Map(detail.category_statuses.map((s) => [s.feature, s]));

  for (const [feature, value] of Object.entries(detail.values)) {
    const row = table.insertRow();
    row.insertCell().textContent = feature;
    const cell = row.insertCell();
    cell.className = "value-cell";
    const ind = indicators.get(feature);
    const status = statuses.get(feature);
    if (ind) {
      cell.textContent = `${value} ${ARROWS[ind.arrow]}`.trim();
      cell.style.color = ZONE_COLORS[ind.zone_color];
      cell.title = ind.status === "within_range"
        ? "within the recommended range" : "outside the recommended range";
    } else if (status) {
      cell.textContent = String(value);
      cell.style.color = ZONE_COLORS[status.zone_color];
      cell.title = status.status === "within_range"
        ? "lowest-risk level" : "risk can be reduced";
    } else {
      cell.textContent = String(value);
    }
  }
  root.appendChild(table);
}

export function updateDonut(root: HTMLElement, prediction: Prediction): void {
  const box = root.querySelector(".donut-box");
  if (!box) return;
  const old = box.querySelector("svg");
  if (old) old.remove();
  box.insertBefore(donutChart(prediction.level, prediction.percent), box.firstChild);
}
